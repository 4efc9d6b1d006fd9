//! Exact arithmetic in cyclotomic fields Q(zeta_N) and quadratic extensions.
//!
//! A [`CycNum`] is stored canonically: an order N, a coordinate vector of
//! length phi(N) in the power basis modulo Phi_N, and a positive shared
//! denominator coprime to the coordinate gcd. Equality and hashing are
//! structural, so two values compare equal only at the same order; binary
//! operations lift both sides to the lcm of their orders first. Code that
//! wants cross-order numeric identity should normalize orders explicitly
//! with [`CycNum::to_order`].

pub mod coords;
pub mod intpoly;
mod quad;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rat::{rational_strings, rational_to_f64};
use coords::Coords;
use intpoly::{field_table, FieldTable};
pub use quad::QuadExt;

/// Complex double-precision value, used only for numeric cross-checks.
pub type Complex64 = num_complex::Complex<f64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not lie in the requested subfield")]
    NotInSubfield,
    #[error("quadratic parameter is a perfect square in the base field")]
    SIsSquare,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("coefficients exceed the supported integer range")]
    Overflow,
}

/// Element of Q(zeta_order), canonical coordinates over a shared denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coords: Coords,
    den: BigInt,
}

impl CycNum {
    fn make(order: u32, coords: Coords, den: BigInt) -> CycNum {
        debug_assert!(!den.is_zero());
        let (coords, den) = if den.is_one() {
            (coords, den)
        } else {
            let den = if den.is_negative() {
                // Keep the denominator positive; push the sign into coords.
                return CycNum::make(order, coords.neg(), -den);
            } else {
                den
            };
            let g = coords.content().gcd(&den);
            if g.is_one() || g.is_zero() {
                (coords, den)
            } else {
                (coords.div_exact(&g), den / g)
            }
        };
        CycNum { order, coords, den }
    }

    fn table(&self) -> std::sync::Arc<FieldTable> {
        field_table(self.order).expect("order was validated at construction")
    }

    pub fn zero() -> CycNum {
        CycNum::make(1, Coords::from_small(vec![0]), BigInt::one())
    }

    pub fn one() -> CycNum {
        CycNum::make(1, Coords::from_small(vec![1]), BigInt::one())
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum::make(1, Coords::from_small(vec![v as i128]), BigInt::one())
    }

    pub fn from_rational(r: &BigRational) -> CycNum {
        CycNum::make(
            1,
            Coords::demote(vec![r.numer().clone()]),
            r.denom().clone(),
        )
    }

    /// zeta_order^k, any integer k.
    pub fn root(order: u32, k: i64) -> Result<CycNum, CycError> {
        if order == 0 {
            return Err(CycError::BadParameters("order must be >= 1".into()));
        }
        let table = field_table(order)?;
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigInt::zero(); e + 1];
        raw[e] = BigInt::one();
        let coords = Coords::reduce_raw_big(raw, &table);
        Ok(CycNum::make(order, coords, BigInt::one()))
    }

    /// The imaginary unit, as zeta_4.
    pub fn i_unit() -> CycNum {
        CycNum::root(4, 1).expect("order 4 is valid")
    }

    /// Build from per-coordinate rationals in the power basis of Q(zeta_order).
    pub fn from_rational_coords(order: u32, vals: &[BigRational]) -> Result<CycNum, CycError> {
        if order == 0 {
            return Err(CycError::BadParameters("order must be >= 1".into()));
        }
        let table = field_table(order)?;
        if vals.len() != table.phi {
            return Err(CycError::BadParameters(format!(
                "expected {} coordinates for order {}, got {}",
                table.phi,
                order,
                vals.len()
            )));
        }
        let mut den = BigInt::one();
        for v in vals {
            den = den.lcm(v.denom());
        }
        let ints: Vec<BigInt> = vals
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        Ok(CycNum::make(order, Coords::demote(ints), den))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.coords.is_constant() && self.coords.get_big(0).is_one()
    }

    /// The coordinates as reduced rationals.
    pub fn coords_rationals(&self) -> Vec<BigRational> {
        (0..self.coords.len())
            .map(|i| BigRational::new(self.coords.get_big(i), self.den.clone()))
            .collect()
    }

    /// Some(r) when the value lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coords.is_constant() {
            Some(BigRational::new(self.coords.get_big(0), self.den.clone()))
        } else {
            None
        }
    }

    pub fn neg(&self) -> CycNum {
        CycNum::make(self.order, self.coords.neg(), self.den.clone())
    }

    /// Express the value in Q(zeta_target), failing with NotInSubfield when
    /// it does not lie there.
    pub fn to_order(&self, target: u32) -> Result<CycNum, CycError> {
        if target == 0 {
            return Err(CycError::BadParameters("order must be >= 1".into()));
        }
        if target == self.order {
            return Ok(self.clone());
        }
        if target % self.order == 0 {
            return self.lift(target);
        }
        if self.order % target == 0 {
            return self.restrict(target);
        }
        let l = lcm_u32(self.order, target)?;
        self.lift(l)?.restrict(target)
    }

    fn lift(&self, target: u32) -> Result<CycNum, CycError> {
        debug_assert_eq!(target % self.order, 0);
        let table = field_table(target)?;
        let stride = (target / self.order) as usize;
        let src = self.coords.to_big();
        let mut raw = vec![BigInt::zero(); (src.len() - 1) * stride + 1];
        for (j, c) in src.into_iter().enumerate() {
            raw[j * stride] = c;
        }
        let coords = Coords::reduce_raw_big(raw, &table);
        Ok(CycNum::make(target, coords, self.den.clone()))
    }

    fn restrict(&self, target: u32) -> Result<CycNum, CycError> {
        debug_assert_eq!(self.order % target, 0);
        let sub = field_table(target)?;
        let big = self.table();
        // Columns: each basis power of the subfield lifted to this order.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(sub.phi);
        let stride = (self.order / target) as usize;
        for t in 0..sub.phi {
            let mut raw = vec![BigInt::zero(); t * stride + 1];
            raw[t * stride] = BigInt::one();
            cols.push(Coords::reduce_raw_big(raw, &big).to_big());
        }
        let target_vec: Vec<BigRational> = self.coords_rationals();
        let sol = solve_exact(&cols, big.phi, &target_vec).ok_or(CycError::NotInSubfield)?;
        CycNum::from_rational_coords(target, &sol)
    }

    /// Lift both operands to the lcm of their orders.
    fn unify(a: &CycNum, b: &CycNum) -> Result<(CycNum, CycNum), CycError> {
        if a.order == b.order {
            return Ok((a.clone(), b.clone()));
        }
        let l = lcm_u32(a.order, b.order)?;
        Ok((a.to_order(l)?, b.to_order(l)?))
    }

    pub fn add(&self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, rhs).expect("orders are valid");
        let coords = Coords::linear_comb(&a.coords, &b.den, &b.coords, &a.den);
        CycNum::make(a.order, coords, &a.den * &b.den)
    }

    pub fn sub(&self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, rhs).expect("orders are valid");
        let coords = Coords::linear_comb(&a.coords, &b.den, &b.coords.neg(), &a.den);
        CycNum::make(a.order, coords, &a.den * &b.den)
    }

    pub fn mul(&self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, rhs).expect("orders are valid");
        let table = a.table();
        let coords = Coords::mul_reduce(&a.coords, &b.coords, &table);
        CycNum::make(a.order, coords, &a.den * &b.den)
    }

    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let table = self.table();
        // Extended Euclid in Q[x] against Phi_N: Phi_N is irreducible, so the
        // gcd with any nonzero reduced value is a nonzero constant.
        let phi_poly: Vec<BigRational> = table
            .cyclotomic
            .coeffs
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect();
        let f: Vec<BigRational> = self.coords_rationals();
        let (g, u) = ext_gcd_poly(&f, &phi_poly);
        debug_assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to f");
        let c = g[0].clone();
        let mut inv_coeffs: Vec<BigRational> = u.into_iter().map(|x| x / &c).collect();
        inv_coeffs.resize(table.phi, BigRational::zero());
        CycNum::from_rational_coords(self.order, &inv_coeffs)
    }

    pub fn div(&self, rhs: &CycNum) -> Result<CycNum, CycError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = CycNum::one().to_order(self.order)?;
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Galois conjugation zeta -> zeta^{-1} (complex conjugation).
    pub fn conj(&self) -> CycNum {
        let table = self.table();
        let n = self.order as usize;
        let src = self.coords.to_big();
        let mut raw = vec![BigInt::zero(); n.max(1)];
        for (j, c) in src.into_iter().enumerate() {
            let e = (n - j) % n;
            raw[e] += c;
        }
        let coords = Coords::reduce_raw_big(raw, &table);
        CycNum::make(self.order, coords, self.den.clone())
    }

    /// Numeric embedding zeta_N -> exp(2 pi i / N), for cross-checks only.
    pub fn embed(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, r) in self.coords_rationals().iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / n;
            acc += Complex64::new(angle.cos(), angle.sin()) * rational_to_f64(r);
        }
        acc
    }
}

fn lcm_u32(a: u32, b: u32) -> Result<u32, CycError> {
    let l = (a as u64).lcm(&(b as u64));
    u32::try_from(l).map_err(|_| CycError::BadParameters("order out of range".into()))
}

/// Extended Euclid for rational polynomials: returns (gcd, u) with
/// gcd = u*a + v*b for some v. Polynomials are little-endian coefficient
/// vectors with no trailing zeros; the zero polynomial is the empty vector.
fn ext_gcd_poly(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let trim = |mut v: Vec<BigRational>| {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = vec![];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = trim(rem);
        s0 = s1;
        s1 = trim(s_next);
    }
    (r0, s0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let sub = &c * bj;
            rem[k + j] -= sub;
        }
    }
    rem.truncate(b.len() - 1);
    (quot, rem)
}

/// Solve the exact linear system with the given integer columns (each of
/// length `rows`) for the rational target. Returns None when inconsistent.
fn solve_exact(
    cols: &[Vec<BigInt>],
    rows: usize,
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let ncols = cols.len();
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from(c[r].clone()))
                .collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let piv = (rank..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(rank, piv);
        let lead = aug[rank][col].clone();
        for x in aug[rank].iter_mut() {
            *x /= &lead;
        }
        for r in 0..rows {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=ncols {
                    let sub = &factor * &aug[rank][c];
                    aug[r][c] -= sub;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // Any leftover row with a nonzero augmented entry means no solution.
    for r in rank..rows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    Some(
        (0..ncols)
            .map(|c| aug[pivot_of_col[c]][ncols].clone())
            .collect(),
    )
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = vec![];
        for (j, r) in self.coords_rationals().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mag = r.abs();
            let sign = if r.is_negative() { "-" } else { "+" };
            let base = if j == 0 {
                format!("{}", mag)
            } else if mag.is_one() {
                format!("z{}^{}", self.order, j)
            } else {
                format!("{}*z{}^{}", mag, self.order, j)
            };
            if parts.is_empty() {
                parts.push(if r.is_negative() {
                    format!("-{}", base)
                } else {
                    base
                });
            } else {
                parts.push(format!(" {} {}", sign, base));
            }
        }
        write!(f, "{}", parts.concat())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumSer {
    #[serde(rename = "N")]
    n: u32,
    coords: Vec<(String, String)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coords = self
            .coords_rationals()
            .iter()
            .map(rational_strings)
            .collect();
        CycNumSer {
            n: self.order,
            coords,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ser = CycNumSer::deserialize(deserializer)?;
        let vals: Result<Vec<BigRational>, String> = ser
            .coords
            .iter()
            .map(|(n, d)| crate::rat::parse_rational(&format!("{}/{}", n, d)))
            .collect();
        let vals = vals.map_err(DeError::custom)?;
        CycNum::from_rational_coords(ser.n, &vals).map_err(DeError::custom)
    }
}
