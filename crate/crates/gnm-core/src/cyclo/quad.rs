//! Quadratic extensions Q(zeta_N)(c) with c^2 = s for a verified non-square s.
//!
//! Construction refuses parameters that are already squares in the base
//! field. Squareness is decided by reduction to finite fields: after
//! clearing denominators (squareness is unchanged by multiplying by a
//! rational square), a square element stays a square under every ring
//! homomorphism Z[zeta_N] -> F_p with p = 1 mod N. Finding one prime and one
//! homomorphism where the image is a quadratic non-residue is therefore an
//! exact certificate of non-squareness. If every homomorphism for many
//! primes yields residues, the parameter is rejected as a square; genuine
//! squares always exhaust every prime, so the accept direction never
//! misfires.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CycError, CycNum};
use crate::rat::rational_sqrt;

/// Number of primes that must unanimously report "residue" before the
/// parameter is rejected as a square.
const CERTIFICATION_PRIMES: usize = 40;

/// Element re + im * c of Q(zeta_N)(c), c^2 = s.
///
/// Values created by [`QuadExt::zero`], [`QuadExt::one`] and
/// [`QuadExt::from_int`] carry no extension parameter yet (`s` is None and
/// `im` is zero); they adopt the parameter of the first operand they meet.
/// Mixing two different concrete parameters is a programming error and
/// panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    s: Option<CycNum>,
    re: CycNum,
    im: CycNum,
}

impl QuadExt {
    /// Build re + im * c over the base field of `s`, verifying that `s` is
    /// not a square there.
    pub fn new(s: CycNum, re: CycNum, im: CycNum) -> Result<QuadExt, CycError> {
        verify_not_square(&s)?;
        Ok(QuadExt {
            s: Some(s),
            re,
            im,
        })
    }

    pub fn zero() -> QuadExt {
        QuadExt {
            s: None,
            re: CycNum::zero(),
            im: CycNum::zero(),
        }
    }

    pub fn one() -> QuadExt {
        QuadExt {
            s: None,
            re: CycNum::one(),
            im: CycNum::zero(),
        }
    }

    pub fn from_int(v: i64) -> QuadExt {
        QuadExt {
            s: None,
            re: CycNum::from_int(v),
            im: CycNum::zero(),
        }
    }

    /// The generator c itself.
    pub fn gen(s: CycNum) -> Result<QuadExt, CycError> {
        QuadExt::new(s, CycNum::zero(), CycNum::one())
    }

    pub fn re(&self) -> &CycNum {
        &self.re
    }

    pub fn im(&self) -> &CycNum {
        &self.im
    }

    pub fn param(&self) -> Option<&CycNum> {
        self.s.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    fn adopt(a: &QuadExt, b: &QuadExt) -> Option<CycNum> {
        match (&a.s, &b.s) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic extension parameters");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    pub fn add(&self, rhs: &QuadExt) -> QuadExt {
        QuadExt {
            s: QuadExt::adopt(self, rhs),
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &QuadExt) -> QuadExt {
        QuadExt {
            s: QuadExt::adopt(self, rhs),
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            s: self.s.clone(),
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, rhs: &QuadExt) -> QuadExt {
        let s = QuadExt::adopt(self, rhs);
        let cross = self.im.mul(&rhs.im);
        // Parameterless values have zero im, so the s-term never needs an
        // absent parameter.
        let s_term = if cross.is_zero() {
            CycNum::zero()
        } else {
            s.as_ref().expect("nonzero im requires a parameter").mul(&cross)
        };
        QuadExt {
            s,
            re: self.re.mul(&rhs.re).add(&s_term),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    /// The extension automorphism c -> -c.
    pub fn bar_c(&self) -> QuadExt {
        QuadExt {
            s: self.s.clone(),
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Norm down to the base field: re^2 - s * im^2.
    pub fn norm(&self) -> CycNum {
        let re2 = self.re.mul(&self.re);
        if self.im.is_zero() {
            return re2;
        }
        let im2 = self.im.mul(&self.im);
        let s = self.s.as_ref().expect("nonzero im requires a parameter");
        re2.sub(&s.mul(&im2))
    }

    pub fn inv(&self) -> Result<QuadExt, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        // s being a non-square makes the norm of a nonzero element nonzero.
        let n = self.norm().inv()?;
        Ok(QuadExt {
            s: self.s.clone(),
            re: self.re.mul(&n),
            im: self.im.neg().mul(&n),
        })
    }

    pub fn div(&self, rhs: &QuadExt) -> Result<QuadExt, CycError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Coefficientwise complex conjugation; c is kept fixed, which matches
    /// the numeric embedding whenever s is real.
    pub fn conj(&self) -> QuadExt {
        QuadExt {
            s: self.s.as_ref().map(|s| s.conj()),
            re: self.re.conj(),
            im: self.im.conj(),
        }
    }

    /// Numeric embedding with c mapped to the principal square root of s.
    pub fn embed(&self) -> super::Complex64 {
        let c = match &self.s {
            Some(s) => s.embed().sqrt(),
            None => super::Complex64::new(0.0, 0.0),
        };
        self.re.embed() + self.im.embed() * c
    }
}

impl std::fmt::Display for QuadExt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})*c", self.im);
        }
        write!(f, "{} + ({})*c", self.re, self.im)
    }
}

/// Certify that s is not a square in Q(zeta_N), N = s.order().
fn verify_not_square(s: &CycNum) -> Result<(), CycError> {
    if s.is_zero() {
        return Err(CycError::SIsSquare);
    }
    if let Some(r) = s.to_rational() {
        if rational_sqrt(&r).is_some() {
            return Err(CycError::SIsSquare);
        }
    }
    // Clear denominators: s and s * den^2 are squares together.
    let n = s.order();
    let coords = s.coords_rationals();
    let mut den = BigInt::from(1);
    for c in &coords {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| c.numer() * (&den / c.denom()) * &den)
        .collect();

    let mut certified = 0usize;
    let mut p = n as u64 + 1;
    while certified < CERTIFICATION_PRIMES {
        p = next_prime_one_mod_n(p, n as u64);
        let coeffs_mod: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        let omega = primitive_nth_root(p, n as u64);
        let exponents: Vec<u64> = if n == 1 {
            vec![0]
        } else {
            (1..n as u64).filter(|j| j.gcd(&(n as u64)) == 1).collect()
        };
        let mut informative = false;
        for j in exponents {
            let root = modpow(omega, j, p);
            let val = horner_mod(&coeffs_mod, root, p);
            if val == 0 {
                continue;
            }
            informative = true;
            if modpow(val, (p - 1) / 2, p) != 1 {
                // Non-residue image: exact certificate of non-squareness.
                return Ok(());
            }
        }
        if informative {
            certified += 1;
        }
        p += 1;
    }
    Err(CycError::SIsSquare)
}

fn horner_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * x as u128 + c as u128) % p as u128;
    }
    acc as u64
}

fn modpow(base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime >= from with p = 1 (mod n).
fn next_prime_one_mod_n(from: u64, n: u64) -> u64 {
    let n = n.max(1);
    let mut p = from.max(2);
    loop {
        if p % n == 1 % n && is_prime(p) {
            return p;
        }
        p += 1;
    }
}

fn factorize(mut x: u64) -> Vec<u64> {
    let mut fs = vec![];
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            fs.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        fs.push(x);
    }
    fs
}

/// A primitive n-th root of unity mod p (requires p = 1 mod n).
fn primitive_nth_root(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!((p - 1) % n, 0);
    let factors = factorize(p - 1);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&q| modpow(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root");
    modpow(g, (p - 1) / n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(n: u32, k: i64) -> CycNum {
        CycNum::root(n, k).unwrap()
    }

    #[test]
    fn rational_squares_rejected() {
        assert_eq!(
            QuadExt::gen(CycNum::from_int(4)).unwrap_err(),
            CycError::SIsSquare
        );
        assert_eq!(
            QuadExt::gen(CycNum::zero()).unwrap_err(),
            CycError::SIsSquare
        );
        let nine_fourths = crate::rat::parse_rational("9/4").unwrap();
        assert_eq!(
            QuadExt::gen(CycNum::from_rational(&nine_fourths)).unwrap_err(),
            CycError::SIsSquare
        );
    }

    #[test]
    fn squareness_depends_on_the_base_field() {
        // -1 is not a square in Q but equals i^2 in Q(zeta_4).
        assert!(QuadExt::gen(CycNum::from_int(-1)).is_ok());
        let minus_one_at_4 = CycNum::from_int(-1).to_order(4).unwrap();
        assert_eq!(QuadExt::gen(minus_one_at_4).unwrap_err(), CycError::SIsSquare);
        // 2 = (zeta_8 + zeta_8^-1)^2 in Q(zeta_8).
        assert!(QuadExt::gen(CycNum::from_int(2)).is_ok());
        let two_at_8 = CycNum::from_int(2).to_order(8).unwrap();
        assert_eq!(QuadExt::gen(two_at_8).unwrap_err(), CycError::SIsSquare);
        // 5 is a square in Q(zeta_5) via the Gauss sum, but not 2.
        let five_at_5 = CycNum::from_int(5).to_order(5).unwrap();
        assert_eq!(QuadExt::gen(five_at_5).unwrap_err(), CycError::SIsSquare);
        let two_at_5 = CycNum::from_int(2).to_order(5).unwrap();
        assert!(QuadExt::gen(two_at_5).is_ok());
    }

    #[test]
    fn nonrational_parameter() {
        // zeta_3 is a square in Q(zeta_3): zeta_3 = (zeta_3^2)^2.
        assert_eq!(QuadExt::gen(root(3, 1)).unwrap_err(), CycError::SIsSquare);
        // 1 + zeta_5 is not a square in Q(zeta_5): its image under some
        // reduction is a non-residue.
        let v = CycNum::one().add(&root(5, 1)).to_order(5).unwrap();
        assert!(QuadExt::gen(v).is_ok());
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let s = CycNum::from_int(2);
        let c = QuadExt::gen(s.clone()).unwrap();
        let one_plus_c = QuadExt::one().add(&c);
        let sq = one_plus_c.mul(&one_plus_c);
        // (1 + c)^2 = 3 + 2c.
        assert_eq!(sq.re(), &CycNum::from_int(3));
        assert_eq!(sq.im(), &CycNum::from_int(2));
        // Norm and inverse.
        assert_eq!(one_plus_c.norm(), CycNum::from_int(-1));
        let inv = one_plus_c.inv().unwrap();
        assert!(one_plus_c.mul(&inv).is_one());
        // c * c = 2.
        assert!(c.mul(&c).sub(&QuadExt::from_int(2)).is_zero());
    }

    #[test]
    fn inverse_errors_on_zero() {
        assert_eq!(QuadExt::zero().inv().unwrap_err(), CycError::DivisionByZero);
    }

    #[test]
    fn embedding_matches_f64_sqrt() {
        let c = QuadExt::gen(CycNum::from_int(2)).unwrap();
        let v = QuadExt::from_int(1).add(&c);
        let e = v.embed();
        assert!((e.re - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!(e.im.abs() < 1e-12);
        // Negative parameter embeds on the imaginary axis.
        let d = QuadExt::gen(CycNum::from_int(-3)).unwrap();
        let ed = d.embed();
        assert!(ed.re.abs() < 1e-12 && (ed.im - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn placeholder_values_adopt_parameters() {
        let c = QuadExt::gen(CycNum::from_int(7)).unwrap();
        let v = QuadExt::from_int(3).mul(&c).add(&QuadExt::one());
        assert_eq!(v.param(), Some(&CycNum::from_int(7)));
        assert_eq!(v.re(), &CycNum::from_int(1));
        assert_eq!(v.im(), &CycNum::from_int(3));
    }

    #[test]
    fn prime_search_helpers() {
        assert!(is_prime(11));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        let p = next_prime_one_mod_n(7, 5);
        assert_eq!(p, 11);
        let w = primitive_nth_root(11, 5);
        assert_eq!(modpow(w, 5, 11), 1);
        assert_ne!(w, 1);
    }
}
