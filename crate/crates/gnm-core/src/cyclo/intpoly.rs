//! Integer polynomials, cyclotomic polynomials and per-order field tables.
//!
//! The n-th cyclotomic polynomial is computed by the exact division
//! Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d and cached per order together
//! with the reduction recurrence x^{phi(n)} = -(lower terms), which is what the
//! field arithmetic in [`crate::cyclo`] uses to stay canonical.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use super::CycError;

/// Dense integer polynomial, little-endian coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// x^n - 1.
    pub fn xn_minus_one(n: u32) -> Self {
        let mut c = vec![0i128; n as usize + 1];
        c[0] = -1;
        c[n as usize] = 1;
        IntPoly { coeffs: c }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly, CycError> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(IntPoly::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let p = a.checked_mul(b).ok_or(CycError::Overflow)?;
                out[i + j] = out[i + j].checked_add(p).ok_or(CycError::Overflow)?;
            }
        }
        Ok(IntPoly::from_coeffs(out))
    }

    /// Exact division by a monic divisor; the remainder must vanish.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, CycError> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().expect("nonzero divisor");
        let nd = match self.degree() {
            None => return Ok(IntPoly::zero()),
            Some(d) => d,
        };
        assert!(nd >= dd, "degree underflow in exact division");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd];
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                let p = c.checked_mul(dj).ok_or(CycError::Overflow)?;
                rem[k + j] = rem[k + j].checked_sub(p).ok_or(CycError::Overflow)?;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "division was not exact");
        Ok(IntPoly::from_coeffs(quot))
    }
}

/// Euler totient by trial-division factorization.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Divisors of n in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The n-th cyclotomic polynomial, exact integer coefficients.
pub fn cyclotomic_polynomial(n: u32) -> Result<IntPoly, CycError> {
    if n == 0 {
        return Err(CycError::BadParameters("order must be >= 1".into()));
    }
    if let Some(t) = lookup_table(n) {
        return Ok(t.cyclotomic.clone());
    }
    let mut denom = IntPoly::from_coeffs(vec![1]);
    for d in divisors(n) {
        if d < n {
            denom = denom.mul(&cyclotomic_polynomial(d)?)?;
        }
    }
    let phi_n = IntPoly::xn_minus_one(n).div_exact(&denom)?;
    Ok(phi_n)
}

/// Cached per-order data: Phi_N and its reduction recurrence.
#[derive(Debug)]
pub struct FieldTable {
    pub order: u32,
    pub phi: usize,
    pub cyclotomic: IntPoly,
    /// x^phi = sum of coeff * x^j over these (j, coeff) pairs.
    pub reduction: Vec<(usize, i128)>,
}

static TABLES: LazyLock<RwLock<HashMap<u32, Arc<FieldTable>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn lookup_table(order: u32) -> Option<Arc<FieldTable>> {
    TABLES.read().unwrap().get(&order).cloned()
}

/// Field table for Q(zeta_order), built on first use and cached.
pub fn field_table(order: u32) -> Result<Arc<FieldTable>, CycError> {
    if let Some(t) = lookup_table(order) {
        return Ok(t);
    }
    let cyclotomic = cyclotomic_polynomial(order)?;
    let phi = cyclotomic.degree().expect("cyclotomic polynomial is nonzero");
    debug_assert_eq!(phi as u32, euler_phi(order));
    let reduction: Vec<(usize, i128)> = cyclotomic.coeffs[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, -c))
        .collect();
    let table = Arc::new(FieldTable {
        order,
        phi,
        cyclotomic,
        reduction,
    });
    TABLES.write().unwrap().insert(order, table.clone());
    Ok(table)
}
