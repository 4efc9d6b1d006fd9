//! Quantum-integer style brackets and the Bezout normalization.
//!
//! Every closed-form power formula in this crate is driven by brackets of the
//! shape (z^k - w^k)/(z^d - w^d) for roots of unity z, w. They vanish at
//! predictable indices, which is exactly what makes the power formulas
//! collapse to scalars at the central element.

use crate::cyclo::CycNum;

use super::RepError;

/// z^k for an invertible value; only zero lacks negative powers, and the
/// bases used here are always roots of unity.
pub fn upow(z: &CycNum, k: i64) -> CycNum {
    z.pow(k).expect("power of a unit cannot fail")
}

/// (z^k - z^{-k}) / (z - z^{-1}) for a root of unity z with z^2 != 1.
pub fn bracket_unit(z: &CycNum, k: i64) -> Result<CycNum, RepError> {
    let denom = z.sub(&z.inv().map_err(|e| RepError::BadParameters(e.to_string()))?);
    if denom.is_zero() {
        return Err(RepError::ZeroDenominator(
            "bracket base satisfies z^2 = 1".to_string(),
        ));
    }
    let num = upow(z, k).sub(&upow(z, -k));
    let inv = denom.inv().map_err(|e| RepError::BadParameters(e.to_string()))?;
    Ok(num.mul(&inv))
}

/// (z2^k - z1^k) / (z2^d - z1^d); the caller supplies the denominator inverse
/// so repeated evaluations share it.
pub fn bracket_pair(z1: &CycNum, z2: &CycNum, denom_inv: &CycNum, k: i64) -> CycNum {
    upow(z2, k).sub(&upow(z1, k)).mul(denom_inv)
}

/// The canonical Bezout pair: a is the representative of n^{-1} mod m in
/// (-m/2, m/2], and b = (an - 1)/m, so that an - bm = 1.
pub fn bezout(n: u32, m: u32) -> Result<(i64, i64), RepError> {
    let (n, m) = (n as i64, m as i64);
    let (g, inv) = ext_gcd(n.rem_euclid(m), m);
    if g != 1 {
        return Err(RepError::NotCoprime(n as u32, m as u32));
    }
    let mut a = inv.rem_euclid(m);
    if 2 * a > m {
        a -= m;
    }
    let b = (a * n - 1) / m;
    debug_assert_eq!(a * n - b * m, 1);
    Ok((a, b))
}

/// Returns (gcd(x, y), u) with u*x = gcd mod y, for x >= 0, y > 0.
fn ext_gcd(x: i64, y: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (x, y);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_normalization() {
        assert_eq!(bezout(3, 4).unwrap(), (-1, -1));
        assert_eq!(bezout(3, 5).unwrap(), (2, 1));
        assert_eq!(bezout(5, 4).unwrap(), (1, 1));
        assert_eq!(bezout(7, 5).unwrap(), (-2, -3));
        assert_eq!(bezout(5, 8).unwrap(), (-3, -2));
        assert_eq!(bezout(7, 4).unwrap(), (-1, -2));
        assert_eq!(bezout(4, 5).unwrap(), (-1, -1));
        // (n, 2) with n = 2n' + 1 gives (1, n').
        for np in 1..6u32 {
            let n = 2 * np + 1;
            assert_eq!(bezout(n, 2).unwrap(), (1, np as i64));
        }
        assert!(matches!(bezout(4, 6), Err(RepError::NotCoprime(4, 6))));
    }

    #[test]
    fn bezout_in_half_open_interval() {
        for m in 2..12u32 {
            for n in 2..12u32 {
                let Ok((a, b)) = bezout(n, m) else { continue };
                assert!(2 * a > -(m as i64) && 2 * a <= m as i64);
                assert_eq!(a * n as i64 - b * m as i64, 1);
            }
        }
    }

    #[test]
    fn unit_bracket_values() {
        // [z_n]_1 = 1, [z_n]_0 = 0, [z_n]_{-k} = -[z_n]_k.
        let z = CycNum::root(5, 1).unwrap();
        assert!(bracket_unit(&z, 0).unwrap().is_zero());
        assert!(bracket_unit(&z, 1).unwrap().is_one());
        for k in 1..8 {
            let pos = bracket_unit(&z, k).unwrap();
            let neg = bracket_unit(&z, -k).unwrap();
            assert!(pos.add(&neg).is_zero());
        }
        // [z_{2l}]_k = 0 iff l | k, here l = 3.
        let z6 = CycNum::root(6, 1).unwrap();
        for k in 0..13 {
            assert_eq!(bracket_unit(&z6, k).unwrap().is_zero(), k % 3 == 0, "k={}", k);
        }
        // z = -1 has no bracket.
        let minus_one = CycNum::from_int(-1);
        assert!(matches!(
            bracket_unit(&minus_one, 2),
            Err(RepError::ZeroDenominator(_))
        ));
    }
}
