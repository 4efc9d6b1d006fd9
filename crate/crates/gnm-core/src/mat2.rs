//! 2x2 matrices over Laurent polynomials.
//!
//! This is the carrier type for the group representations: matrix entries are
//! elements of F[t^{+-1}, q^{+-1}] for an exact coefficient field F. Inverses
//! exist exactly when the determinant is a single-term unit, which holds for
//! every encoded group element.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::ExactField;
use crate::laurent::{LPoly, Subst};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Mat2Error {
    #[error("matrix is not invertible over Laurent polynomials (determinant is not a unit)")]
    NotInvertible,
    #[error("degree pattern of the zero matrix is undefined")]
    ZeroMatrix,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Serialize",
    deserialize = "F: serde::de::DeserializeOwned"
))]
pub struct Mat2<F: ExactField> {
    pub a11: LPoly<F>,
    pub a12: LPoly<F>,
    pub a21: LPoly<F>,
    pub a22: LPoly<F>,
}

/// Which entries attain the maximum q-degree d across the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreePattern {
    pub d: i64,
    pub at_11: bool,
    pub at_12: bool,
    pub at_21: bool,
    pub at_22: bool,
}

impl<F: ExactField> Mat2<F> {
    pub fn new(a11: LPoly<F>, a12: LPoly<F>, a21: LPoly<F>, a22: LPoly<F>) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Mat2::new(LPoly::one(), LPoly::zero(), LPoly::zero(), LPoly::one())
    }

    pub fn zero() -> Self {
        Mat2::new(
            LPoly::zero(),
            LPoly::zero(),
            LPoly::zero(),
            LPoly::zero(),
        )
    }

    pub fn scalar(p: LPoly<F>) -> Self {
        Mat2::new(p.clone(), LPoly::zero(), LPoly::zero(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.a11.is_zero() && self.a12.is_zero() && self.a21.is_zero() && self.a22.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.a11.is_one() && self.a12.is_zero() && self.a21.is_zero() && self.a22.is_one()
    }

    /// Some(p) when the matrix is p times the identity.
    pub fn as_scalar(&self) -> Option<&LPoly<F>> {
        if self.a12.is_zero() && self.a21.is_zero() && self.a11 == self.a22 {
            Some(&self.a11)
        } else {
            None
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.a11.mul(&rhs.a11).add(&self.a12.mul(&rhs.a21)),
            self.a11.mul(&rhs.a12).add(&self.a12.mul(&rhs.a22)),
            self.a21.mul(&rhs.a11).add(&self.a22.mul(&rhs.a21)),
            self.a21.mul(&rhs.a12).add(&self.a22.mul(&rhs.a22)),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.a11.add(&rhs.a11),
            self.a12.add(&rhs.a12),
            self.a21.add(&rhs.a21),
            self.a22.add(&rhs.a22),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.a11.sub(&rhs.a11),
            self.a12.sub(&rhs.a12),
            self.a21.sub(&rhs.a21),
            self.a22.sub(&rhs.a22),
        )
    }

    pub fn neg(&self) -> Self {
        Mat2::new(
            self.a11.neg(),
            self.a12.neg(),
            self.a21.neg(),
            self.a22.neg(),
        )
    }

    /// Multiply every entry by p.
    pub fn scale(&self, p: &LPoly<F>) -> Self {
        self.map(|e| e.mul(p))
    }

    /// Multiply every entry by c * t^{e_t} * q^{e_q}.
    pub fn mul_monomial(&self, e_t: i64, e_q: i64, c: &F) -> Self {
        self.map(|e| e.mul_monomial(e_t, e_q, c))
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(
            self.a11.clone(),
            self.a21.clone(),
            self.a12.clone(),
            self.a22.clone(),
        )
    }

    pub fn det(&self) -> LPoly<F> {
        self.a11.mul(&self.a22).sub(&self.a12.mul(&self.a21))
    }

    pub fn trace(&self) -> LPoly<F> {
        self.a11.add(&self.a22)
    }

    /// Exact inverse; requires the determinant to be a single-term unit.
    pub fn inverse(&self) -> Result<Self, Mat2Error> {
        let det = self.det();
        let adjugate = Mat2::new(
            self.a22.clone(),
            self.a12.neg(),
            self.a21.neg(),
            self.a11.clone(),
        );
        adjugate.map_fallible(|e| e.divide_by_unit(&det).map_err(|_| Mat2Error::NotInvertible))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Self, Mat2Error> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn map<G: Fn(&LPoly<F>) -> LPoly<F>>(&self, g: G) -> Self {
        Mat2::new(g(&self.a11), g(&self.a12), g(&self.a21), g(&self.a22))
    }

    pub fn map_fallible<E, G: Fn(&LPoly<F>) -> Result<LPoly<F>, E>>(
        &self,
        g: G,
    ) -> Result<Self, E> {
        Ok(Mat2::new(
            g(&self.a11)?,
            g(&self.a12)?,
            g(&self.a21)?,
            g(&self.a22)?,
        ))
    }

    /// Apply a variable substitution to every entry.
    pub fn substitute(&self, rule: &Subst<F>) -> Self {
        self.map(|e| e.substitute(rule))
    }

    pub fn substitute_all(&self, rules: &[Subst<F>]) -> Self {
        self.map(|e| e.substitute_all(rules))
    }

    /// Entrywise bar involution (q -> -q, t -> t^{-1}) on the variables only.
    pub fn bar_vars(&self) -> Self {
        self.map(|e| e.bar())
    }

    /// Entrywise coefficient conjugation (no variable change).
    pub fn conj_coeffs(&self) -> Self {
        self.map(|e| e.conj_coeffs())
    }

    /// Maximum q-degree over the four entries plus the set of entries that
    /// attain it. Zero entries count as negative infinity.
    pub fn degree_pattern(&self) -> Result<DegreePattern, Mat2Error> {
        let degs = [
            self.a11.d_q(),
            self.a12.d_q(),
            self.a21.d_q(),
            self.a22.d_q(),
        ];
        let d = degs.iter().flatten().max().copied().ok_or(Mat2Error::ZeroMatrix)?;
        Ok(DegreePattern {
            d,
            at_11: degs[0] == Some(d),
            at_12: degs[1] == Some(d),
            at_21: degs[2] == Some(d),
            at_22: degs[3] == Some(d),
        })
    }

    pub fn entries(&self) -> [&LPoly<F>; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl<F: ExactField> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

impl<F: ExactField> fmt::Debug for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type P = LPoly<CycNum>;
    type M = Mat2<CycNum>;

    fn random_poly(rng: &mut ChaCha8Rng) -> P {
        let mut p = P::zero();
        for _ in 0..rng.gen_range(0..4) {
            p = p.add(&P::monomial(
                rng.gen_range(-2..=2),
                rng.gen_range(-2..=2),
                CycNum::from_int(rng.gen_range(-3..=3)),
            ));
        }
        p
    }

    fn random_mat(rng: &mut ChaCha8Rng) -> M {
        M::new(
            random_poly(rng),
            random_poly(rng),
            random_poly(rng),
            random_poly(rng),
        )
    }

    #[test]
    fn diagonal_inverse() {
        let m = M::new(P::q_pow(1), P::zero(), P::zero(), P::q_pow(-1));
        let inv = m.inverse().unwrap();
        assert_eq!(
            inv,
            M::new(P::q_pow(-1), P::zero(), P::zero(), P::q_pow(1))
        );
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn antidiagonal_involution() {
        let m = M::new(P::zero(), P::one(), P::one(), P::zero());
        assert!(m.mul(&m).is_identity());
        assert_eq!(m.pow(2).unwrap(), M::identity());
        assert_eq!(m.pow(-1).unwrap(), m);
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_mat(&mut rng);
            let b = random_mat(&mut rng);
            assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
        }
    }

    #[test]
    fn transpose_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = random_mat(&mut rng);
            let b = random_mat(&mut rng);
            assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }

    #[test]
    fn power_additivity() {
        // A unit-determinant matrix so negative powers exist.
        let m = M::new(
            P::t_pow(1),
            P::one(),
            P::zero(),
            P::monomial(-1, 2, CycNum::from_int(1)),
        );
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                let lhs = m.pow(a).unwrap().mul(&m.pow(b).unwrap());
                let rhs = m.pow(a + b).unwrap();
                assert_eq!(lhs, rhs, "a={} b={}", a, b);
            }
        }
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let m = M::new(P::q_pow(1).add(&P::one()), P::zero(), P::zero(), P::one());
        assert_eq!(m.inverse().unwrap_err(), Mat2Error::NotInvertible);
        let singular = M::new(P::one(), P::one(), P::one(), P::one());
        assert_eq!(singular.inverse().unwrap_err(), Mat2Error::NotInvertible);
    }

    #[test]
    fn degree_pattern_reports_argmax_set() {
        let m = M::new(
            P::q_pow(3),
            P::zero(),
            P::q_pow(3).add(&P::q_pow(-1)),
            P::q_pow(2),
        );
        let pat = m.degree_pattern().unwrap();
        assert_eq!(pat.d, 3);
        assert!(pat.at_11 && pat.at_21);
        assert!(!pat.at_12 && !pat.at_22);
        assert_eq!(M::zero().degree_pattern().unwrap_err(), Mat2Error::ZeroMatrix);
    }

    #[test]
    fn scalar_detection() {
        let m = M::scalar(P::t_pow(4));
        assert_eq!(m.as_scalar(), Some(&P::t_pow(4)));
        let not = M::new(P::t_pow(4), P::zero(), P::zero(), P::t_pow(3));
        assert_eq!(not.as_scalar(), None);
    }

    #[test]
    fn serde_roundtrip() {
        let m = M::new(
            P::monomial(1, -1, CycNum::from_int(2)),
            P::zero(),
            P::one(),
            P::q_pow(5),
        );
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.starts_with(r#"{"a11":"#));
        let back: M = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn substitution_applies_entrywise() {
        let m = M::new(P::t_pow(2), P::q_pow(1), P::zero(), P::one());
        let sub = m.substitute(&Subst::TToQ);
        assert_eq!(
            sub,
            M::new(P::q_pow(2), P::q_pow(1), P::zero(), P::one())
        );
    }
}
