//! Common interface for the exact coefficient fields.
//!
//! Laurent polynomials and matrices are generic over this trait so the same
//! code runs over plain cyclotomic numbers and over quadratic extensions.

use crate::cyclo::{Complex64, CycError, CycNum, QuadExt};

pub trait ExactField:
    Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + std::fmt::Display + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, CycError>;
    fn div(&self, rhs: &Self) -> Result<Self, CycError> {
        Ok(self.mul(&rhs.inv()?))
    }
    /// Complex conjugation (on cyclotomic coefficients, zeta -> zeta^{-1}).
    fn conj(&self) -> Self;
    /// Numeric embedding for cross-checks.
    fn embed(&self) -> Complex64;
}

impl ExactField for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn from_int(v: i64) -> Self {
        CycNum::from_int(v)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycNum::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        CycNum::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CycNum::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CycNum::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn inv(&self) -> Result<Self, CycError> {
        CycNum::inv(self)
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
    fn embed(&self) -> Complex64 {
        CycNum::embed(self)
    }
}

impl ExactField for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn one() -> Self {
        QuadExt::one()
    }
    fn from_int(v: i64) -> Self {
        QuadExt::from_int(v)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn is_one(&self) -> bool {
        QuadExt::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadExt::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadExt::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QuadExt::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QuadExt::neg(self)
    }
    fn inv(&self) -> Result<Self, CycError> {
        QuadExt::inv(self)
    }
    fn conj(&self) -> Self {
        QuadExt::conj(self)
    }
    fn embed(&self) -> Complex64 {
        QuadExt::embed(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Field axioms on a sample of values, checked generically.
    fn check_axioms<F: ExactField>(samples: &[F]) {
        for a in samples {
            assert_eq!(&a.add(&F::zero()), a);
            assert_eq!(&a.mul(&F::one()), a);
            assert!(a.sub(a).is_zero());
            assert_eq!(a.neg().neg(), *a);
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            for b in samples {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in samples {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }

    #[test]
    fn cyclotomic_axioms() {
        let z = CycNum::root(12, 1).unwrap();
        let samples = vec![
            CycNum::zero().to_order(12).unwrap(),
            CycNum::one().to_order(12).unwrap(),
            z.clone(),
            z.mul(&z).sub(&CycNum::from_int(3).to_order(12).unwrap()),
            CycNum::from_rational(&crate::rat::parse_rational("-7/3").unwrap())
                .to_order(12)
                .unwrap(),
        ];
        check_axioms(&samples);
    }

    #[test]
    fn quadratic_axioms() {
        let c = QuadExt::gen(CycNum::from_int(5)).unwrap();
        let samples = vec![
            QuadExt::zero(),
            QuadExt::one(),
            c.clone(),
            c.add(&QuadExt::from_int(2)),
            c.mul(&c).sub(&QuadExt::from_int(1)),
        ];
        check_axioms(&samples);
    }

    #[test]
    fn division_round_trips() {
        let z = CycNum::root(7, 3).unwrap();
        let a = z.add(&CycNum::from_int(2).to_order(7).unwrap());
        let b = z.sub(&CycNum::from_int(5).to_order(7).unwrap());
        let q = ExactField::div(&a, &b).unwrap();
        assert_eq!(q.mul(&b), a);
    }
}
