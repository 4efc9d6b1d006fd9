//! Sparse Laurent polynomials in t and q over an exact coefficient field.
//!
//! Terms live in a BTreeMap keyed by (t-exponent, q-exponent), which fixes a
//! canonical lexicographic term order for serialization and hashing. The
//! q-degree functional treats the zero polynomial as negative infinity
//! (represented by None), giving the decoder a total order on possibly-zero
//! entries.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::ExactField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("divisor is not a unit (needs exactly one term)")]
    NotAUnit,
}

/// Variable substitutions. Scale and eval parameters must be nonzero.
#[derive(Clone, Debug)]
pub enum Subst<F> {
    /// q -> alpha * q
    ScaleQ(F),
    /// t -> beta * t
    ScaleT(F),
    /// t -> q
    TToQ,
    /// t -> t^{-1}
    InvT,
    /// q -> q^{-1}
    InvQ,
    /// t -> v
    EvalT(F),
    /// q -> v
    EvalQ(F),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LPoly<F: ExactField> {
    terms: BTreeMap<(i64, i64), F>,
}

impl<F: ExactField> LPoly<F> {
    pub fn zero() -> Self {
        LPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LPoly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        LPoly::monomial(0, 0, c)
    }

    pub fn from_int(v: i64) -> Self {
        LPoly::constant(F::from_int(v))
    }

    /// c * t^{e_t} * q^{e_q}.
    pub fn monomial(e_t: i64, e_q: i64, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_t, e_q), c);
        }
        LPoly { terms }
    }

    pub fn t_pow(e: i64) -> Self {
        LPoly::monomial(e, 0, F::one())
    }

    pub fn q_pow(e: i64) -> Self {
        LPoly::monomial(0, e, F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(F::is_one) == Some(true)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e_t: i64, e_q: i64) -> Option<&F> {
        self.terms.get(&(e_t, e_q))
    }

    /// Some(c) when the polynomial is the constant c (zero included).
    pub fn as_constant(&self) -> Option<F> {
        if self.terms.is_empty() {
            return Some(F::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Some((e_t, e_q, c)) when the polynomial has exactly one term.
    pub fn as_single_term(&self) -> Option<(i64, i64, &F)> {
        if self.terms.len() == 1 {
            let (&(e_t, e_q), c) = self.terms.iter().next().unwrap();
            Some((e_t, e_q, c))
        } else {
            None
        }
    }

    /// Maximum q-exponent; None encodes negative infinity (zero polynomial).
    pub fn d_q(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, e_q)| e_q).max()
    }

    /// Maximum t-exponent; None for zero.
    pub fn d_t(&self) -> Option<i64> {
        self.terms.keys().map(|&(e_t, _)| e_t).max()
    }

    fn insert_add(terms: &mut BTreeMap<(i64, i64), F>, key: (i64, i64), val: F) {
        if val.is_zero() {
            return;
        }
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(val);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&val);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, v) in &rhs.terms {
            Self::insert_add(&mut terms, k, v.clone());
        }
        LPoly { terms }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, v) in &rhs.terms {
            Self::insert_add(&mut terms, k, v.neg());
        }
        LPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(at, aq), ac) in &self.terms {
            for (&(bt, bq), bc) in &rhs.terms {
                Self::insert_add(&mut terms, (at + bt, aq + bq), ac.mul(bc));
            }
        }
        LPoly { terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v.mul(c))).collect(),
        }
    }

    /// Multiply by c * t^{e_t} * q^{e_q} without building a second polynomial.
    pub fn mul_monomial(&self, e_t: i64, e_q: i64, c: &F) -> Self {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(at, aq), v)| ((at + e_t, aq + e_q), v.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by a single-term unit.
    pub fn divide_by_unit(&self, u: &Self) -> Result<Self, LaurentError> {
        let (ut, uq, uc) = u.as_single_term().ok_or(LaurentError::NotAUnit)?;
        let inv = uc.inv().map_err(|_| LaurentError::NotAUnit)?;
        Ok(self.mul_monomial(-ut, -uq, &inv))
    }

    pub fn substitute(&self, rule: &Subst<F>) -> Self {
        let mut terms = BTreeMap::new();
        for (&(e_t, e_q), c) in &self.terms {
            let (key, val) = match rule {
                Subst::ScaleQ(alpha) => ((e_t, e_q), c.mul(&field_pow(alpha, e_q))),
                Subst::ScaleT(beta) => ((e_t, e_q), c.mul(&field_pow(beta, e_t))),
                Subst::TToQ => ((0, e_q + e_t), c.clone()),
                Subst::InvT => ((-e_t, e_q), c.clone()),
                Subst::InvQ => ((e_t, -e_q), c.clone()),
                Subst::EvalT(v) => ((0, e_q), c.mul(&field_pow(v, e_t))),
                Subst::EvalQ(v) => ((e_t, 0), c.mul(&field_pow(v, e_q))),
            };
            Self::insert_add(&mut terms, key, val);
        }
        LPoly { terms }
    }

    /// Apply substitutions left to right.
    pub fn substitute_all(&self, rules: &[Subst<F>]) -> Self {
        let mut acc = self.clone();
        for r in rules {
            acc = acc.substitute(r);
        }
        acc
    }

    /// The bar involution P(q, t) -> P(-q, t^{-1}).
    pub fn bar(&self) -> Self {
        self.substitute(&Subst::ScaleQ(F::from_int(-1)))
            .substitute(&Subst::InvT)
    }

    /// Coefficientwise complex conjugation (no variable change).
    pub fn conj_coeffs(&self) -> Self {
        LPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v.conj())).collect(),
        }
    }

    /// Numeric evaluation at given complex points, for oracle cross-checks.
    pub fn embed_at(
        &self,
        t: crate::cyclo::Complex64,
        q: crate::cyclo::Complex64,
    ) -> crate::cyclo::Complex64 {
        let mut acc = crate::cyclo::Complex64::new(0.0, 0.0);
        for (&(e_t, e_q), c) in &self.terms {
            acc += c.embed() * t.powi(e_t as i32) * q.powi(e_q as i32);
        }
        acc
    }
}

/// c^e for any integer e; c must be invertible when e < 0.
pub fn field_pow<F: ExactField>(c: &F, e: i64) -> F {
    if e < 0 {
        let inv = c.inv().expect("substitution parameter must be nonzero");
        return field_pow(&inv, -e);
    }
    let mut acc = F::one();
    let mut base = c.clone();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

impl<F: ExactField> fmt::Debug for LPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: ExactField> fmt::Display for LPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(e_t, e_q), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if e_t != 0 {
                write!(f, "*t^{}", e_t)?;
            }
            if e_q != 0 {
                write!(f, "*q^{}", e_q)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermSer<F> {
    t: i64,
    q: i64,
    c: F,
}

impl<F: ExactField + Serialize> Serialize for LPoly<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a, F> {
            terms: Vec<TermSer<&'a F>>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(t, q), c)| TermSer { t, q, c })
            .collect();
        Doc { terms }.serialize(serializer)
    }
}

impl<'de, F: ExactField + Deserialize<'de>> Deserialize<'de> for LPoly<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Doc<F> {
            terms: Vec<TermSer<F>>,
        }
        let doc = Doc::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for term in doc.terms {
            if terms.insert((term.t, term.q), term.c).is_some() {
                return Err(DeError::custom(format!(
                    "duplicate term exponent pair ({}, {})",
                    term.t, term.q
                )));
            }
        }
        terms.retain(|_, c: &mut F| !c.is_zero());
        Ok(LPoly { terms })
    }
}
