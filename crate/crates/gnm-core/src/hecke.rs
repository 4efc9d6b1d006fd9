//! Hecke and toric specializations of the rho3 family, and finite closure.
//!
//! The meridian Y^b X^{-a} generates the quadratic relation of the Hecke
//! algebra of the 2-toric reflection group W(2,n,m). Depending on the parity
//! of the Bezout coefficient a, a sign twist of t or a factor i on q is
//! needed before the t = q collapse so that the specialized meridian lands on
//! the target triangular form with diagonal (q^{-2}, -1). Evaluating all
//! variables away instead produces constant matrices generating W(2,n,m)
//! itself, which for (3,4) and (3,5) are the finite complex reflection
//! groups of orders 48 and 240; a breadth-first closure over exact matrices
//! counts them.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::CycNum;
use crate::decoder::StripContext;
use crate::laurent::{LPoly, Subst};
use crate::mat2::Mat2;
use crate::reps::{cnum, fund_conditions, i_pow, Rep, RepError};

type P = LPoly<CycNum>;
type M = Mat2<CycNum>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("operation requires a faithful rho3 representation: {0}")]
    Unsupported(String),
    #[error("faithfulness conditions fail after rescaling: {0}")]
    FundFailed(String),
    #[error("specialized meridian does not match the target shape: {0}")]
    ShapeMismatch(String),
    #[error("toric meridian is not an order-2 reflection: {0}")]
    ReflectionCheckFailed(String),
    #[error("closure generators must have constant entries")]
    NotConstant,
    #[error("closure generators must be invertible")]
    NotInvertible,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Which variable rescalings precede the t = q collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QFactor {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "i")]
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecializationRule {
    pub q_factor: QFactor,
    pub t_sign: i8,
    pub collapse: bool,
}

impl SpecializationRule {
    /// The parity table over the Bezout coefficient a: writing a = 2l + 1
    /// (odd, floor division so a = -1 gives l = -1) or a = 2l (even),
    /// odd/odd -> (1, +1), odd/even -> (1, -1), even/even -> (i, -1),
    /// even/odd -> (i, +1); t = q is always applied last.
    pub fn for_bezout(a: i64) -> SpecializationRule {
        let (q_factor, t_sign) = if a.rem_euclid(2) == 1 {
            let l = (a - 1).div_euclid(2);
            if l.rem_euclid(2) == 1 {
                (QFactor::One, 1)
            } else {
                (QFactor::One, -1)
            }
        } else {
            let l = a / 2;
            if l.rem_euclid(2) == 0 {
                (QFactor::I, -1)
            } else {
                (QFactor::I, 1)
            }
        };
        SpecializationRule {
            q_factor,
            t_sign,
            collapse: true,
        }
    }

    /// The rescalings as substitution rules, excluding the final collapse.
    fn scalings(&self, order: u32) -> Vec<Subst<CycNum>> {
        let mut rules = Vec::new();
        if self.q_factor == QFactor::I {
            rules.push(Subst::ScaleQ(i_pow(order, 1)));
        }
        if self.t_sign == -1 {
            rules.push(Subst::ScaleT(cnum(order, -1)));
        }
        rules
    }
}

/// A rho3 representation carried through its Hecke specialization: the
/// rescaled-and-collapsed generators (now Laurent in q alone), the meridian
/// in its target form, and enough data to decode against it.
pub struct HeckeRep {
    pub n: u32,
    pub m: u32,
    pub rule: SpecializationRule,
    pub mx: M,
    pub my: M,
    pub meridian: M,
    /// image(Delta) = delta_scalar * q^{nm} after the collapse.
    pub delta_scalar: CycNum,
    rules: Vec<Subst<CycNum>>,
}

impl HeckeRep {
    /// Applies the full specialization (rescalings, then t = q) to a matrix
    /// over the original representation, e.g. an encoded word.
    pub fn apply(&self, m: &M) -> M {
        m.substitute_all(&self.rules)
    }

    /// Decoding context for round-trips through the specialized form.
    pub fn strip_context(&self) -> Result<StripContext, HeckeError> {
        let inv_x = self.mx.inverse().map_err(|_| HeckeError::NotInvertible)?;
        let inv_y = self.my.inverse().map_err(|_| HeckeError::NotInvertible)?;
        Ok(StripContext::from_parts(
            self.n,
            self.m,
            inv_x,
            inv_y,
            self.delta_scalar.clone(),
            true,
        ))
    }
}

/// Rescales per the parity rule, re-verifies the faithfulness conditions on
/// the rescaled two-variable matrices, collapses t = q, and checks that the
/// meridian has the Hecke target shape (q^{-2}, 0; *, -1).
pub fn hecke_specialize(rep: &Rep) -> Result<HeckeRep, HeckeError> {
    let c = rep
        .rho3
        .as_ref()
        .ok_or_else(|| HeckeError::Unsupported(format!("kind is {}", rep.kind)))?;
    if rep.n % 2 == 0 {
        return Err(HeckeError::Unsupported(format!(
            "n = {} is even, the representation is not faithful",
            rep.n
        )));
    }
    let rule = SpecializationRule::for_bezout(c.a);
    let scalings = rule.scalings(rep.order);
    let mx_scaled = rep.mx.substitute_all(&scalings);
    let my_scaled = rep.my.substitute_all(&scalings);
    let report = fund_conditions(&mx_scaled, &my_scaled, rep.n, rep.m)?;
    if !report.all_pass() {
        let failing: Vec<u8> = report
            .conditions
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id)
            .collect();
        return Err(HeckeError::FundFailed(format!(
            "conditions {:?} fail after rescaling",
            failing
        )));
    }

    let mut rules = scalings;
    rules.push(Subst::TToQ);
    let mx = rep.mx.substitute_all(&rules);
    let my = rep.my.substitute_all(&rules);
    let meridian = rep.meridian()?.substitute_all(&rules);

    let target_11 = P::monomial(0, -2, cnum(rep.order, 1));
    let target_22 = P::constant(cnum(rep.order, -1));
    if !meridian.a12.is_zero()
        || !meridian.a11.sub(&target_11).is_zero()
        || !meridian.a22.sub(&target_22).is_zero()
    {
        return Err(HeckeError::ShapeMismatch(format!(
            "diagonal is ({}, {}), expected (q^-2, -1)",
            meridian.a11, meridian.a22
        )));
    }

    let nm = (rep.n as i64) * (rep.m as i64);
    let delta_scalar = if rule.t_sign == -1 && nm % 2 == 1 {
        rep.delta_scalar.neg()
    } else {
        rep.delta_scalar.clone()
    };
    Ok(HeckeRep {
        n: rep.n,
        m: rep.m,
        rule,
        mx,
        my,
        meridian,
        delta_scalar,
        rules,
    })
}

/// M^2 = (q_param^{-2} - 1) M + q_param^{-2} I, the Hecke quadratic relation
/// with the parameter substituted. q_param must be a unit monomial (q itself,
/// or a constant evaluation such as 1).
pub fn quadratic_check(m: &M, q_param: &P) -> bool {
    let q2_inv = P::one()
        .divide_by_unit(&q_param.mul(q_param))
        .expect("q parameter must be a unit monomial");
    let lhs = m.mul(m);
    let rhs = m
        .scale(&q2_inv.sub(&P::one()))
        .add(&Mat2::scalar(q2_inv));
    lhs.sub(&rhs).is_zero()
}

/// The 2-toric specialization: constant matrices over Q(z_N).
pub struct ToricSpec {
    pub mx: M,
    pub my: M,
    pub meridian: M,
}

/// Evaluates t = q = 1 (a odd) or t = 1, q = i (a even) and certifies that
/// the meridian becomes an order-2 reflection: R^2 = I, tr R = 0, R != +-I.
pub fn toric_specialize(rep: &Rep) -> Result<ToricSpec, HeckeError> {
    let c = rep
        .rho3
        .as_ref()
        .ok_or_else(|| HeckeError::Unsupported(format!("kind is {}", rep.kind)))?;
    let one = cnum(rep.order, 1);
    let q_value = if c.a.rem_euclid(2) == 1 {
        one.clone()
    } else {
        i_pow(rep.order, 1)
    };
    let rules = [Subst::EvalT(one), Subst::EvalQ(q_value)];
    let mx = rep.mx.substitute_all(&rules);
    let my = rep.my.substitute_all(&rules);
    let meridian = rep.meridian()?.substitute_all(&rules);

    if !meridian.mul(&meridian).is_identity() {
        return Err(HeckeError::ReflectionCheckFailed(
            "meridian squared is not the identity".to_string(),
        ));
    }
    if !meridian.trace().is_zero() {
        return Err(HeckeError::ReflectionCheckFailed(
            "meridian trace is nonzero".to_string(),
        ));
    }
    let id = Mat2::identity();
    if meridian.sub(&id).is_zero() || meridian.add(&id).is_zero() {
        return Err(HeckeError::ReflectionCheckFailed(
            "meridian is a scalar +-I".to_string(),
        ));
    }
    Ok(ToricSpec { mx, my, meridian })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureResult {
    Order(usize),
    CapExceeded(usize),
}

/// Breadth-first closure of the group generated by constant matrices. Stops
/// at a fixpoint or once more than `cap` distinct elements have been found.
///
/// Deduplication hashes the exact coefficients, whose canonical form depends
/// on the ambient cyclotomic field, so everything (the seed identity
/// included) is first brought to the least common field; products then stay
/// there and structural equality coincides with numeric equality.
pub fn group_closure(generators: &[M], cap: usize) -> Result<ClosureResult, HeckeError> {
    let mut common: u32 = 1;
    for g in generators {
        for e in g.entries() {
            if e.as_constant().is_none() {
                return Err(HeckeError::NotConstant);
            }
            for (_, c) in e.terms() {
                common = num_integer::lcm(common, c.order());
            }
        }
    }
    let unit = P::constant(
        CycNum::one()
            .to_order(common)
            .expect("lcm of valid orders is valid"),
    );
    let mut gens: Vec<M> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        let g = g.scale(&unit);
        let inv = g.inverse().map_err(|_| HeckeError::NotInvertible)?;
        gens.push(g);
        gens.push(inv);
    }
    let mut seen: HashSet<M> = HashSet::new();
    let mut queue: VecDeque<M> = VecDeque::new();
    let id = Mat2::scalar(unit);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Ok(ClosureResult::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(ClosureResult::Order(seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::decode_with;
    use crate::garside::{normalize, random_word};
    use crate::reps::{build_rho2, build_rho3};

    #[test]
    fn rule_table_over_parities() {
        let cases = [
            (-1, QFactor::One, 1),  // l = -1 odd
            (1, QFactor::One, -1),  // l = 0 even
            (3, QFactor::One, 1),   // l = 1 odd
            (-3, QFactor::One, -1), // l = -2 even
            (2, QFactor::I, 1),     // l = 1 odd
            (-2, QFactor::I, 1),    // l = -1 odd
            (4, QFactor::I, -1),    // l = 2 even
        ];
        for (a, qf, ts) in cases {
            let r = SpecializationRule::for_bezout(a);
            assert_eq!((r.q_factor, r.t_sign, r.collapse), (qf, ts, true), "a = {}", a);
        }
    }

    #[test]
    fn specialization_hits_the_target_shape() {
        // Covers all three example rules: plain collapse, q -> iq, t -> -t.
        for (n, m) in [(3u32, 4u32), (3, 5), (5, 2), (7, 5), (5, 8)] {
            let rep = build_rho3(n, m).unwrap();
            let h = hecke_specialize(&rep).unwrap();
            // Collapsed generators live in q alone.
            for mat in [&h.mx, &h.my, &h.meridian] {
                for e in mat.entries() {
                    assert!(e.terms().all(|(&(et, _), _)| et == 0));
                }
            }
            assert!(quadratic_check(&h.meridian, &P::q_pow(1)), "({},{})", n, m);
        }
        let r34 = SpecializationRule::for_bezout(-1);
        assert_eq!((r34.q_factor, r34.t_sign), (QFactor::One, 1));
        let r35 = SpecializationRule::for_bezout(2);
        assert_eq!((r35.q_factor, r35.t_sign), (QFactor::I, 1));
        let r52 = SpecializationRule::for_bezout(1);
        assert_eq!((r52.q_factor, r52.t_sign), (QFactor::One, -1));
    }

    #[test]
    fn non_rho3_is_rejected() {
        let rep = build_rho2(3, 4).unwrap();
        assert!(matches!(
            hecke_specialize(&rep),
            Err(HeckeError::Unsupported(_))
        ));
        assert!(matches!(
            toric_specialize(&rep),
            Err(HeckeError::Unsupported(_))
        ));
        // Even n: rho3 exists but is not faithful, so no Hecke embedding.
        let rep = build_rho3(4, 5).unwrap();
        assert!(matches!(
            hecke_specialize(&rep),
            Err(HeckeError::Unsupported(_))
        ));
    }

    #[test]
    fn quadratic_relation_examples() {
        // Identity at q = 1: x^2 = 0*x + 1.
        assert!(quadratic_check(&Mat2::identity(), &P::one()));
        // A generic lower-triangular matrix with the target diagonal.
        let m = Mat2::new(
            P::q_pow(-2),
            P::zero(),
            P::from_int(7).add(&P::q_pow(3)),
            P::from_int(-1),
        );
        assert!(quadratic_check(&m, &P::q_pow(1)));
        // Wrong diagonal fails.
        let bad = Mat2::new(P::q_pow(-1), P::zero(), P::one(), P::from_int(-1));
        assert!(!quadratic_check(&bad, &P::q_pow(1)));
    }

    #[test]
    fn round_trips_survive_the_collapse() {
        let rep = build_rho3(3, 4).unwrap();
        let h = hecke_specialize(&rep).unwrap();
        let ctx = h.strip_context().unwrap();
        for seed in 0..25u64 {
            let w = random_word(3, 4, 50, (seed % 2) as u32, seed);
            let img = h.apply(&rep.encode(&w).unwrap());
            let got = decode_with(&ctx, &img).unwrap();
            assert_eq!(got, normalize(&w), "seed {}", seed);
        }
    }

    #[test]
    fn toric_meridian_is_a_reflection() {
        for (n, m) in [(3u32, 4u32), (3, 5)] {
            let rep = build_rho3(n, m).unwrap();
            let t = toric_specialize(&rep).unwrap();
            assert!(t.meridian.mul(&t.meridian).is_identity());
            assert!(t.meridian.trace().is_zero());
            // The construction identity survives evaluation.
            let px = t.mx.pow(m as i64).unwrap();
            let py = t.my.pow(n as i64).unwrap();
            assert!(px.sub(&py).is_zero());
        }
    }

    #[test]
    fn closure_counts_the_small_reflection_groups() {
        let rep = build_rho3(3, 4).unwrap();
        let t = toric_specialize(&rep).unwrap();
        let gens = [t.mx.clone(), t.my.clone()];
        assert_eq!(
            group_closure(&gens, 10000).unwrap(),
            ClosureResult::Order(48)
        );
        // Enumeration order must not matter.
        let swapped = [t.my, t.mx];
        assert_eq!(
            group_closure(&swapped, 10000).unwrap(),
            ClosureResult::Order(48)
        );
    }

    #[test]
    fn closure_base_and_cap_cases() {
        assert_eq!(group_closure(&[], 10).unwrap(), ClosureResult::Order(1));
        assert_eq!(
            group_closure(&[Mat2::identity()], 10).unwrap(),
            ClosureResult::Order(1)
        );
        // diag(2, 1) generates an infinite cyclic group.
        let two = Mat2::new(P::from_int(2), P::zero(), P::zero(), P::one());
        assert_eq!(
            group_closure(&[two], 100).unwrap(),
            ClosureResult::CapExceeded(100)
        );
        // Non-constant entries are refused.
        let var = Mat2::new(P::q_pow(1), P::zero(), P::zero(), P::one());
        assert!(matches!(
            group_closure(&[var], 10),
            Err(HeckeError::NotConstant)
        ));
        // Singular matrices are refused.
        let sing = Mat2::new(P::one(), P::one(), P::one(), P::one());
        assert!(matches!(
            group_closure(&[sing], 10),
            Err(HeckeError::NotInvertible)
        ));
    }

    #[test]
    fn closure_result_serialization() {
        assert_eq!(
            serde_json::to_string(&ClosureResult::Order(48)).unwrap(),
            r#"{"order":48}"#
        );
        assert_eq!(
            serde_json::to_string(&ClosureResult::CapExceeded(10000)).unwrap(),
            r#"{"cap_exceeded":10000}"#
        );
    }
}
