//! Recovery of Garside normal forms from matrix images.
//!
//! Under a representation satisfying the faithfulness conditions, the first
//! and last letters of a Delta-free monoid element can be read off the
//! q-degree attainment pattern of its matrix. Stripping one first letter at a
//! time therefore rewinds the whole word; the Delta power is left behind as a
//! terminal scalar whose degree must be an exact multiple of nm. The same
//! procedure works after the t = q collapse because a Delta factor then only
//! shifts every q-degree uniformly, which leaves the attainment pattern
//! unchanged.
//!
//! Inputs that are not images of monoid elements fail loudly: the letter
//! stream is capped by a determinant-degree bound, impossible degree patterns
//! and out-of-range syllable runs are rejected, and the terminal scalar must
//! match the known image of Delta^k exactly.

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::CycNum;
use crate::garside::{Letter, NormalForm};
use crate::laurent::Subst;
use crate::mat2::Mat2;
use crate::reps::Rep;

type M = Mat2<CycNum>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("degree pattern does not match any boundary situation: {0}")]
    PatternInvalid(String),
    #[error("terminal scalar is not an exact power of Delta: {0}")]
    DeltaResidue(String),
    #[error("letter stream exceeded the bound {0}; input is not a monoid image")]
    NonTermination(i64),
    #[error("a generator matrix is not invertible")]
    NotInvertible,
}

/// First/last letter classification of a Delta-free image, as one of the
/// four boundary situations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Situation {
    pub id: u8,
    pub first: Letter,
    pub last: Letter,
}

impl Situation {
    fn from_letters(first: Letter, last: Letter) -> Situation {
        let id = match (first, last) {
            (Letter::Y, Letter::Y) => 1,
            (Letter::Y, Letter::X) => 2,
            (Letter::X, Letter::Y) => 3,
            (Letter::X, Letter::X) => 4,
        };
        Situation { id, first, last }
    }
}

/// Reads the boundary letters from the q-degree attainment mask:
/// the first letter is Y exactly when the maximum is confined to the second
/// row, and the last letter is X exactly when it touches the second column.
/// The mask is then checked against the allowed pattern of its situation.
pub fn classify(m: &M) -> Result<Situation, DecodeError> {
    let pat = m
        .degree_pattern()
        .map_err(|_| DecodeError::PatternInvalid("zero matrix".to_string()))?;
    let first = if !pat.at_11 && !pat.at_12 {
        Letter::Y
    } else {
        Letter::X
    };
    let last = if pat.at_12 || pat.at_22 {
        Letter::X
    } else {
        Letter::Y
    };
    let sit = Situation::from_letters(first, last);
    // Situations 1-3 are consistent by construction of the two rules; in
    // situation 4 the maximum must be attained at the (1,2) entry.
    if sit.id == 4 && !pat.at_12 {
        return Err(DecodeError::PatternInvalid(format!(
            "mask (11:{}, 12:{}, 21:{}, 22:{}) misses the (1,2) entry required in situation 4",
            pat.at_11, pat.at_12, pat.at_21, pat.at_22
        )));
    }
    Ok(sit)
}

/// Everything the stripping loop needs to know about the representation it
/// is inverting. Built from a [`Rep`] for the generic and t = q forms, or
/// from explicit parts for further specializations (the Hecke collapse).
pub struct StripContext {
    pub n: u32,
    pub m: u32,
    inv_x: M,
    inv_y: M,
    delta_scalar: CycNum,
    /// Degrees carrying the weighted length: t generically, q after t = q.
    specialized: bool,
}

impl StripContext {
    pub fn generic(rep: &Rep) -> StripContext {
        StripContext {
            n: rep.n,
            m: rep.m,
            inv_x: rep.inv_x.clone(),
            inv_y: rep.inv_y.clone(),
            delta_scalar: rep.delta_scalar.clone(),
            specialized: false,
        }
    }

    pub fn specialized(rep: &Rep) -> StripContext {
        StripContext {
            n: rep.n,
            m: rep.m,
            inv_x: rep.inv_x.substitute(&Subst::TToQ),
            inv_y: rep.inv_y.substitute(&Subst::TToQ),
            delta_scalar: rep.delta_scalar.clone(),
            specialized: true,
        }
    }

    /// For representations derived by further ring maps: the caller supplies
    /// the (already mapped) generator inverses and the scalar z with
    /// image(Delta) = z * q^{nm} (specialized) or z * t^{nm}.
    pub fn from_parts(
        n: u32,
        m: u32,
        inv_x: M,
        inv_y: M,
        delta_scalar: CycNum,
        specialized: bool,
    ) -> StripContext {
        StripContext {
            n,
            m,
            inv_x,
            inv_y,
            delta_scalar,
            specialized,
        }
    }

    fn inverse_of(&self, letter: Letter) -> &M {
        match letter {
            Letter::X => &self.inv_x,
            Letter::Y => &self.inv_y,
        }
    }
}

/// Decodes the matrix image of a monoid element back to its normal form.
pub fn decode(rep: &Rep, m: &M, specialized: bool) -> Result<NormalForm, DecodeError> {
    let ctx = if specialized {
        StripContext::specialized(rep)
    } else {
        StripContext::generic(rep)
    };
    decode_with(&ctx, m)
}

pub fn decode_with(ctx: &StripContext, m0: &M) -> Result<NormalForm, DecodeError> {
    let nm = ctx.n as i64 * ctx.m as i64;
    // The determinant of a genuine image is a unit monomial whose tracked
    // degree is twice the weighted length; each stripped letter lowers it by
    // at least 2 min(n, m), which caps the loop.
    let det = m0.det();
    let Some((dt, dq, _)) = det.as_single_term() else {
        return Err(DecodeError::PatternInvalid(
            "determinant is not a single-term unit".to_string(),
        ));
    };
    let det_deg = if ctx.specialized { dq } else { dt };
    let cap = det_deg / (2 * ctx.n.min(ctx.m) as i64) + nm;

    let mut cur = m0.clone();
    let mut letters: Vec<Letter> = Vec::new();
    while cur.as_scalar().is_none() {
        if letters.len() as i64 >= cap {
            return Err(DecodeError::NonTermination(cap));
        }
        let sit = classify(&cur)?;
        cur = ctx.inverse_of(sit.first).mul(&cur);
        letters.push(sit.first);
    }

    // Terminal scalar must be exactly delta_scalar^k times t^{k nm} (or
    // q^{k nm} when specialized).
    let scalar = cur.as_scalar().expect("loop exited on a scalar");
    let Some((st, sq, coeff)) = scalar.as_single_term() else {
        return Err(DecodeError::DeltaResidue(
            "terminal scalar has several terms".to_string(),
        ));
    };
    let (deg, off_deg) = if ctx.specialized { (sq, st) } else { (st, sq) };
    if off_deg != 0 {
        return Err(DecodeError::DeltaResidue(format!(
            "terminal scalar carries an unexpected degree {}",
            off_deg
        )));
    }
    if deg < 0 || deg % nm != 0 {
        return Err(DecodeError::DeltaResidue(format!(
            "terminal degree {} is not a nonnegative multiple of {}",
            deg, nm
        )));
    }
    let k = deg / nm;
    let expected = ctx
        .delta_scalar
        .pow(k)
        .map_err(|_| DecodeError::NotInvertible)?;
    if !coeff.sub(&expected).is_zero() {
        return Err(DecodeError::DeltaResidue(
            "terminal coefficient is not the expected power of the Delta scalar".to_string(),
        ));
    }

    // Group the letter stream into alternating runs and enforce the normal
    // form bounds (a genuine image cannot violate them; adversarial input
    // can).
    let mut syllables: Vec<(Letter, u32)> = Vec::new();
    for &l in &letters {
        match syllables.last_mut() {
            Some((prev, e)) if *prev == l => *e += 1,
            _ => syllables.push((l, 1)),
        }
    }
    for &(l, e) in &syllables {
        let bound = match l {
            Letter::X => ctx.m - 1,
            Letter::Y => ctx.n - 1,
        };
        if e > bound {
            return Err(DecodeError::PatternInvalid(format!(
                "syllable {}^{} exceeds the bound {}",
                l.symbol(),
                e,
                bound
            )));
        }
    }
    let nf = NormalForm {
        n: ctx.n,
        m: ctx.m,
        delta_exp: k as u32,
        syllables,
    };
    debug_assert!(nf.invariants_hold());
    Ok(nf)
}

/// Length statistics read directly off a Delta-free image without decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReadLengths {
    pub garside: i64,
    pub n_q: i64,
}

/// The Garside length of a Delta-free element u != 1 from its matrix: the
/// maximal q-degree equals n_q(u) = (k - 1) + 1_{n1 != 0}, and the boundary
/// letters supply the two indicator terms. In the t = q form the weighted
/// length shifts every q-degree uniformly; half the determinant degree
/// removes that shift.
pub fn read_lengths(rep: &Rep, m: &M, specialized: bool) -> Result<ReadLengths, DecodeError> {
    let sit = classify(m)?;
    let pat = m
        .degree_pattern()
        .map_err(|_| DecodeError::PatternInvalid("zero matrix".to_string()))?;
    let n_q = if specialized {
        let Some((_, dq, _)) = m.det().as_single_term() else {
            return Err(DecodeError::PatternInvalid(
                "determinant is not a single-term unit".to_string(),
            ));
        };
        pat.d - dq / 2
    } else {
        pat.d
    };
    let first_is_y = i64::from(sit.first == Letter::Y);
    let last_is_x = i64::from(sit.last == Letter::X);
    let k = n_q + 1 - first_is_y;
    let garside = 2 * (k - 1) + first_is_y + last_is_x;
    let _ = rep;
    Ok(ReadLengths { garside, n_q })
}
