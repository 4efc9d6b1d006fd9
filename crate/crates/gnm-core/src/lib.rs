//! Exact symbolic toolkit for the groups G(n,m) = <X, Y | X^m = Y^n>.
//!
//! The crate is organized around a small tower:
//!
//! * [`cyclo`] - exact arithmetic in cyclotomic fields Q(zeta_N) and in quadratic
//!   extensions Q(zeta_N)[c]/(c^2 - s), plus a floating-point embedding used as a
//!   cross-check oracle.
//! * [`laurent`] - sparse Laurent polynomials in t and q over an exact coefficient
//!   field, with the substitution rules the specializations need.
//! * [`mat2`] - 2x2 matrices over Laurent polynomials: products, powers, inverses,
//!   scalarity and q-degree attainment patterns.
//! * [`garside`] - monoid words, Garside normal forms, length statistics, word
//!   parsing and seeded random word generation.
//! * [`reps`] - the three 2x2 representation families (rho1, rho2, rho3), encoding
//!   of words as matrices, the faithfulness certificate, meridian and unitarity
//!   checks, and a runtime registry for selecting a family by name.
//! * [`decoder`] - recovery of the Garside normal form from a matrix image by
//!   reading q-degree patterns and stripping one letter at a time.
//! * [`hecke`] - Hecke-algebra specialization rules, the quadratic relation check,
//!   toric specializations, and finite matrix group closure.

pub mod cyclo;
pub mod decoder;
pub mod field;
pub mod garside;
pub mod hecke;
pub mod laurent;
pub mod mat2;
pub mod rat;
pub mod reps;

pub use cyclo::{CycNum, QuadExt};
pub use decoder::{classify, decode, read_lengths, DecodeError, Situation};
pub use field::ExactField;
pub use garside::{normalize, parse_word, random_word, Letter, MonoidWord, NormalForm};
pub use hecke::{
    group_closure, hecke_specialize, quadratic_check, toric_specialize, ClosureResult, HeckeError,
    HeckeRep, SpecializationRule, ToricSpec,
};
pub use laurent::{LPoly, Subst};
pub use mat2::{DegreePattern, Mat2};
pub use reps::{build_rho1, build_rho2, build_rho3, family, Rep, RepError, RepKind};
