//! The three 2x2 representation families of G(n,m) over Laurent polynomials.
//!
//! Family rho1 covers m = 2 with odd n via the deformed dihedral matrices,
//! rho2 covers all n, m >= 2 with triangular matrices, and rho3 covers
//! coprime (n,m) with 3 not dividing m and is the Burau-style family the
//! decoder and Hecke layers build on. Every builder validates the central
//! relation M_X^m = M_Y^n at construction time and caches generator powers
//! and inverses, so encoding a word costs one matrix product per syllable.
//!
//! All coefficients of a representation live in one cyclotomic field Q(z_N);
//! the order N is chosen per family so that every constant (roots of unity,
//! the quadratic unit U, the prefactor i) exists there.

pub mod brackets;

use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::CycNum;
use crate::garside::{Gen, Letter, MonoidWord};
use crate::laurent::{LPoly, Subst};
use crate::mat2::Mat2;

use brackets::{bezout, bracket_pair, bracket_unit, upow};

type P = LPoly<CycNum>;
type M = Mat2<CycNum>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("n and m must be coprime, got ({0}, {1})")]
    NotCoprime(u32, u32),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("word is over ({word_n}, {word_m}) but the representation is over ({rep_n}, {rep_m})")]
    ParameterMismatch {
        word_n: u32,
        word_m: u32,
        rep_n: u32,
        rep_m: u32,
    },
    #[error("operation {op} is not supported for {kind}")]
    UnsupportedKind { op: &'static str, kind: RepKind },
    #[error("construction self-check failed: {0}")]
    ConstructionCheckFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Rho1,
    Rho2,
    Rho3,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RepKind::Rho1 => "rho1",
            RepKind::Rho2 => "rho2",
            RepKind::Rho3 => "rho3",
        };
        write!(f, "{}", s)
    }
}

/// Constants of the rho3 construction, kept for closed-form powers, the
/// meridian and the unitarity check.
#[derive(Debug, Clone)]
pub struct Rho3Constants {
    pub a: i64,
    pub b: i64,
    pub u: CycNum,
    pub u_prime: CycNum,
    pub v: CycNum,
    pub lambda1: CycNum,
    pub lambda2: CycNum,
    pub mu1: CycNum,
    pub mu2: CycNum,
    pub a1: P,
    pub a2: P,
    lam_denom_inv: CycNum,
    mu_denom_inv: CycNum,
    /// V * [lambda]_a, the unit coefficient of the (1,2) entry core.
    v_lam_a: CycNum,
    /// -A1 A2 / (q^{-1} V [lambda]_a), the (2,1) entry before the mu bracket.
    y21_core: P,
}

impl Rho3Constants {
    pub fn bracket_lambda(&self, k: i64) -> CycNum {
        bracket_pair(&self.lambda1, &self.lambda2, &self.lam_denom_inv, k)
    }

    pub fn bracket_mu(&self, k: i64) -> CycNum {
        bracket_pair(&self.mu1, &self.mu2, &self.mu_denom_inv, k)
    }
}

pub struct Rep {
    pub n: u32,
    pub m: u32,
    pub kind: RepKind,
    /// Cyclotomic order N of the coefficient field Q(z_N).
    pub order: u32,
    pub mx: M,
    pub my: M,
    /// M_X^m = M_Y^n = delta_scalar * t^{nm} * I.
    pub delta_scalar: CycNum,
    pub faithful: bool,
    pub faithful_reason: String,
    pub rho3: Option<Rho3Constants>,
    powers_x: Vec<M>,
    powers_y: Vec<M>,
    pub inv_x: M,
    pub inv_y: M,
}

/// -1 and friends lifted into Q(z_order) so every coefficient of a
/// representation lives in one field.
pub(crate) fn cnum(order: u32, v: i64) -> CycNum {
    CycNum::from_int(v)
        .to_order(order)
        .expect("lifting a rational into any cyclotomic field cannot fail")
}

/// zeta_order^k as an infallible constructor for a valid order.
pub(crate) fn zeta(order: u32, k: i64) -> CycNum {
    CycNum::root(order, k).expect("order is positive")
}

/// i^e inside Q(z_order); requires 4 | order.
pub(crate) fn i_pow(order: u32, e: i64) -> CycNum {
    debug_assert_eq!(order % 4, 0);
    let r = e.rem_euclid(4) as u32;
    zeta(order, (r * (order / 4)) as i64)
}

fn lcm3(a: u32, b: u32, c: u32) -> u32 {
    a.lcm(&b).lcm(&c)
}

impl Rep {
    fn finish(
        n: u32,
        m: u32,
        kind: RepKind,
        order: u32,
        mx: M,
        my: M,
        delta_scalar: CycNum,
        faithful: bool,
        faithful_reason: String,
        rho3: Option<Rho3Constants>,
    ) -> Result<Rep, RepError> {
        let mut powers_x = Vec::with_capacity(m as usize + 1);
        powers_x.push(Mat2::identity());
        for _ in 0..m {
            powers_x.push(powers_x.last().unwrap().mul(&mx));
        }
        let mut powers_y = Vec::with_capacity(n as usize + 1);
        powers_y.push(Mat2::identity());
        for _ in 0..n {
            powers_y.push(powers_y.last().unwrap().mul(&my));
        }
        let expected = Mat2::scalar(P::monomial(
            n as i64 * m as i64,
            0,
            delta_scalar.clone(),
        ));
        if !powers_x[m as usize].sub(&expected).is_zero() {
            return Err(RepError::ConstructionCheckFailed(format!(
                "M_X^{} is not the expected central scalar for {}({},{})",
                m, kind, n, m
            )));
        }
        if !powers_y[n as usize].sub(&expected).is_zero() {
            return Err(RepError::ConstructionCheckFailed(format!(
                "M_Y^{} is not the expected central scalar for {}({},{})",
                n, kind, n, m
            )));
        }
        let inv_x = mx
            .inverse()
            .map_err(|_| RepError::ConstructionCheckFailed("M_X is not invertible".into()))?;
        let inv_y = my
            .inverse()
            .map_err(|_| RepError::ConstructionCheckFailed("M_Y is not invertible".into()))?;
        Ok(Rep {
            n,
            m,
            kind,
            order,
            mx,
            my,
            delta_scalar,
            faithful,
            faithful_reason,
            rho3,
            powers_x,
            powers_y,
            inv_x,
            inv_y,
        })
    }

    pub fn generator(&self, letter: Letter) -> &M {
        match letter {
            Letter::X => &self.mx,
            Letter::Y => &self.my,
        }
    }

    pub fn generator_inverse(&self, letter: Letter) -> &M {
        match letter {
            Letter::X => &self.inv_x,
            Letter::Y => &self.inv_y,
        }
    }

    /// Cached nonnegative powers up to the relation bound; general powers by
    /// square-and-multiply.
    pub fn letter_power(&self, letter: Letter, k: i64) -> Result<M, RepError> {
        let cache = match letter {
            Letter::X => &self.powers_x,
            Letter::Y => &self.powers_y,
        };
        if k >= 0 && (k as usize) < cache.len() {
            return Ok(cache[k as usize].clone());
        }
        self.generator(letter)
            .pow(k)
            .map_err(|_| RepError::ConstructionCheckFailed("generator is not invertible".into()))
    }

    /// The image of Delta: delta_scalar * t^{nm} * I.
    pub fn delta_matrix(&self) -> M {
        Mat2::scalar(P::monomial(
            self.n as i64 * self.m as i64,
            0,
            self.delta_scalar.clone(),
        ))
    }

    /// Word image: one cached-power product per syllable, Delta factors
    /// hoisted into a single scalar multiplication.
    pub fn encode(&self, w: &MonoidWord) -> Result<M, RepError> {
        if w.n != self.n || w.m != self.m {
            return Err(RepError::ParameterMismatch {
                word_n: w.n,
                word_m: w.m,
                rep_n: self.n,
                rep_m: self.m,
            });
        }
        let nm = self.n as i64 * self.m as i64;
        let mut acc = Mat2::identity();
        let mut delta_total: i64 = 0;
        for &(g, e) in &w.syllables {
            let e = e as i64;
            let (bound, cache) = match g {
                Gen::D => {
                    delta_total += e;
                    continue;
                }
                Gen::X => (self.m as i64, &self.powers_x),
                Gen::Y => (self.n as i64, &self.powers_y),
            };
            delta_total += e / bound;
            let r = (e % bound) as usize;
            if r > 0 {
                acc = acc.mul(&cache[r]);
            }
        }
        if delta_total > 0 {
            let c = upow(&self.delta_scalar, delta_total);
            acc = acc.mul_monomial(delta_total * nm, 0, &c);
        }
        Ok(acc)
    }

    /// Closed-form k-th power of a generator, valid for every integer k.
    pub fn closed_form_power(&self, letter: Letter, k: i64) -> Result<M, RepError> {
        match self.kind {
            RepKind::Rho3 => self.closed_form_rho3(letter, k),
            RepKind::Rho2 => self.closed_form_rho2(letter, k),
            RepKind::Rho1 => self.closed_form_rho1(letter, k),
        }
    }

    fn closed_form_rho3(&self, letter: Letter, k: i64) -> Result<M, RepError> {
        let c = self.rho3.as_ref().expect("rho3 constants present");
        let (n, m) = (self.n as i64, self.m as i64);
        match letter {
            Letter::X => {
                // (-1)^{bk} i^{(n+1)k} t^{nk} times the lambda-bracket matrix.
                let pf = i_pow(self.order, (n + 1) * k + 2 * c.b * k);
                let bl = c.bracket_lambda(k);
                let e11 = c.u_prime.mul(&bl).add(&c.bracket_lambda(k - 1));
                let e12 = c.v.mul(&bl);
                let e22 = c.u_prime.mul(&bl).neg().add(&c.bracket_lambda(k + 1));
                Ok(Mat2::new(
                    P::constant(e11),
                    P::constant(e12.clone()),
                    P::constant(e12),
                    P::constant(e22),
                )
                .mul_monomial(n * k, 0, &pf))
            }
            Letter::Y => {
                let pf = i_pow(self.order, m * k + 2 * c.a * k);
                let bm = c.bracket_mu(k);
                let mu1k = upow(&c.mu1, k);
                let e11 = c.a1.scale(&bm).add(&P::constant(mu1k.clone()));
                let e12 = P::monomial(0, -1, c.v_lam_a.mul(&bm));
                let e21 = c.y21_core.scale(&bm);
                let e22 = P::constant(mu1k).sub(&c.a2.scale(&bm));
                Ok(Mat2::new(e11, e12, e21, e22).mul_monomial(m * k, 0, &pf))
            }
        }
    }

    fn closed_form_rho2(&self, letter: Letter, k: i64) -> Result<M, RepError> {
        let (n, m) = (self.n as i64, self.m as i64);
        match letter {
            Letter::X => {
                let z = zeta(self.order, (self.order / (2 * self.m)) as i64);
                let br = bracket_unit(&z, k)?;
                Ok(Mat2::new(
                    P::constant(upow(&z, k)),
                    P::constant(br),
                    P::zero(),
                    P::constant(upow(&z, -k)),
                )
                .mul_monomial(n * k, 0, &cnum(self.order, 1)))
            }
            Letter::Y => {
                let z = zeta(self.order, (self.order / (2 * self.n)) as i64);
                let br = bracket_unit(&z, k)?;
                Ok(Mat2::new(
                    P::constant(upow(&z, k)),
                    P::zero(),
                    P::monomial(0, 1, br),
                    P::constant(upow(&z, -k)),
                )
                .mul_monomial(m * k, 0, &cnum(self.order, 1)))
            }
        }
    }

    fn closed_form_rho1(&self, letter: Letter, k: i64) -> Result<M, RepError> {
        let n = self.n as i64;
        match letter {
            Letter::X => {
                // M_X^2 is the scalar t^{2n}, so even powers are scalars and
                // odd powers are shifted copies of M_X.
                if k.rem_euclid(2) == 0 {
                    Ok(Mat2::scalar(P::t_pow(n * k)))
                } else {
                    Ok(self.mx.mul_monomial(n * (k - 1), 0, &cnum(self.order, 1)))
                }
            }
            Letter::Y => {
                let z = zeta(self.order, 1);
                let c = cnum(self.order, 2).add(&z).add(&upow(&z, -1));
                let bk = bracket_unit(&z, k)?;
                let bkm = bracket_unit(&z, k - 1)?;
                let bkp = bracket_unit(&z, k + 1)?;
                Ok(Mat2::new(
                    P::constant(bk.add(&bkm).neg()),
                    P::monomial(0, -1, bk.neg()),
                    P::monomial(0, 1, c.mul(&bk)),
                    P::constant(bk.add(&bkp)),
                )
                .mul_monomial(2 * k, 0, &cnum(self.order, 1)))
            }
        }
    }

    /// The meridian element Y^b X^{-a}. For rho3 the result is checked
    /// against its lower-triangular closed form; rho1 (with a = 1, b = n')
    /// produces the transposed, upper-triangular analogue, which is returned
    /// unchecked.
    pub fn meridian(&self) -> Result<M, RepError> {
        let (a, b) = match self.kind {
            RepKind::Rho3 => {
                let c = self.rho3.as_ref().unwrap();
                (c.a, c.b)
            }
            RepKind::Rho1 => (1, (self.n as i64 - 1) / 2),
            RepKind::Rho2 => {
                return Err(RepError::UnsupportedKind {
                    op: "meridian",
                    kind: self.kind,
                })
            }
        };
        let mer = self
            .letter_power(Letter::Y, b)?
            .mul(&self.letter_power(Letter::X, -a)?);
        if self.kind == RepKind::Rho3 {
            let pf = i_pow(self.order, -a - 1);
            let e11 = P::monomial(-1, -1, pf.clone());
            let e22 = P::monomial(-1, 1, i_pow(self.order, a - 1));
            let ok = mer.a12.is_zero()
                && mer.a11.sub(&e11).is_zero()
                && mer.a22.sub(&e22).is_zero();
            if !ok {
                return Err(RepError::ConstructionCheckFailed(format!(
                    "meridian of rho3({},{}) does not match its closed form",
                    self.n, self.m
                )));
            }
        }
        Ok(mer)
    }

    /// Sesquilinear unitarity with respect to J = antidiag(1,1): conjugate
    /// coefficients, send q to -q and t to t^{-1}, then transpose(bar M) J M
    /// must return J. For even a the identity holds after replacing q by iq
    /// in both generators first.
    pub fn unitarity_check(&self) -> Result<bool, RepError> {
        let c = self.rho3.as_ref().ok_or(RepError::UnsupportedKind {
            op: "unitarity_check",
            kind: self.kind,
        })?;
        let j = Mat2::new(P::zero(), P::one(), P::one(), P::zero());
        let twist = c.a.rem_euclid(2) == 0;
        for g in [&self.mx, &self.my] {
            let g = if twist {
                g.substitute(&Subst::ScaleQ(i_pow(self.order, 1)))
            } else {
                g.clone()
            };
            let bar = g.bar_vars().conj_coeffs();
            if !bar.transpose().mul(&j).mul(&g).sub(&j).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For any representation of G(n,2) with n odd: S1 = M_Y^{-n'} M_X and
    /// S2 = S1^{-1} M_Y satisfy the dihedral braid relation, i.e. both
    /// n-factor alternating products equal M_X. These are the images of the
    /// Artin generators under Y = S1 S2 and X = (S1 S2)^{n'} S1.
    pub fn dihedral_braid_check(&self) -> Result<bool, RepError> {
        if self.m != 2 || self.n % 2 == 0 {
            return Err(RepError::UnsupportedKind {
                op: "dihedral_braid_check",
                kind: self.kind,
            });
        }
        let (s1, s2) = self.dihedral_generators()?;
        let alternating = |first: &M, second: &M| {
            let mut acc = Mat2::identity();
            for i in 0..self.n {
                acc = acc.mul(if i % 2 == 0 { first } else { second });
            }
            acc
        };
        let p1 = alternating(&s1, &s2);
        let p2 = alternating(&s2, &s1);
        Ok(p1.sub(&self.mx).is_zero() && p2.sub(&self.mx).is_zero())
    }

    /// The braid-generator pair (S1, S2) of the dihedral identification.
    pub fn dihedral_generators(&self) -> Result<(M, M), RepError> {
        if self.m != 2 {
            return Err(RepError::UnsupportedKind {
                op: "dihedral_generators",
                kind: self.kind,
            });
        }
        let np = (self.n as i64 - 1) / 2;
        let s1 = self.letter_power(Letter::Y, -np)?.mul(&self.mx);
        let s2 = s1
            .inverse()
            .map_err(|_| RepError::ConstructionCheckFailed("S1 is not invertible".into()))?
            .mul(&self.my);
        Ok((s1, s2))
    }

    /// Faithfulness certificate: re-derives the three conditions from the
    /// generator matrices.
    pub fn verify_fund(&self) -> Result<FundReport, RepError> {
        fund_conditions(&self.mx, &self.my, self.n, self.m)
    }
}

/// One checked condition of the faithfulness criterion.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub id: u8,
    pub description: String,
    pub checked_k: Vec<i64>,
    pub pass: bool,
    pub failures: Vec<FundFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FundFailure {
    pub k: i64,
    pub entry: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FundReport {
    pub conditions: Vec<ConditionReport>,
}

impl FundReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    /// Conditions on proper generator powers only (used after substitutions
    /// that rescale variables, where the central check is unaffected anyway).
    pub fn powers_pass(&self) -> bool {
        self.conditions.iter().skip(1).all(|c| c.pass)
    }
}

const ENTRY_NAMES: [&str; 4] = ["a11", "a12", "a21", "a22"];

/// The three faithfulness conditions on a generator pair:
/// (1) M_X^m = M_Y^n;
/// (2) M_X^k = t^{nk} C(k) with constant entries and C(k)_{12} != 0 for
///     1 <= k <= m-1;
/// (3) M_Y^k = t^{mk} P(k) with d_q(P_i) <= 0 away from the (2,1) entry and
///     d_q(P_3) = 1 there, for 1 <= k <= n-1.
pub fn fund_conditions(mx: &M, my: &M, n: u32, m: u32) -> Result<FundReport, RepError> {
    let (ni, mi) = (n as i64, m as i64);

    let mut cond2 = ConditionReport {
        id: 2,
        description: format!(
            "M_X^k = t^{{{}k}} * constants with nonzero (1,2) entry, k = 1..{}",
            n,
            m - 1
        ),
        checked_k: (1..=mi - 1).collect(),
        pass: true,
        failures: Vec::new(),
    };
    let mut px = Mat2::identity();
    for k in 1..=mi - 1 {
        px = px.mul(mx);
        for (name, e) in ENTRY_NAMES.iter().zip(px.entries()) {
            let uniform = e
                .terms()
                .all(|(&(et, eq), _)| et == ni * k && eq == 0);
            if !uniform {
                cond2.failures.push(FundFailure {
                    k,
                    entry: name,
                    reason: format!("entry is not of the form t^{} * constant", ni * k),
                });
            }
        }
        if px.a12.is_zero() {
            cond2.failures.push(FundFailure {
                k,
                entry: "a12",
                reason: "corner constant c_2(k) vanishes".to_string(),
            });
        }
    }
    cond2.pass = cond2.failures.is_empty();
    let px_full = px.mul(mx);

    let mut cond3 = ConditionReport {
        id: 3,
        description: format!(
            "M_Y^k = t^{{{}k}} * q-Laurent entries, degrees <= 0 except exactly 1 at (2,1), k = 1..{}",
            m,
            n - 1
        ),
        checked_k: (1..=ni - 1).collect(),
        pass: true,
        failures: Vec::new(),
    };
    let mut py = Mat2::identity();
    for k in 1..=ni - 1 {
        py = py.mul(my);
        for (idx, (name, e)) in ENTRY_NAMES.iter().zip(py.entries()).enumerate() {
            let uniform_t = e.terms().all(|(&(et, _), _)| et == mi * k);
            if !uniform_t {
                cond3.failures.push(FundFailure {
                    k,
                    entry: name,
                    reason: format!("entry has t-exponents other than {}", mi * k),
                });
                continue;
            }
            let dq = e.d_q();
            if idx == 2 {
                if dq != Some(1) {
                    cond3.failures.push(FundFailure {
                        k,
                        entry: name,
                        reason: format!("d_q = {:?}, expected exactly 1", dq),
                    });
                }
            } else if dq > Some(0) {
                cond3.failures.push(FundFailure {
                    k,
                    entry: name,
                    reason: format!("d_q = {:?}, expected <= 0", dq),
                });
            }
        }
    }
    cond3.pass = cond3.failures.is_empty();
    let py_full = py.mul(my);

    let central_pass = px_full.sub(&py_full).is_zero();
    let cond1 = ConditionReport {
        id: 1,
        description: format!("central relation M_X^{} = M_Y^{}", m, n),
        checked_k: vec![],
        pass: central_pass,
        failures: if central_pass {
            vec![]
        } else {
            vec![FundFailure {
                k: 0,
                entry: "all",
                reason: "M_X^m differs from M_Y^n".to_string(),
            }]
        },
    };

    Ok(FundReport {
        conditions: vec![cond1, cond2, cond3],
    })
}

/// rho1: m = 2, n odd >= 3, over Q(z_n) with the unit c = 2 + z_n + z_n^{-1}.
pub fn build_rho1(n: u32) -> Result<Rep, RepError> {
    if n < 3 || n % 2 == 0 {
        return Err(RepError::BadParameters(format!(
            "rho1 requires odd n >= 3, got n = {}",
            n
        )));
    }
    let order = n;
    let z = zeta(order, 1);
    let c = cnum(order, 2).add(&z).add(&upow(&z, -1));
    let ell = (n as i64 - 1) / 2;
    let br_ell = bracket_unit(&z, ell)?;
    let br_ell1 = bracket_unit(&z, ell + 1)?;
    let ni = n as i64;
    let mx = Mat2::new(
        P::zero(),
        P::monomial(ni, 0, br_ell.neg()),
        P::monomial(ni, 0, c.mul(&br_ell1)),
        P::zero(),
    );
    let my = Mat2::new(
        P::monomial(2, 0, cnum(order, -1)),
        P::monomial(2, -1, cnum(order, -1)),
        P::monomial(2, 1, c.clone()),
        P::monomial(2, 0, c.sub(&cnum(order, 1))),
    );
    Rep::finish(
        n,
        2,
        RepKind::Rho1,
        order,
        mx,
        my,
        cnum(order, 1),
        true,
        "satisfies the three faithfulness conditions".to_string(),
        None,
    )
}

/// rho2: any n, m >= 2, triangular over Q(z_{lcm(2n,2m)}).
pub fn build_rho2(n: u32, m: u32) -> Result<Rep, RepError> {
    if n < 2 || m < 2 {
        return Err(RepError::BadParameters(format!(
            "rho2 requires n, m >= 2, got ({}, {})",
            n, m
        )));
    }
    let order = (2 * n).lcm(&(2 * m));
    let z2m = zeta(order, (order / (2 * m)) as i64);
    let z2n = zeta(order, (order / (2 * n)) as i64);
    let (ni, mi) = (n as i64, m as i64);
    let mx = Mat2::new(
        P::monomial(ni, 0, z2m.clone()),
        P::monomial(ni, 0, cnum(order, 1)),
        P::zero(),
        P::monomial(ni, 0, upow(&z2m, -1)),
    );
    let my = Mat2::new(
        P::monomial(mi, 0, z2n.clone()),
        P::zero(),
        P::monomial(mi, 1, cnum(order, 1)),
        P::monomial(mi, 0, upow(&z2n, -1)),
    );
    Rep::finish(
        n,
        m,
        RepKind::Rho2,
        order,
        mx,
        my,
        cnum(order, -1),
        true,
        "satisfies the three faithfulness conditions".to_string(),
        None,
    )
}

/// rho3: gcd(n,m) = 1, 3 does not divide m, n >= 3 (n = 2 degenerates);
/// faithful exactly when n is odd.
pub fn build_rho3(n: u32, m: u32) -> Result<Rep, RepError> {
    if n < 2 || m < 2 {
        return Err(RepError::BadParameters(format!(
            "rho3 requires n, m >= 2, got ({}, {})",
            n, m
        )));
    }
    if m % 3 == 0 {
        return Err(RepError::BadParameters(format!(
            "rho3 requires 3 to not divide m, got m = {}",
            m
        )));
    }
    let (a, b) = bezout(n, m).map_err(|_| RepError::BadParameters(format!(
        "rho3 requires gcd(n, m) = 1, got ({}, {})",
        n, m
    )))?;
    let order = lcm3(4 * m, 2 * n, 4);
    let (ni, mi) = (n as i64, m as i64);

    let z4m = zeta(order, (order / (4 * m)) as i64);
    let u = upow(&z4m, 3 * mi - 2).sub(&upow(&z4m, 2 - 3 * mi));
    let lambda1 = upow(&z4m, 3 * mi - 6);
    let lambda2 = upow(&z4m, 3 * mi + 6);
    let u_prime = u.add(&lambda1).add(&lambda2);
    let v = if m > 2 {
        let zm = zeta(order, (order / m) as i64);
        cnum(order, -1).sub(&zm).sub(&upow(&zm, -1))
    } else {
        cnum(order, -1)
    };
    // Sanity anchor used throughout the construction.
    if !u_prime.mul(&u).add(&v.mul(&v)).is_one() {
        return Err(RepError::ConstructionCheckFailed(
            "U'U + V^2 = 1 fails".to_string(),
        ));
    }
    let mu1 = zeta(order, (order / n) as i64);
    let mu2 = upow(&mu1, -1);

    let lam_denom = lambda2.sub(&lambda1);
    let lam_denom_inv = lam_denom
        .inv()
        .map_err(|_| RepError::ZeroDenominator("lambda2 = lambda1".to_string()))?;
    let mu_denom = upow(&mu2, b).sub(&upow(&mu1, b));
    let mu_denom_inv = mu_denom.inv().map_err(|_| {
        RepError::BadParameters(format!(
            "mu bracket denominator vanishes for (n, m) = ({}, {}): n divides 2b = {}",
            n,
            m,
            2 * b
        ))
    })?;

    let bl = |k: i64| bracket_pair(&lambda1, &lambda2, &lam_denom_inv, k);
    let bmu = |k: i64| bracket_pair(&mu1, &mu2, &mu_denom_inv, k);

    // A_i = q^{-1}(U'[lambda]_a + [lambda]_{a-1}) - mu_i^b.
    let alpha = u_prime.mul(&bl(a)).add(&bl(a - 1));
    let a1 = P::monomial(0, -1, alpha.clone()).sub(&P::constant(upow(&mu1, b)));
    let a2 = P::monomial(0, -1, alpha).sub(&P::constant(upow(&mu2, b)));

    let v_lam_a = v.mul(&bl(a));
    let y21_core = a1
        .mul(&a2)
        .divide_by_unit(&P::monomial(0, -1, v_lam_a.clone()))
        .map_err(|_| {
            RepError::ConstructionCheckFailed("V [lambda]_a is not invertible".to_string())
        })?
        .neg();

    let mx_raw = Mat2::new(
        P::constant(u_prime.clone()),
        P::constant(v.clone()),
        P::constant(v.clone()),
        P::constant(u.neg()),
    );
    let pf_x = i_pow(order, ni + 1 + 2 * b);
    let mx = mx_raw.mul_monomial(ni, 0, &pf_x);

    let bmu1 = bmu(1);
    let my_raw = Mat2::new(
        a1.scale(&bmu1).add(&P::constant(mu1.clone())),
        P::monomial(0, -1, v_lam_a.mul(&bmu1)),
        y21_core.scale(&bmu1),
        P::constant(mu1.clone()).sub(&a2.scale(&bmu1)),
    );
    let pf_y = i_pow(order, mi + 2 * a);
    let my = my_raw.mul_monomial(mi, 0, &pf_y);

    let delta_scalar = i_pow(order, 2 * a * ni + ni * mi);
    let faithful = n % 2 == 1;
    let reason = if faithful {
        "n is odd, so the faithfulness criterion applies".to_string()
    } else {
        format!(
            "n = {} is even: M_Y^{} is already scalar, so the representation has kernel",
            n,
            n / 2
        )
    };
    Rep::finish(
        n,
        m,
        RepKind::Rho3,
        order,
        mx,
        my,
        delta_scalar,
        faithful,
        reason,
        Some(Rho3Constants {
            a,
            b,
            u,
            u_prime,
            v,
            lambda1,
            lambda2,
            mu1,
            mu2,
            a1,
            a2,
            lam_denom_inv,
            mu_denom_inv,
            v_lam_a,
            y21_core,
        }),
    )
}

impl Serialize for Rep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rep", 7)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("faithful", &self.faithful)?;
        s.serialize_field("mx", &self.mx)?;
        s.serialize_field("my", &self.my)?;
        s.end()
    }
}

/// Strategy registry: the representation families, selectable by name at
/// runtime (CLI flag --rep).
pub trait RepFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn build(&self, n: u32, m: u32) -> Result<Rep, RepError>;
}

struct Rho1Family;
struct Rho2Family;
struct Rho3Family;

impl RepFamily for Rho1Family {
    fn name(&self) -> &'static str {
        "rho1"
    }
    fn description(&self) -> &'static str {
        "m = 2, n odd; deformed dihedral form over Q(z_n)"
    }
    fn build(&self, n: u32, m: u32) -> Result<Rep, RepError> {
        if m != 2 {
            return Err(RepError::BadParameters(format!(
                "rho1 is defined for m = 2 only, got m = {}",
                m
            )));
        }
        build_rho1(n)
    }
}

impl RepFamily for Rho2Family {
    fn name(&self) -> &'static str {
        "rho2"
    }
    fn description(&self) -> &'static str {
        "any n, m >= 2; triangular family"
    }
    fn build(&self, n: u32, m: u32) -> Result<Rep, RepError> {
        build_rho2(n, m)
    }
}

impl RepFamily for Rho3Family {
    fn name(&self) -> &'static str {
        "rho3"
    }
    fn description(&self) -> &'static str {
        "gcd(n,m) = 1, 3 does not divide m; Burau-style family"
    }
    fn build(&self, n: u32, m: u32) -> Result<Rep, RepError> {
        build_rho3(n, m)
    }
}

pub static FAMILIES: [&dyn RepFamily; 3] = [&Rho1Family, &Rho2Family, &Rho3Family];

pub fn family(name: &str) -> Option<&'static dyn RepFamily> {
    FAMILIES.iter().copied().find(|f| f.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::parse_word;

    fn poly_eq(a: &P, b: &P) -> bool {
        a.sub(b).is_zero()
    }

    #[test]
    fn registry_resolves_names() {
        for name in ["rho1", "rho2", "rho3"] {
            let f = family(name).unwrap();
            assert_eq!(f.name(), name);
            assert!(!f.description().is_empty());
        }
        assert!(family("rho4").is_none());
        assert!(family("rho1").unwrap().build(5, 2).is_ok());
        assert!(family("rho1").unwrap().build(5, 4).is_err());
    }

    #[test]
    fn rho3_g12_exact_constants() {
        let rep = build_rho3(3, 4).unwrap();
        let c = rep.rho3.as_ref().unwrap();
        assert_eq!((c.a, c.b), (-1, -1));
        let z16 = zeta(rep.order, (rep.order / 16) as i64);
        // U = z16^10 + z16^14, U' = 0, V = -1, U^2 = -2.
        assert!(c.u.sub(&upow(&z16, 10).add(&upow(&z16, 14))).is_zero());
        assert!(c.u_prime.is_zero());
        assert!(c.v.add(&cnum(rep.order, 1)).is_zero());
        assert!(c.u.mul(&c.u).add(&cnum(rep.order, 2)).is_zero());
        // M_X = t^3 (0, 1; 1, U).
        assert!(rep.mx.a11.is_zero());
        assert!(poly_eq(&rep.mx.a12, &P::t_pow(3)));
        assert!(poly_eq(&rep.mx.a21, &P::t_pow(3)));
        assert!(poly_eq(&rep.mx.a22, &P::monomial(3, 0, c.u.clone())));
        // M_Y = t^4 (1 + q^{-1}U, -q^{-1}; -2q^{-1} + q + U, -q^{-1}U).
        let t4 = |p: &P| p.mul_monomial(4, 0, &cnum(rep.order, 1));
        let e11 = t4(&P::one().add(&P::monomial(0, -1, c.u.clone())));
        let e12 = t4(&P::monomial(0, -1, cnum(rep.order, -1)));
        let e21 = t4(&P::monomial(0, -1, cnum(rep.order, -2))
            .add(&P::q_pow(1))
            .add(&P::constant(c.u.clone())));
        let e22 = t4(&P::monomial(0, -1, c.u.neg()));
        assert!(poly_eq(&rep.my.a11, &e11));
        assert!(poly_eq(&rep.my.a12, &e12));
        assert!(poly_eq(&rep.my.a21, &e21));
        assert!(poly_eq(&rep.my.a22, &e22));
        // Central scalar (-1)^{an} i^{nm} = -1.
        assert!(rep.delta_scalar.add(&cnum(rep.order, 1)).is_zero());
        // Numeric anchor: U = -sqrt(-2) on the negative imaginary axis.
        let e = c.u.embed();
        assert!((e.re).abs() < 1e-12 && (e.im + 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rho3_g22_exact_constants() {
        let rep = build_rho3(3, 5).unwrap();
        let c = rep.rho3.as_ref().unwrap();
        assert_eq!((c.a, c.b), (2, 1));
        let z20 = zeta(rep.order, (rep.order / 20) as i64);
        let z5 = zeta(rep.order, (rep.order / 5) as i64);
        assert!(c.u.sub(&upow(&z20, 13).add(&upow(&z20, 17))).is_zero());
        // U' = -i.
        assert!(c.u_prime.add(&i_pow(rep.order, 1)).is_zero());
        assert!(c.v.sub(&upow(&z5, 2).add(&upow(&z5, 3))).is_zero());
        // [lambda]_2 = z20^9 + z20.
        assert!(c
            .bracket_lambda(2)
            .sub(&upow(&z20, 9).add(&z20))
            .is_zero());
    }

    #[test]
    fn bracket_identities() {
        for (n, m) in [(3u32, 4u32), (3, 5), (5, 4), (7, 4), (5, 2)] {
            let rep = build_rho3(n, m).unwrap();
            let c = rep.rho3.as_ref().unwrap();
            let (a, mi) = (c.a, m as i64);
            assert!(c.bracket_lambda(0).is_zero());
            assert!(c.bracket_lambda(1).is_one());
            assert!(c.bracket_lambda(-1).is_one());
            // [lambda]_m = 0 and [lambda]_{m -+ 1} = (-1)^{m+1} i^m.
            assert!(c.bracket_lambda(mi).is_zero());
            let target = i_pow(rep.order, mi + 2 * (mi + 1));
            assert!(c.bracket_lambda(mi - 1).sub(&target).is_zero());
            assert!(c.bracket_lambda(mi + 1).sub(&target).is_zero());
            // [lambda]_{-k} = (-1)^{k+1} [lambda]_k.
            for k in 1..=2 * mi {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                let lhs = c.bracket_lambda(-k);
                let rhs = c.bracket_lambda(k).mul(&cnum(rep.order, sign));
                assert!(lhs.sub(&rhs).is_zero(), "(n,m)=({},{}) k={}", n, m, k);
            }
            // [lambda]_a^2 - [lambda]_{a-1}[lambda]_{a+1} = (-1)^{a+1}.
            let lhs = c
                .bracket_lambda(a)
                .mul(&c.bracket_lambda(a))
                .sub(&c.bracket_lambda(a - 1).mul(&c.bracket_lambda(a + 1)));
            let rhs = cnum(rep.order, if a % 2 == 0 { -1 } else { 1 });
            assert!(lhs.sub(&rhs).is_zero());
            // [lambda]_a (lambda1 + lambda2) + [lambda]_{a-1} - [lambda]_{a+1} = 0.
            let lhs = c
                .bracket_lambda(a)
                .mul(&c.lambda1.add(&c.lambda2))
                .add(&c.bracket_lambda(a - 1))
                .sub(&c.bracket_lambda(a + 1));
            assert!(lhs.is_zero());
            // U'U + V^2 = 1 (re-asserted; the builder also checks it).
            assert!(c.u_prime.mul(&c.u).add(&c.v.mul(&c.v)).is_one());
        }
    }

    #[test]
    fn central_scalars() {
        // rho2(2,3): M_X^3 = -t^6 I = M_Y^2.
        let rep = build_rho2(2, 3).unwrap();
        let expected = Mat2::scalar(P::monomial(6, 0, cnum(rep.order, -1)));
        assert!(rep.mx.pow(3).unwrap().sub(&expected).is_zero());
        assert!(rep.my.pow(2).unwrap().sub(&expected).is_zero());
        // rho1(5): M_X^2 = t^10 I = M_Y^5.
        let rep = build_rho1(5).unwrap();
        let expected = Mat2::scalar(P::t_pow(10));
        assert!(rep.mx.pow(2).unwrap().sub(&expected).is_zero());
        assert!(rep.my.pow(5).unwrap().sub(&expected).is_zero());
    }

    #[test]
    fn closed_forms_match_repeated_multiplication() {
        let reps = [
            build_rho3(3, 4).unwrap(),
            build_rho2(3, 4).unwrap(),
            build_rho1(5).unwrap(),
        ];
        for rep in &reps {
            for letter in [Letter::X, Letter::Y] {
                for k in -4..=4i64 {
                    let closed = rep.closed_form_power(letter, k).unwrap();
                    let direct = rep.generator(letter).pow(k).unwrap();
                    assert!(
                        closed.sub(&direct).is_zero(),
                        "{} {:?} k={}",
                        rep.kind,
                        letter,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn encode_respects_the_relation() {
        let rep = build_rho3(3, 4).unwrap();
        let wx = parse_word("X^4", 3, 4).unwrap();
        let wy = parse_word("Y^3", 3, 4).unwrap();
        let wd = parse_word("D", 3, 4).unwrap();
        let ex = rep.encode(&wx).unwrap();
        assert!(ex.sub(&rep.encode(&wy).unwrap()).is_zero());
        assert!(ex.sub(&rep.encode(&wd).unwrap()).is_zero());
        assert!(ex.sub(&rep.delta_matrix()).is_zero());
        assert!(rep
            .encode(&parse_word("", 3, 4).unwrap())
            .unwrap()
            .is_identity());
        // Mixed big exponents still reduce through the cache.
        let w = parse_word("X^9 Y^7 D^2", 3, 4).unwrap();
        let direct = rep
            .mx
            .pow(9)
            .unwrap()
            .mul(&rep.my.pow(7).unwrap())
            .mul(&rep.delta_matrix().pow(2).unwrap());
        assert!(rep.encode(&w).unwrap().sub(&direct).is_zero());
        // Parameter mismatch is rejected.
        let other = parse_word("X", 3, 5).unwrap();
        assert!(matches!(
            rep.encode(&other),
            Err(RepError::ParameterMismatch { .. })
        ));
    }

    #[test]
    fn fund_conditions_pass_and_fail_as_predicted() {
        for rep in [
            build_rho3(3, 4).unwrap(),
            build_rho2(4, 6).unwrap(),
            build_rho1(7).unwrap(),
        ] {
            let report = rep.verify_fund().unwrap();
            assert!(report.all_pass(), "{}({},{})", rep.kind, rep.n, rep.m);
        }
        // Even n: the mu bracket dies at n/2, so condition 3 fails there.
        let rep = build_rho3(4, 5).unwrap();
        assert!(!rep.faithful);
        let report = rep.verify_fund().unwrap();
        assert!(report.conditions[0].pass);
        assert!(report.conditions[1].pass);
        let c3 = &report.conditions[2];
        assert!(!c3.pass);
        assert!(c3.failures.iter().any(|f| f.k == 2 && f.entry == "a21"));
    }

    #[test]
    fn even_n_gives_scalar_half_power() {
        let rep = build_rho3(4, 5).unwrap();
        let half = rep.my.pow(2).unwrap();
        assert!(half.as_scalar().is_some());
        let commutator = half.mul(&rep.mx).sub(&rep.mx.mul(&half));
        assert!(commutator.is_zero());
    }

    #[test]
    fn meridian_shapes() {
        for (n, m) in [(3u32, 4u32), (3, 5), (5, 2), (7, 4)] {
            let rep = build_rho3(n, m).unwrap();
            let mer = rep.meridian().unwrap();
            assert!(mer.a12.is_zero(), "({},{})", n, m);
        }
        // rho1 produces the transposed (upper-triangular) analogue.
        let rep = build_rho1(3).unwrap();
        let mer = rep.meridian().unwrap();
        assert!(mer.a21.is_zero());
        assert!(poly_eq(&mer.a11, &P::monomial(-1, -1, cnum(3, 1))));
        assert!(poly_eq(&mer.a22, &P::monomial(-1, 1, cnum(3, -1))));
        // rho2 has no meridian.
        assert!(matches!(
            build_rho2(3, 4).unwrap().meridian(),
            Err(RepError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn unitarity_both_parities() {
        // a = -1 odd: direct.
        assert!(build_rho3(3, 4).unwrap().unitarity_check().unwrap());
        // a = 2 even: after q -> iq.
        assert!(build_rho3(3, 5).unwrap().unitarity_check().unwrap());
        assert!(build_rho3(5, 4).unwrap().unitarity_check().unwrap());
        assert!(matches!(
            build_rho2(3, 4).unwrap().unitarity_check(),
            Err(RepError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn bar_swaps_the_a_constants() {
        // a odd: bar(A1) = A2 directly.
        let rep = build_rho3(3, 4).unwrap();
        let c = rep.rho3.as_ref().unwrap();
        let bar_a1 = c.a1.bar().conj_coeffs();
        assert!(bar_a1.sub(&c.a2).is_zero());
        // a even: the same after q -> iq on both sides.
        let rep = build_rho3(3, 5).unwrap();
        let c = rep.rho3.as_ref().unwrap();
        let iq = Subst::ScaleQ(i_pow(rep.order, 1));
        let a1p = c.a1.substitute(&iq);
        let a2p = c.a2.substitute(&iq);
        let bar_a1p = a1p.bar().conj_coeffs();
        assert!(bar_a1p.sub(&a2p).is_zero());
    }

    #[test]
    fn dihedral_braid_relation_small() {
        // The identification is a group identity of G(n,2), so every family
        // at m = 2 satisfies it.
        assert!(build_rho3(3, 2).unwrap().dihedral_braid_check().unwrap());
        assert!(build_rho1(3).unwrap().dihedral_braid_check().unwrap());
        assert!(build_rho2(3, 2).unwrap().dihedral_braid_check().unwrap());
        assert!(matches!(
            build_rho3(3, 4).unwrap().dihedral_braid_check(),
            Err(RepError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn builder_rejections() {
        assert!(matches!(build_rho1(4), Err(RepError::BadParameters(_))));
        assert!(matches!(build_rho1(1), Err(RepError::BadParameters(_))));
        assert!(matches!(build_rho2(1, 3), Err(RepError::BadParameters(_))));
        assert!(matches!(build_rho3(3, 6), Err(RepError::BadParameters(_))));
        assert!(matches!(build_rho3(4, 6), Err(RepError::BadParameters(_))));
        // n = 2 kills the mu bracket denominator.
        assert!(matches!(build_rho3(2, 5), Err(RepError::BadParameters(_))));
    }

    #[test]
    fn rep_serialization_shape() {
        let rep = build_rho3(3, 4).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with(r#"{"kind":"rho3","n":3,"m":4,"order":48,"faithful":true"#));
        assert!(json.contains(r#""mx":"#) && json.contains(r#""my":"#));
    }
}
