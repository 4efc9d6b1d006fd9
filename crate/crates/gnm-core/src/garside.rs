//! The Garside monoid M(n,m) = <X, Y | X^m = Y^n>.
//!
//! The central element D = X^m = Y^n makes every element uniquely expressible
//! as D^k times an alternating product Y^{n_1} X^{m_1} ... Y^{n_k} X^{m_k}
//! with interior exponents strictly between 0 and the relation bounds. This
//! module parses words, computes that canonical form by confluent rewriting,
//! reads off the length statistics the decoder predicts from matrices, and
//! generates reproducible random words for the property harnesses.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error("syntax error at byte {0}: {1}")]
    SyntaxError(usize, String),
    #[error("exponent at byte {0} must be a positive integer")]
    NonPositiveExponent(usize),
    #[error("parameters must satisfy n >= 2 and m >= 2, got n={0}, m={1}")]
    BadParameters(u32, u32),
    #[error("Garside length and n_q are defined only for elements with no Delta factor")]
    DeltaDivisible,
    #[error("boundary letters of the empty word are undefined")]
    EmptyWord,
}

/// Letters of the ambient alphabet; D stands for Delta = X^m = Y^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    X,
    Y,
    D,
}

/// Letters that can appear in the Delta-free part of a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidWord {
    pub n: u32,
    pub m: u32,
    /// Run-length encoding; adjacent runs never share a letter and every
    /// exponent is at least 1.
    pub syllables: Vec<(Gen, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub n: u32,
    pub m: u32,
    pub delta_exp: u32,
    /// Alternating letters, exponents within 1..=n-1 (Y) and 1..=m-1 (X).
    pub syllables: Vec<(Letter, u32)>,
}

/// The three length statistics of a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lengths {
    /// Number of simple factors of the Delta-free part.
    pub garside: i64,
    /// Mn + Nm over all letter occurrences, Delta contributing nm.
    pub weighted: i64,
    /// Predicted maximal q-degree of the representing matrix.
    pub n_q: i64,
}

fn check_params(n: u32, m: u32) -> Result<(), GarsideError> {
    if n < 2 || m < 2 {
        return Err(GarsideError::BadParameters(n, m));
    }
    Ok(())
}

/// Parse the word grammar: word := eps | term (space* term)*;
/// term := ("X"|"Y"|"D") ("^" positive-integer)?. Adjacent equal letters merge.
pub fn parse_word(text: &str, n: u32, m: u32) -> Result<MonoidWord, GarsideError> {
    check_params(n, m)?;
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut syllables: Vec<(Gen, u32)> = Vec::new();
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let letter = match bytes[i] {
            b'X' => Gen::X,
            b'Y' => Gen::Y,
            b'D' => Gen::D,
            c => {
                return Err(GarsideError::SyntaxError(
                    i,
                    format!("expected X, Y or D, found {:?}", c as char),
                ))
            }
        };
        i += 1;
        let mut exp: u32 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let exp_start = i + 1;
            i += 1;
            let mut digits_end = i;
            while digits_end < bytes.len() && bytes[digits_end].is_ascii_digit() {
                digits_end += 1;
            }
            if digits_end == i {
                return Err(GarsideError::SyntaxError(
                    exp_start,
                    "expected digits after '^'".to_string(),
                ));
            }
            let parsed: u64 = text[i..digits_end]
                .parse()
                .map_err(|_| GarsideError::SyntaxError(exp_start, "exponent too large".into()))?;
            if parsed == 0 {
                return Err(GarsideError::NonPositiveExponent(exp_start));
            }
            if parsed > u32::MAX as u64 {
                return Err(GarsideError::SyntaxError(
                    exp_start,
                    "exponent too large".to_string(),
                ));
            }
            exp = parsed as u32;
            i = digits_end;
        }
        match syllables.last_mut() {
            Some((last, e)) if *last == letter => *e += exp,
            _ => syllables.push((letter, exp)),
        }
    }
    Ok(MonoidWord { n, m, syllables })
}

impl MonoidWord {
    pub fn empty(n: u32, m: u32) -> Self {
        MonoidWord {
            n,
            m,
            syllables: Vec::new(),
        }
    }

    /// Mn + Nm with each D worth nm.
    pub fn weighted_length(&self) -> i64 {
        let (n, m) = (self.n as i64, self.m as i64);
        self.syllables
            .iter()
            .map(|&(g, e)| {
                let w = match g {
                    Gen::X => n,
                    Gen::Y => m,
                    Gen::D => n * m,
                };
                w * e as i64
            })
            .sum()
    }

    /// Concatenate, merging at the seam.
    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut syllables = self.syllables.clone();
        for &(g, e) in &other.syllables {
            match syllables.last_mut() {
                Some((last, le)) if *last == g => *le += e,
                _ => syllables.push((g, e)),
            }
        }
        MonoidWord {
            n: self.n,
            m: self.m,
            syllables,
        }
    }
}

/// Rewrite to the canonical form: merge runs, extract full D powers from
/// every run, hoist D to the front, repeat to fixpoint.
pub fn normalize(w: &MonoidWord) -> NormalForm {
    let (n, m) = (w.n, w.m);
    let mut delta: u64 = 0;
    let mut runs: Vec<(Letter, u64)> = Vec::new();
    for &(g, e) in &w.syllables {
        match g {
            Gen::D => delta += e as u64,
            Gen::X => push_run(&mut runs, Letter::X, e as u64),
            Gen::Y => push_run(&mut runs, Letter::Y, e as u64),
        }
    }
    loop {
        let mut changed = false;
        let mut next: Vec<(Letter, u64)> = Vec::with_capacity(runs.len());
        for &(letter, exp) in &runs {
            let bound = match letter {
                Letter::X => m as u64,
                Letter::Y => n as u64,
            };
            let mut exp = exp;
            if exp >= bound {
                delta += exp / bound;
                exp %= bound;
                changed = true;
            }
            if exp > 0 {
                let merged = matches!(next.last(), Some(&(l, _)) if l == letter);
                if merged {
                    changed = true;
                }
                push_run(&mut next, letter, exp);
            }
        }
        runs = next;
        if !changed {
            break;
        }
    }
    NormalForm {
        n,
        m,
        delta_exp: delta as u32,
        syllables: runs.into_iter().map(|(l, e)| (l, e as u32)).collect(),
    }
}

fn push_run(runs: &mut Vec<(Letter, u64)>, letter: Letter, exp: u64) {
    match runs.last_mut() {
        Some((last, e)) if *last == letter => *e += exp,
        _ => runs.push((letter, exp)),
    }
}

impl NormalForm {
    pub fn identity(n: u32, m: u32) -> Self {
        NormalForm {
            n,
            m,
            delta_exp: 0,
            syllables: Vec::new(),
        }
    }

    /// The alternating-block decomposition (n_i, m_i), i = 1..k, with a
    /// possibly-zero leading Y exponent and trailing X exponent.
    pub fn blocks(&self) -> Vec<(u32, u32)> {
        let mut blocks: Vec<(u32, u32)> = Vec::new();
        let mut open: Option<u32> = None; // pending Y exponent awaiting its X
        for &(letter, exp) in &self.syllables {
            match letter {
                Letter::Y => {
                    if let Some(ny) = open.take() {
                        blocks.push((ny, 0));
                    }
                    open = Some(exp);
                }
                Letter::X => {
                    let ny = open.take().unwrap_or(0);
                    blocks.push((ny, exp));
                }
            }
        }
        if let Some(ny) = open {
            blocks.push((ny, 0));
        }
        blocks
    }

    pub fn weighted_length(&self) -> i64 {
        let (n, m) = (self.n as i64, self.m as i64);
        let letters: i64 = self
            .syllables
            .iter()
            .map(|&(l, e)| {
                e as i64
                    * match l {
                        Letter::X => n,
                        Letter::Y => m,
                    }
            })
            .sum();
        letters + self.delta_exp as i64 * n * m
    }

    /// Garside length, weighted length and the q-degree statistic; the first
    /// and last are defined only on the Delta-free fragment.
    pub fn lengths(&self) -> Result<Lengths, GarsideError> {
        if self.delta_exp > 0 {
            return Err(GarsideError::DeltaDivisible);
        }
        let weighted = self.weighted_length();
        if self.syllables.is_empty() {
            return Ok(Lengths {
                garside: 0,
                weighted,
                n_q: 0,
            });
        }
        let blocks = self.blocks();
        let k = blocks.len() as i64;
        let n1_nonzero = blocks[0].0 != 0;
        let mk_nonzero = blocks[blocks.len() - 1].1 != 0;
        Ok(Lengths {
            garside: 2 * (k - 1) + n1_nonzero as i64 + mk_nonzero as i64,
            weighted,
            n_q: (k - 1) + n1_nonzero as i64,
        })
    }

    /// First and last letters of the canonical word of the Delta-free part.
    pub fn boundary_letters(&self) -> Result<(Letter, Letter), GarsideError> {
        let first = self.syllables.first().ok_or(GarsideError::EmptyWord)?.0;
        let last = self.syllables.last().unwrap().0;
        Ok((first, last))
    }

    /// Spell back into a word: D^delta followed by the syllables.
    pub fn to_word(&self) -> MonoidWord {
        let mut syllables: Vec<(Gen, u32)> = Vec::new();
        if self.delta_exp > 0 {
            syllables.push((Gen::D, self.delta_exp));
        }
        for &(l, e) in &self.syllables {
            let g = match l {
                Letter::X => Gen::X,
                Letter::Y => Gen::Y,
            };
            syllables.push((g, e));
        }
        MonoidWord {
            n: self.n,
            m: self.m,
            syllables,
        }
    }

    /// True when every structural invariant of the canonical form holds.
    pub fn invariants_hold(&self) -> bool {
        let mut prev: Option<Letter> = None;
        for &(l, e) in &self.syllables {
            if prev == Some(l) || e == 0 {
                return false;
            }
            let bound = match l {
                Letter::X => self.m,
                Letter::Y => self.n,
            };
            if e >= bound {
                return false;
            }
            prev = Some(l);
        }
        true
    }
}

/// Reproducible random word: random letter runs capped by weighted length,
/// then `delta_insertions` D letters spliced at random positions.
pub fn random_word(
    n: u32,
    m: u32,
    max_weighted_length: i64,
    delta_insertions: u32,
    seed: u64,
) -> MonoidWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut syllables: Vec<(Gen, u32)> = Vec::new();
    let mut weight = 0i64;
    loop {
        let letter = if rng.gen_bool(0.5) { Gen::X } else { Gen::Y };
        // Allow exponents that reach the relation bound so normalization has
        // real Delta extractions to perform.
        let (unit, cap) = match letter {
            Gen::X => (n as i64, m),
            _ => (m as i64, n),
        };
        let exp = rng.gen_range(1..=cap);
        if weight + unit * exp as i64 > max_weighted_length {
            break;
        }
        weight += unit * exp as i64;
        match syllables.last_mut() {
            Some((last, e)) if *last == letter => *e += exp,
            _ => syllables.push((letter, exp)),
        }
    }
    for _ in 0..delta_insertions {
        let pos = rng.gen_range(0..=syllables.len());
        syllables.insert(pos, (Gen::D, 1));
    }
    // Re-merge around the inserted D letters.
    let mut merged: Vec<(Gen, u32)> = Vec::with_capacity(syllables.len());
    for (g, e) in syllables {
        match merged.last_mut() {
            Some((last, le)) if *last == g => *le += e,
            _ => merged.push((g, e)),
        }
    }
    MonoidWord {
        n,
        m,
        syllables: merged,
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, e) in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let c = match g {
                Gen::X => 'X',
                Gen::Y => 'Y',
                Gen::D => 'D',
            };
            if e == 1 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}^{}", c, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word(), f)
    }
}

/// Wire shape: {"delta": k, "syllables": [["Y",1],["X",2],...]}.
#[derive(Serialize, Deserialize)]
struct NormalFormDoc {
    delta: u32,
    syllables: Vec<(Letter, u32)>,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NormalFormDoc {
            delta: self.delta_exp,
            syllables: self.syllables.clone(),
        }
        .serialize(serializer)
    }
}

impl NormalForm {
    /// Rebuild from the wire shape; the parameters travel out of band.
    pub fn from_json(json: &str, n: u32, m: u32) -> Result<Self, String> {
        let doc: NormalFormDoc = serde_json::from_str(json).map_err(|e| e.to_string())?;
        let nf = NormalForm {
            n,
            m,
            delta_exp: doc.delta,
            syllables: doc.syllables,
        };
        if !nf.invariants_hold() {
            return Err("syllables violate the canonical-form bounds".to_string());
        }
        Ok(nf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(text: &str, n: u32, m: u32) -> NormalForm {
        normalize(&parse_word(text, n, m).unwrap())
    }

    #[test]
    fn parsing_grammar() {
        let w = parse_word("X^3 Y^2 X", 3, 4).unwrap();
        assert_eq!(
            w.syllables,
            vec![(Gen::X, 3), (Gen::Y, 2), (Gen::X, 1)]
        );
        assert_eq!(parse_word("", 3, 4).unwrap().syllables, vec![]);
        // Adjacent equal letters merge at parse time.
        assert_eq!(
            parse_word("X X^2", 3, 4).unwrap().syllables,
            vec![(Gen::X, 3)]
        );
        assert_eq!(
            parse_word("D^2Y", 3, 4).unwrap().syllables,
            vec![(Gen::D, 2), (Gen::Y, 1)]
        );
        assert!(matches!(
            parse_word("X^0", 3, 4),
            Err(GarsideError::NonPositiveExponent(2))
        ));
        assert!(matches!(
            parse_word("Z", 3, 4),
            Err(GarsideError::SyntaxError(0, _))
        ));
        assert!(matches!(
            parse_word("X^", 3, 4),
            Err(GarsideError::SyntaxError(2, _))
        ));
        assert!(matches!(
            parse_word("X ^2", 3, 4),
            Err(GarsideError::SyntaxError(2, _))
        ));
        assert!(matches!(
            parse_word("X", 1, 4),
            Err(GarsideError::BadParameters(1, 4))
        ));
    }

    #[test]
    fn normalization_examples() {
        let a = nf("X^4", 3, 4);
        assert_eq!(a.delta_exp, 1);
        assert!(a.syllables.is_empty());

        let b = nf("Y X^5 Y^2", 3, 4);
        assert_eq!(b.delta_exp, 1);
        assert_eq!(
            b.syllables,
            vec![(Letter::Y, 1), (Letter::X, 1), (Letter::Y, 2)]
        );

        let c = nf("X^2 X^3", 3, 4);
        assert_eq!(c.delta_exp, 1);
        assert_eq!(c.syllables, vec![(Letter::X, 1)]);

        let e = nf("", 3, 4);
        assert_eq!(e, NormalForm::identity(3, 4));

        // Cascading: Y^2 X^4 Y -> Y^2 D Y -> D Y^3 -> D^2.
        let d = nf("Y^2 X^4 Y", 3, 4);
        assert_eq!(d.delta_exp, 2);
        assert!(d.syllables.is_empty());
    }

    #[test]
    fn length_statistics() {
        let a = nf("X Y", 3, 4);
        let la = a.lengths().unwrap();
        assert_eq!(la.garside, 2);
        assert_eq!(la.weighted, 7);
        assert_eq!(la.n_q, 1);

        let b = nf("Y^2 X^3 Y", 3, 4);
        let lb = b.lengths().unwrap();
        assert_eq!(lb.garside, 3);
        assert_eq!(lb.weighted, 2 * 4 + 3 * 3 + 4);
        assert_eq!(lb.n_q, 2);

        let e = NormalForm::identity(3, 4).lengths().unwrap();
        assert_eq!((e.garside, e.weighted, e.n_q), (0, 0, 0));

        assert_eq!(
            nf("X^4", 3, 4).lengths().unwrap_err(),
            GarsideError::DeltaDivisible
        );
        assert_eq!(nf("X^4", 3, 4).weighted_length(), 12);
    }

    #[test]
    fn block_decomposition() {
        // X Y at (3,4): blocks (0,1),(1,0).
        assert_eq!(nf("X Y", 3, 4).blocks(), vec![(0, 1), (1, 0)]);
        assert_eq!(nf("Y^2 X^3 Y", 3, 4).blocks(), vec![(2, 3), (1, 0)]);
        assert_eq!(nf("Y X^2", 3, 4).blocks(), vec![(1, 2)]);
        assert_eq!(nf("X^2", 3, 4).blocks(), vec![(0, 2)]);
    }

    #[test]
    fn boundary_letter_examples() {
        assert_eq!(
            nf("Y X", 3, 4).boundary_letters().unwrap(),
            (Letter::Y, Letter::X)
        );
        assert_eq!(
            nf("X^2", 3, 4).boundary_letters().unwrap(),
            (Letter::X, Letter::X)
        );
        assert_eq!(
            nf("X Y^2", 3, 4).boundary_letters().unwrap(),
            (Letter::X, Letter::Y)
        );
        assert_eq!(
            NormalForm::identity(3, 4).boundary_letters().unwrap_err(),
            GarsideError::EmptyWord
        );
    }

    #[test]
    fn rewriting_is_confluent() {
        // Replacing X^m by Y^n (or back) anywhere must not change the normal
        // form. 1000 trials across two parameter pairs.
        for &(n, m) in &[(3u32, 4u32), (5, 2)] {
            let mut hits = 0;
            for seed in 0..2000u64 {
                if hits >= 500 {
                    break;
                }
                let w = random_word(n, m, 60, 1, seed);
                let base = normalize(&w);
                // Find a run that contains a full relation word.
                let mut rewritten = None;
                for (idx, &(g, e)) in w.syllables.iter().enumerate() {
                    let (bound, replacement, other) = match g {
                        Gen::X => (m, Gen::Y, n),
                        Gen::Y => (n, Gen::X, m),
                        Gen::D => continue,
                    };
                    if e >= bound {
                        let mut syl = w.syllables.clone();
                        syl[idx].1 = e - bound;
                        let mut insert_at = idx + 1;
                        if syl[idx].1 == 0 {
                            syl.remove(idx);
                            insert_at = idx;
                        }
                        syl.insert(insert_at, (replacement, other));
                        rewritten = Some(MonoidWord {
                            n,
                            m,
                            syllables: syl,
                        });
                        break;
                    }
                }
                if let Some(rw) = rewritten {
                    hits += 1;
                    assert_eq!(normalize(&rw), base, "seed {} pair ({},{})", seed, n, m);
                }
            }
            assert!(hits >= 500, "not enough admissible rewrites for ({},{})", n, m);
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        for seed in 0..300u64 {
            let w = random_word(3, 4, 80, seed as u32 % 3, seed);
            let first = normalize(&w);
            assert!(first.invariants_hold());
            let again = normalize(&first.to_word());
            assert_eq!(first, again);
        }
    }

    #[test]
    fn weighted_length_is_relation_invariant() {
        for seed in 0..300u64 {
            let w = random_word(5, 4, 90, seed as u32 % 3, seed);
            assert_eq!(normalize(&w).weighted_length(), w.weighted_length());
        }
    }

    #[test]
    fn random_words_are_reproducible_and_cover_delta_cases() {
        assert_eq!(random_word(3, 4, 50, 1, 1), random_word(3, 4, 50, 1, 1));
        let mut with_delta = 0;
        let mut without_delta = 0;
        for seed in 0..100u64 {
            let w = random_word(3, 4, 25, 0, seed);
            assert!(w.weighted_length() <= 25);
            if normalize(&w).delta_exp > 0 {
                with_delta += 1;
            } else {
                without_delta += 1;
            }
        }
        assert!(with_delta > 0 && without_delta > 0);
    }

    #[test]
    fn serialization_shape() {
        let a = nf("X^5", 3, 4);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"delta":1,"syllables":[["X",1]]}"#
        );
        let e = NormalForm::identity(3, 4);
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"delta":0,"syllables":[]}"#
        );
        let b = nf("Y X^5 Y^2", 3, 4);
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"delta":1,"syllables":[["Y",1],["X",1],["Y",2]]}"#
        );
        let back = NormalForm::from_json(r#"{"delta":1,"syllables":[["Y",1],["X",1],["Y",2]]}"#, 3, 4)
            .unwrap();
        assert_eq!(back, b);
        assert!(NormalForm::from_json(r#"{"delta":0,"syllables":[["X",9]]}"#, 3, 4).is_err());
    }

    #[test]
    fn display_roundtrips_through_parser() {
        for seed in 0..50u64 {
            let w = random_word(4, 5, 60, seed as u32 % 3, seed);
            let text = w.to_string();
            let reparsed = parse_word(&text, 4, 5).unwrap();
            assert_eq!(normalize(&reparsed), normalize(&w));
        }
    }
}
