//! gnm: reproducible command-line front end for the G(n,m) toolkit.
//!
//! Every subcommand is deterministic given its flags and seed, and emits a
//! single JSON document on stdout (or a human rendering with --format text).
//! Exit codes: 0 success, 1 property failure, 2 parse or parameter error,
//! 3 decode error, 4 enumeration cap exceeded.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gnm_core::decoder::{decode_with, StripContext};
use gnm_core::hecke::{
    group_closure, hecke_specialize, quadratic_check, toric_specialize, ClosureResult, HeckeError,
    SpecializationRule,
};
use gnm_core::laurent::Subst;
use gnm_core::reps::{family, FundReport, RepFamily};
use gnm_core::{
    normalize, parse_word, random_word, CycNum, DecodeError, Letter, LPoly, Mat2, NormalForm, Rep,
};

type M = Mat2<CycNum>;
type P = LPoly<CycNum>;

const EXIT_PROPERTY: u8 = 1;
const EXIT_PARAM: u8 = 2;
const EXIT_DECODE: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(
    name = "gnm",
    version,
    about = "Exact computations in the groups G(n,m) = <X, Y | X^m = Y^n>"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Params {
    /// The exponent of Y in the defining relation X^m = Y^n.
    #[arg(long)]
    n: u32,
    /// The exponent of X in the defining relation X^m = Y^n.
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct FormatArg {
    /// Output format: a JSON document or a human rendering of it.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Garside normal form of a word in X, Y, D (D = X^m = Y^n).
    Nf {
        #[command(flatten)]
        params: Params,
        /// Word such as "Y X^2", "D^2 X"; empty for the identity.
        word: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Matrix image of a word under a representation, as a JSON document.
    Encode {
        /// Representation family: rho1, rho2 or rho3.
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        params: Params,
        /// Apply the one-variable specialization (only "t=q" is defined).
        #[arg(long, value_name = "RULE")]
        specialize: Option<String>,
        word: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Normal form recovered from a matrix document (file or stdin).
    Decode {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        params: Params,
        /// Interpret the matrix in the one-variable specialization "t=q".
        #[arg(long, value_name = "RULE")]
        specialize: Option<String>,
        /// Path of the matrix JSON; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check the faithfulness conditions of a representation.
    Verify {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Batch decode(encode(w)) = normalize(w) over seeded random words.
    Roundtrip {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        params: Params,
        /// Number of random words.
        #[arg(long, default_value_t = 100)]
        count: u32,
        /// Base seed; defaults to the GB_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on the weighted length of each random word.
        #[arg(long, default_value_t = 120)]
        max_weight: i64,
        /// Also run every case through the "t=q" specialization.
        #[arg(long, value_name = "RULE")]
        specialize: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Hecke specialization of rho3: rescaling rule, meridian, quadratic relation.
    Hecke {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Order of the finite matrix group generated by the toric specialization.
    Closure {
        #[command(flatten)]
        params: Params,
        /// Evaluate all variables away (t = 1 and q = 1 or i by parity).
        #[arg(long)]
        toric: bool,
        /// Abort once this many distinct elements have been found.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check transpose(bar M) J M = J for both generators of rho3.
    Unitary {
        #[arg(long, default_value = "rho3")]
        rep: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compare closed-form generator powers against repeated multiplication.
    Powers {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        params: Params,
        /// Check k in [-range, range]; defaults to n + m.
        #[arg(long)]
        range: Option<i64>,
        #[command(flatten)]
        format: FormatArg,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn param(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARAM,
            message: message.into(),
        }
    }

    fn property(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PROPERTY,
            message: message.into(),
        }
    }
}

fn decode_failure(e: &DecodeError) -> Failure {
    let name = match e {
        DecodeError::PatternInvalid(_) => "PatternInvalid",
        DecodeError::DeltaResidue(_) => "DeltaResidue",
        DecodeError::NonTermination(_) => "NonTermination",
        DecodeError::NotInvertible => "NotInvertible",
    };
    Failure {
        code: EXIT_DECODE,
        message: format!("{}: {}", name, e),
    }
}

fn build_rep(kind: &str, n: u32, m: u32) -> Result<Rep, Failure> {
    let fam: &dyn RepFamily = family(kind).ok_or_else(|| {
        Failure::param(format!(
            "unknown representation kind {:?}; expected rho1, rho2 or rho3",
            kind
        ))
    })?;
    fam.build(n, m).map_err(|e| Failure::param(e.to_string()))
}

/// Only "t=q" is a valid specialization rule; None means stay generic.
fn want_specialized(rule: &Option<String>) -> Result<bool, Failure> {
    match rule.as_deref() {
        None => Ok(false),
        Some("t=q") => Ok(true),
        Some(other) => Err(Failure::param(format!(
            "unknown specialization {:?}; only \"t=q\" is defined",
            other
        ))),
    }
}

fn base_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("GB_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| Failure::param(format!("GB_SEED is not an unsigned integer: {:?}", text))),
        Err(_) => Ok(0),
    }
}

fn emit<T: Serialize>(doc: &T, format: Format, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(doc).expect("documents serialize")
        ),
        Format::Text => println!("{}", text()),
    }
}

fn nf_text(nf: &NormalForm) -> String {
    let s = nf.to_string();
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

fn cmd_nf(params: Params, word: &str, format: Format) -> Result<u8, Failure> {
    let w = parse_word(word, params.n, params.m).map_err(|e| Failure::param(e.to_string()))?;
    let nf = normalize(&w);
    emit(&nf, format, || nf_text(&nf));
    Ok(0)
}

fn cmd_encode(
    kind: &str,
    params: Params,
    specialize: &Option<String>,
    word: &str,
    format: Format,
) -> Result<u8, Failure> {
    let specialized = want_specialized(specialize)?;
    let rep = build_rep(kind, params.n, params.m)?;
    let w = parse_word(word, params.n, params.m).map_err(|e| Failure::param(e.to_string()))?;
    let mut img = rep.encode(&w).map_err(|e| Failure::param(e.to_string()))?;
    if specialized {
        img = img.substitute(&Subst::TToQ);
    }
    emit(&img, format, || img.to_string());
    Ok(0)
}

fn cmd_decode(
    kind: &str,
    params: Params,
    specialize: &Option<String>,
    input: &Option<PathBuf>,
    format: Format,
) -> Result<u8, Failure> {
    let specialized = want_specialized(specialize)?;
    let rep = build_rep(kind, params.n, params.m)?;
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::param(format!("cannot read {}: {}", path.display(), e)))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::param(format!("cannot read stdin: {}", e)))?;
            buf
        }
    };
    let matrix: M = serde_json::from_str(&text)
        .map_err(|e| Failure::param(format!("matrix document does not parse: {}", e)))?;
    let ctx = if specialized {
        StripContext::specialized(&rep)
    } else {
        StripContext::generic(&rep)
    };
    let nf = decode_with(&ctx, &matrix).map_err(|e| decode_failure(&e))?;
    emit(&nf, format, || nf_text(&nf));
    Ok(0)
}

fn fund_report_text(report: &FundReport) -> String {
    let mut lines = Vec::new();
    for c in &report.conditions {
        lines.push(format!(
            "condition {} ({}): {}",
            c.id,
            c.description,
            if c.pass { "pass" } else { "fail" }
        ));
        for f in &c.failures {
            lines.push(format!("  k = {}, entry {}: {}", f.k, f.entry, f.reason));
        }
    }
    lines.join("\n")
}

fn cmd_verify(kind: &str, params: Params, format: Format) -> Result<u8, Failure> {
    let rep = build_rep(kind, params.n, params.m)?;
    let report = rep.verify_fund().map_err(|e| Failure::param(e.to_string()))?;
    let all = report.all_pass();
    emit(&report, format, || fund_report_text(&report));
    Ok(if all { 0 } else { EXIT_PROPERTY })
}

#[derive(Serialize)]
struct RoundtripReport {
    rep: String,
    n: u32,
    m: u32,
    count: u32,
    seed: u64,
    specialized: bool,
    matches: u32,
    mismatches: Vec<u32>,
}

fn cmd_roundtrip(
    kind: &str,
    params: Params,
    count: u32,
    seed_flag: Option<u64>,
    max_weight: i64,
    specialize: &Option<String>,
    format: Format,
) -> Result<u8, Failure> {
    let specialized = want_specialized(specialize)?;
    let rep = build_rep(kind, params.n, params.m)?;
    let seed = base_seed(seed_flag)?;
    let ctx = if specialized {
        StripContext::specialized(&rep)
    } else {
        StripContext::generic(&rep)
    };
    let mut mismatches = Vec::new();
    for case in 0..count {
        let case_seed = seed.wrapping_add(case as u64);
        let w = random_word(
            params.n,
            params.m,
            max_weight,
            (case_seed % 3) as u32,
            case_seed,
        );
        let expected = normalize(&w);
        let mut img = rep.encode(&w).map_err(|e| Failure::param(e.to_string()))?;
        if specialized {
            img = img.substitute(&Subst::TToQ);
        }
        if decode_with(&ctx, &img).as_ref() != Ok(&expected) {
            mismatches.push(case);
        }
    }
    let report = RoundtripReport {
        rep: kind.to_string(),
        n: params.n,
        m: params.m,
        count,
        seed,
        specialized,
        matches: count - mismatches.len() as u32,
        mismatches,
    };
    let ok = report.mismatches.is_empty();
    emit(&report, format, || {
        format!(
            "{}/{} matches ({} n={} m={} seed={}{})",
            report.matches,
            report.count,
            report.rep,
            report.n,
            report.m,
            report.seed,
            if report.specialized { " t=q" } else { "" }
        )
    });
    Ok(if ok { 0 } else { EXIT_PROPERTY })
}

#[derive(Serialize)]
struct HeckeReport {
    n: u32,
    m: u32,
    rule: SpecializationRule,
    quadratic: bool,
    meridian: M,
}

fn hecke_failure(e: HeckeError) -> Failure {
    match e {
        HeckeError::Unsupported(_) | HeckeError::Rep(_) => Failure::param(e.to_string()),
        _ => Failure::property(e.to_string()),
    }
}

fn cmd_hecke(params: Params, format: Format) -> Result<u8, Failure> {
    let rep = build_rep("rho3", params.n, params.m)?;
    let h = hecke_specialize(&rep).map_err(hecke_failure)?;
    let quadratic = quadratic_check(&h.meridian, &P::q_pow(1));
    let report = HeckeReport {
        n: params.n,
        m: params.m,
        rule: h.rule,
        quadratic,
        meridian: h.meridian,
    };
    emit(&report, format, || {
        format!(
            "rule: q_factor={} t_sign={} collapse t=q\nquadratic relation: {}\nmeridian:\n{}",
            match report.rule.q_factor {
                gnm_core::hecke::QFactor::One => "1",
                gnm_core::hecke::QFactor::I => "i",
            },
            report.rule.t_sign,
            if report.quadratic { "pass" } else { "fail" },
            report.meridian
        )
    });
    Ok(if quadratic { 0 } else { EXIT_PROPERTY })
}

fn cmd_closure(params: Params, toric: bool, cap: usize, format: Format) -> Result<u8, Failure> {
    if !toric {
        return Err(Failure::param(
            "pass --toric to enumerate the constant specialization",
        ));
    }
    let rep = build_rep("rho3", params.n, params.m)?;
    let t = toric_specialize(&rep).map_err(hecke_failure)?;
    let result = group_closure(&[t.mx, t.my], cap).map_err(hecke_failure)?;
    emit(&result, format, || match result {
        ClosureResult::Order(k) => format!("order {}", k),
        ClosureResult::CapExceeded(c) => format!("more than {} elements", c),
    });
    Ok(match result {
        ClosureResult::Order(_) => 0,
        ClosureResult::CapExceeded(_) => EXIT_CAP,
    })
}

#[derive(Serialize)]
struct UnitaryReport {
    rep: String,
    n: u32,
    m: u32,
    unitary: bool,
}

fn cmd_unitary(kind: &str, params: Params, format: Format) -> Result<u8, Failure> {
    let rep = build_rep(kind, params.n, params.m)?;
    let unitary = rep
        .unitarity_check()
        .map_err(|e| Failure::param(e.to_string()))?;
    let report = UnitaryReport {
        rep: kind.to_string(),
        n: params.n,
        m: params.m,
        unitary,
    };
    emit(&report, format, || {
        format!("unitary: {}", if unitary { "pass" } else { "fail" })
    });
    Ok(if unitary { 0 } else { EXIT_PROPERTY })
}

#[derive(Serialize)]
struct PowersReport {
    rep: String,
    n: u32,
    m: u32,
    range: i64,
    checked: u32,
    mismatches: Vec<String>,
}

fn cmd_powers(kind: &str, params: Params, range: Option<i64>, format: Format) -> Result<u8, Failure> {
    let rep = build_rep(kind, params.n, params.m)?;
    let range = range.unwrap_or((params.n + params.m) as i64).abs();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for letter in [Letter::X, Letter::Y] {
        for k in -range..=range {
            let closed = rep
                .closed_form_power(letter, k)
                .map_err(|e| Failure::param(e.to_string()))?;
            let brute = rep
                .generator(letter)
                .pow(k)
                .map_err(|e| Failure::param(e.to_string()))?;
            checked += 1;
            if !closed.sub(&brute).is_zero() {
                mismatches.push(format!("{}^{}", letter.symbol(), k));
            }
        }
    }
    let report = PowersReport {
        rep: kind.to_string(),
        n: params.n,
        m: params.m,
        range,
        checked,
        mismatches,
    };
    let ok = report.mismatches.is_empty();
    emit(&report, format, || {
        format!(
            "{} powers checked in [-{}, {}]: {}",
            report.checked,
            report.range,
            report.range,
            if ok { "all match" } else { "MISMATCH" }
        )
    });
    Ok(if ok { 0 } else { EXIT_PROPERTY })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Nf {
            params,
            word,
            format,
        } => cmd_nf(params, &word, format.format),
        Cmd::Encode {
            rep,
            params,
            specialize,
            word,
            format,
        } => cmd_encode(&rep, params, &specialize, &word, format.format),
        Cmd::Decode {
            rep,
            params,
            specialize,
            input,
            format,
        } => cmd_decode(&rep, params, &specialize, &input, format.format),
        Cmd::Verify {
            rep,
            params,
            format,
        } => cmd_verify(&rep, params, format.format),
        Cmd::Roundtrip {
            rep,
            params,
            count,
            seed,
            max_weight,
            specialize,
            format,
        } => cmd_roundtrip(
            &rep,
            params,
            count,
            seed,
            max_weight,
            &specialize,
            format.format,
        ),
        Cmd::Hecke { params, format } => cmd_hecke(params, format.format),
        Cmd::Closure {
            params,
            toric,
            cap,
            format,
        } => cmd_closure(params, toric, cap, format.format),
        Cmd::Unitary {
            rep,
            params,
            format,
        } => cmd_unitary(&rep, params, format.format),
        Cmd::Powers {
            rep,
            params,
            range,
            format,
        } => cmd_powers(&rep, params, range, format.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
