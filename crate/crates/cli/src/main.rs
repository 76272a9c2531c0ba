//! `ramapi`: π from Ramanujan-type series, singular moduli, and
//! verification of the closed-form corpus.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure (including a
//! failed self-check or an unexpected verification failure).

mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use rug::Rational;

use ramapi_core::corpus::{Corpus, Summary};
use ramapi_core::moduli::{alpha_ratio_residual, beta_ratio_residual, k_ratio_residual, ModulusRecord, SolvedModulus};
use ramapi_core::mpcore::agm_pi;
use ramapi_core::piseries::{compute_pi, j_invariant, SeriesParams};
use ramapi_core::{Execution, PrecisionContext};

use report::{Emitter, Format};

#[derive(Parser, Debug)]
#[command(name = "ramapi", version, about = "Ramanujan-type series for 1/π and singular moduli")]
struct Cli {
    /// Significant decimal digits of results
    #[arg(long, global = true, env = "RAMAPI_PRECISION", default_value_t = 60)]
    digits: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute π from the series at r and check it against the AGM
    Pi {
        /// Positive rational r ≥ 1 (e.g. 2, 1728, 5/2, 2.5)
        #[arg(long)]
        r: String,
    },
    /// Singular moduli m, k, α, β and a(r) with residual diagnostics
    Modulus {
        #[arg(long)]
        r: String,
    },
    /// Series parameters J_r, T_r, j-invariant and digits per term
    Params {
        #[arg(long)]
        r: String,
    },
    /// Verify corpus closed forms against their numeric oracles
    Verify {
        /// Glob over entry ids, e.g. 'alpha_*'
        #[arg(long)]
        filter: Option<String>,
    },
    /// Tabulate closed-form values of corpus entries
    Table {
        /// Glob over entry ids, e.g. 'k_*'
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Outcome {
    Success,
    Usage,
    Numeric,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(match o {
            Outcome::Success => 0,
            Outcome::Usage => 1,
            Outcome::Numeric => 2,
        })
    }
}

/// A failure carrying the exit status it maps to.
struct Failure {
    outcome: Outcome,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Usage,
            message: message.into(),
        }
    }
}

impl From<ramapi_core::Error> for Failure {
    fn from(e: ramapi_core::Error) -> Self {
        Self {
            outcome: Outcome::Numeric,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::Success,
                _ => Outcome::Usage,
            }
            .into();
        }
    };
    match run(&cli) {
        Ok(o) => o.into(),
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.outcome.into()
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let ctx = PrecisionContext::new(cli.digits).map_err(|e| Failure::usage(e.to_string()))?;
    let out = Emitter::new(cli.output, cli.digits);
    match &cli.command {
        Command::Pi { r } => cmd_pi(&parse_r(r)?, &ctx, &out),
        Command::Modulus { r } => cmd_modulus(&parse_r(r)?, &ctx, &out),
        Command::Params { r } => cmd_params(&parse_r(r)?, &ctx, &out),
        Command::Verify { filter } => cmd_verify(filter.as_deref(), &ctx, &out),
        Command::Table { filter } => cmd_table(filter.as_deref(), &ctx, &out),
    }
}

/// Accepts integers, fractions p/q and finite decimals; r must be positive.
fn parse_r(text: &str) -> Result<Rational, Failure> {
    let bad = || Failure::usage(format!("invalid r `{text}`: expected a positive rational such as 2, 5/2 or 2.5"));
    let t = text.trim();
    let value = match t.split_once('.') {
        Some((int, frac)) => {
            let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
            if !digits_ok(int.trim_start_matches('-')) || !digits_ok(frac) || (int.is_empty() && frac.is_empty()) {
                return Err(bad());
            }
            let numer = Rational::parse(format!("{}{frac}", if int.is_empty() { "0" } else { int })).map_err(|_| bad())?;
            let scale = rug::Integer::from(10).pow(frac.len() as u32);
            Rational::from(numer) / scale
        }
        None => Rational::from(Rational::parse(t).map_err(|_| bad())?),
    };
    if value <= 0 {
        return Err(Failure::usage(format!("r must be positive, got {text}")));
    }
    Ok(value)
}

fn filter_pattern(filter: Option<&str>) -> Result<Option<glob::Pattern>, Failure> {
    filter
        .map(|f| glob::Pattern::new(f).map_err(|e| Failure::usage(format!("invalid filter `{f}`: {e}"))))
        .transpose()
}

fn cmd_pi(r: &Rational, ctx: &PrecisionContext, out: &Emitter) -> Result<Outcome, Failure> {
    let p = compute_pi(r, ctx.digits(), ctx)?;
    let oracle = agm_pi(&ctx.raised(10));
    let err = rug::Float::with_val(oracle.prec(), &p.value - &oracle).abs();
    let ok = err < ctx.tolerance(0);
    eprintln!(
        "terms: {}, digits per term: {:.3}, working digits: {}",
        p.terms, p.digits_per_term, p.working_digits
    );
    out.pi(r, &p, &err, ok);
    if ok {
        Ok(Outcome::Success)
    } else {
        Err(Failure {
            outcome: Outcome::Numeric,
            message: format!("self-check against the AGM failed: |error| = {}", report::short(&err)),
        })
    }
}

fn cmd_modulus(r: &Rational, ctx: &PrecisionContext, out: &Emitter) -> Result<Outcome, Failure> {
    let rec = ModulusRecord::compute(r, ctx)?;
    let solved = SolvedModulus {
        x: rec.m.clone(),
        xc: rec.m_complement.clone(),
    };
    let residuals = [
        ("k_ratio", k_ratio_residual(r, &solved, ctx)?),
        ("alpha_ratio", alpha_ratio_residual(r, &rec.alpha, ctx)?),
        ("beta_ratio", beta_ratio_residual(r, &rec.beta, ctx)?),
    ];
    out.modulus(&rec, &residuals);
    Ok(Outcome::Success)
}

fn cmd_params(r: &Rational, ctx: &PrecisionContext, out: &Emitter) -> Result<Outcome, Failure> {
    let params = SeriesParams::for_r(r, ctx)?;
    let beta = ctx.real(1 - ctx.real(&params.sqrt_one_minus_j)) / 2u32;
    let j = j_invariant(&beta)?;
    out.params(&params, &j);
    Ok(Outcome::Success)
}

fn cmd_verify(filter: Option<&str>, ctx: &PrecisionContext, out: &Emitter) -> Result<Outcome, Failure> {
    let pattern = filter_pattern(filter)?;
    let select = |id: &str| pattern.as_ref().map_or(true, |p| p.matches(id));
    let reports = Corpus::builtin().verify_matching(select, Execution::default(), ctx);
    for r in &reports {
        out.verification(r);
    }
    let summary = Summary::of(&reports);
    out.summary(&summary);
    Ok(if summary.is_success() { Outcome::Success } else { Outcome::Numeric })
}

fn cmd_table(filter: Option<&str>, ctx: &PrecisionContext, out: &Emitter) -> Result<Outcome, Failure> {
    let pattern = filter_pattern(filter)?;
    let select = |id: &str| pattern.as_ref().map_or(true, |p| p.matches(id));
    let corpus = Corpus::builtin();
    let reports = corpus.verify_matching(select, Execution::default(), ctx);
    let rows: Vec<_> = reports
        .iter()
        .map(|r| (r, corpus.get(&r.id).unwrap_or_else(|| unreachable!("report ids come from the corpus"))))
        .collect();
    out.table(&rows);
    let unevaluated = reports.iter().filter(|r| r.lhs.is_nan()).count();
    if unevaluated > 0 {
        return Err(Failure {
            outcome: Outcome::Numeric,
            message: format!("{unevaluated} entries could not be evaluated"),
        });
    }
    Ok(Outcome::Success)
}
