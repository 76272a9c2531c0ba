//! Verification reports for corpus entries.

use rug::Float;
use serde::Serialize;

use super::expr::eval_exact;
use super::poly::select_poly_root;
use super::{ClosedForm, Corpus, CorpusEntry};
use crate::error::Result;
use crate::mpcore::{BigReal, PrecisionContext};
use crate::par::Execution;

/// Outcome of checking one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The entry is marked as misprinted and indeed fails.
    KnownErratumConfirmed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownErratumConfirmed => "known-erratum-confirmed",
        }
    }
}

/// Closed form (`lhs`) against oracle (`rhs`) for one entry.
///
/// `status` is [`Status::Pass`] exactly when `rel_residual` is below
/// 10^−(precision − 10).
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    pub lhs: BigReal,
    pub rhs: BigReal,
    pub abs_residual: BigReal,
    pub rel_residual: BigReal,
    pub precision: u32,
    pub status: Status,
    pub oracle: &'static str,
    pub erratum: Option<String>,
    /// For polynomial forms: the index of the selected root.
    pub root_index: Option<usize>,
    /// For polynomial forms: normalised |p(x)| at the oracle value.
    pub poly_residual: Option<BigReal>,
    /// Why a side could not be evaluated, or why a polynomial root was
    /// rejected.
    pub error: Option<String>,
}

impl VerificationReport {
    /// Digits of the pass threshold: 10^−(precision − SLACK).
    pub const SLACK_DIGITS: u32 = 10;

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Counts by status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub known_erratum_confirmed: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Self {
            total: reports.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            known_erratum_confirmed: count(Status::KnownErratumConfirmed),
        }
    }

    /// No unexpected failures; confirmed errata do not count.
    pub fn is_success(&self) -> bool {
        self.fail == 0
    }
}

/// Verifies one entry of the built-in corpus.
pub fn verify_entry(id: &str, ctx: &PrecisionContext) -> Result<VerificationReport> {
    Corpus::builtin().verify(id, ctx)
}

/// Verifies the whole built-in corpus in parallel; sorted by id.
pub fn verify_all(ctx: &PrecisionContext) -> Vec<VerificationReport> {
    Corpus::builtin().verify_matching(|_| true, Execution::default(), ctx)
}

pub(crate) fn run(entry: &CorpusEntry, ctx: &PrecisionContext) -> VerificationReport {
    let nan = || ctx.real(rug::float::Special::Nan);
    let mut report = VerificationReport {
        id: entry.id.clone(),
        lhs: nan(),
        rhs: nan(),
        abs_residual: nan(),
        rel_residual: ctx.real(rug::float::Special::Infinity),
        precision: ctx.digits(),
        status: Status::Fail,
        oracle: entry.oracle.name(),
        erratum: entry.erratum.clone(),
        root_index: None,
        poly_residual: None,
        error: None,
    };
    if let Err(e) = fill(entry, ctx, &mut report) {
        report.error = Some(e.to_string());
    }
    let threshold = ctx.tolerance(VerificationReport::SLACK_DIGITS as i32);
    let close = report.rel_residual < threshold;
    report.status = match (close && report.error.is_none(), report.erratum.is_some()) {
        (true, _) => Status::Pass,
        (false, true) => Status::KnownErratumConfirmed,
        (false, false) => Status::Fail,
    };
    report
}

fn fill(entry: &CorpusEntry, ctx: &PrecisionContext, report: &mut VerificationReport) -> Result<()> {
    report.rhs = entry.oracle.eval(ctx)?;
    report.lhs = match &entry.form {
        ClosedForm::Radical(e) => eval_exact(e, ctx)?,
        ClosedForm::PolyRoot(form) => {
            report.poly_residual = Some(form.residual(&ctx.raised(5).real(&report.rhs)));
            let root = select_poly_root(form, &report.rhs, ctx)?;
            report.root_index = Some(root.index);
            if root.index != form.printed_index {
                report.error = Some(format!(
                    "selected root has index {}, printed index is {}",
                    root.index, form.printed_index
                ));
            }
            root.value
        }
    };
    let diff = Float::with_val(ctx.bits(), &report.lhs - &report.rhs).abs();
    report.rel_residual = if report.rhs.is_zero() {
        diff.clone()
    } else {
        Float::with_val(ctx.bits(), &diff / Float::with_val(ctx.bits(), report.rhs.abs_ref()))
    };
    report.abs_residual = diff;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(60).unwrap()
    }

    #[test]
    fn alpha_six_passes() {
        let r = verify_entry("alpha_6", &ctx()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.rel_residual < ctx().tolerance(10));
        assert_eq!(r.oracle, "alpha_theta");
    }

    #[test]
    fn k8_square_passes() {
        let r = verify_entry("k8sq", &ctx()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }

    #[test]
    fn misprinted_series_base_is_flagged() {
        let printed = verify_entry("eq36_as_printed", &ctx()).unwrap();
        assert_eq!(printed.status, Status::KnownErratumConfirmed);
        assert!(printed.rel_residual > 1e-3);
        let fixed = verify_entry("eq36_corrected", &ctx()).unwrap();
        assert_eq!(fixed.status, Status::Pass, "{fixed:?}");
    }

    #[test]
    fn polynomial_entry_reports_index() {
        let r = verify_entry("alpha_17", &ctx()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.root_index, Some(1));
        assert!(r.poly_residual.unwrap() < 1e-45);
    }

    #[test]
    fn unknown_entry() {
        assert!(verify_entry("no_such_entry", &ctx()).is_err());
    }

    #[test]
    fn summary_counts() {
        let reports: Vec<_> = ["alpha_1", "eq37_as_printed"]
            .iter()
            .map(|id| verify_entry(id, &ctx()).unwrap())
            .collect();
        let s = Summary::of(&reports);
        assert_eq!((s.total, s.pass, s.fail, s.known_erratum_confirmed), (2, 1, 0, 1));
        assert!(s.is_success());
    }
}
