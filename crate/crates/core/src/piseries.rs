//! Ramanujan-type series for 1/π in the sextic base:
//!
//! 3/(π√r√(1 − J_r)) = Σ_{n≥0} (1/6)_n(5/6)_n(1/2)_n/(1)_n³ · J_rⁿ (6n + 1 − T_r)
//!
//! with J_r = 4β_r(1 − β_r) and
//! T_r = (1 + m_r − (3/√r)a(r)) / (√(1 − m_r + m_r²)(1 − 2β_r)).

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moduli::{alpha_from_theta, elliptic_alpha_from_m, j_from_alpha3r, solve_m_sqrt};
use crate::mpcore::{agm_pi, BigReal, PrecisionContext};

/// Everything needed to sum the series for one r.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesParams {
    pub r: Rational,
    pub j: BigReal,
    pub t: BigReal,
    /// √(1 − J) = 1 − 2β.
    pub sqrt_one_minus_j: BigReal,
    /// The value the series converges to, 3/(π√r√(1 − J)), with π from
    /// the AGM iteration.
    pub lhs: BigReal,
    /// −log₁₀|J|.
    pub digits_per_term: BigReal,
}

impl SeriesParams {
    /// J and T computed from the moduli of r.
    pub fn for_r(r: &Rational, ctx: &PrecisionContext) -> Result<Self> {
        let w = ctx.raised(10);
        let sex = Sextic::new(r, &w)?;
        let t = series_t_with(r, &sex, &w)?;
        Self::assemble(r, sex.j, sex.sqrt_one_minus_j, t, ctx)
    }

    /// Parameters from given J and T (e.g. exact closed forms).
    pub fn from_values(r: &Rational, j: &BigReal, t: &BigReal, ctx: &PrecisionContext) -> Result<Self> {
        let w = ctx.raised(10);
        let j = w.real(j);
        let root = w.real(1 - &j).sqrt();
        Self::assemble(r, j, root, w.real(t), ctx)
    }

    fn assemble(r: &Rational, j: Float, root: Float, t: Float, ctx: &PrecisionContext) -> Result<Self> {
        if *r <= 0 {
            return Err(Error::domain("series_params", "r must be positive"));
        }
        if w_abs(&j) >= 1 {
            return Err(Error::domain("series_params", "|J| ≥ 1: the series diverges"));
        }
        let w = ctx.raised(10);
        let lhs = w.real(3) / (agm_pi(&w) * w.real(r).sqrt() * &root);
        Ok(Self {
            r: r.clone(),
            digits_per_term: ctx.real(digits_per_term(&j)),
            j: ctx.real(j),
            t: ctx.real(t),
            sqrt_one_minus_j: ctx.real(root),
            lhs: ctx.real(lhs),
        })
    }
}

fn w_abs(x: &Float) -> Float {
    Float::with_val(x.prec(), x.abs_ref())
}

/// J_r and √(1 − J_r) from α_{3r}, both without cancellation.
struct Sextic {
    j: Float,
    sqrt_one_minus_j: Float,
}

impl Sextic {
    fn new(r: &Rational, w: &PrecisionContext) -> Result<Self> {
        let a = alpha_from_theta(&Rational::from(r * 3u32), w)?;
        let j = j_from_alpha3r(&a);
        // √(1 − J) = |1 − 20α − 8α²| / (1 + 8α)^{3/2}
        let numer: Float = 1 - w.real(&a * 20u32) - w.real(a.square_ref()) * 8u32;
        let d = w.real(1 + w.real(&a * 8u32));
        let root = numer.abs() / w.real(w.real(d.square_ref()) * &d).sqrt();
        Ok(Self {
            j,
            sqrt_one_minus_j: root,
        })
    }
}

/// j = 432/(β(1 − β)).
pub fn j_invariant(beta: &BigReal) -> Result<BigReal> {
    if beta.is_zero() || *beta == 1 {
        return Err(Error::pole("j_invariant", beta.to_string()));
    }
    let bits = beta.prec() + 16;
    let b = Float::with_val(bits, beta);
    let bc = Float::with_val(bits, 1 - &b);
    Ok(Float::with_val(beta.prec(), 432u32 / (b * bc)))
}

fn require_at_least_one(r: &Rational, op: &'static str) -> Result<()> {
    if *r < 1 {
        return Err(Error::domain(op, format!("r must be at least 1, got {r}")));
    }
    Ok(())
}

/// J_r = 4β_r(1 − β_r), evaluated as 64α(1 − α)³/(1 + 8α)³ with
/// α = α_{3r}.
pub fn series_j(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_at_least_one(r, "series_j")?;
    let w = ctx.raised(10);
    Ok(ctx.real(Sextic::new(r, &w)?.j))
}

/// T_r = (1 + m − (3/√r)a(r)) / (√(1 − m + m²)(1 − 2β)).
pub fn series_t(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_at_least_one(r, "series_t")?;
    let w = ctx.raised(10);
    let sex = Sextic::new(r, &w)?;
    Ok(ctx.real(series_t_with(r, &sex, &w)?))
}

fn series_t_with(r: &Rational, sex: &Sextic, w: &PrecisionContext) -> Result<Float> {
    if *r == 1 {
        return Err(Error::pole("series_t", "r = 1 (β = 1/2)"));
    }
    let s = w.real(r).sqrt();
    let coef = w.real(3) / &s;
    t_display(&s, &coef, &sex.sqrt_one_minus_j, w)
}

/// (1 + m − coef·a) / (√(1 − m + m²)·root) with m, a taken at √r = s.
fn t_display(s: &Float, coef: &Float, root: &Float, w: &PrecisionContext) -> Result<Float> {
    let m = solve_m_sqrt(s, w)?;
    let a = elliptic_alpha_from_m(s, &m.x, w)?;
    let numer = 1 + w.real(&m.x) - w.real(coef * &a);
    let quart = w.real(1 - &m.x) + w.real(m.x.square_ref());
    Ok(numer / (quart.sqrt() * root))
}

/// t_r = (1 + m_{r/4} − (6/√r)a(r/4)) / (√(1 − m_{r/4} + m_{r/4}²)(1 − 2β_{r/4})).
///
/// Identical to T_{r/4}, since 6/√r = 3/√(r/4).
pub fn t_lower(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if *r == 4 {
        return Err(Error::pole("t_lower", "r = 4 (β₁ = 1/2)"));
    }
    if *r < 4 {
        return Err(Error::domain("t_lower", "r must exceed 4"));
    }
    let w = ctx.raised(10);
    let quarter = Rational::from(r / 4u32);
    let sex = Sextic::new(&quarter, &w)?;
    let s = w.real(&quarter).sqrt();
    let coef = w.real(6) / w.real(r).sqrt();
    Ok(ctx.real(t_display(&s, &coef, &sex.sqrt_one_minus_j, &w)?))
}

/// −log₁₀|J|; +∞ for J = 0.
pub fn digits_per_term(j: &BigReal) -> BigReal {
    let a = Float::with_val(j.prec(), j.abs_ref());
    -a.log10()
}

/// The first `n_terms` terms of the series.
pub fn ramanujan_sum(params: &SeriesParams, n_terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    series_sum(&params.j, &params.t, n_terms, ctx)
}

/// Σ_{n<N} (1/6)_n(5/6)_n(1/2)_n/(1)_n³ · Jⁿ (6n + 1 − T) for arbitrary J, T.
///
/// The hypergeometric coefficient is updated incrementally:
/// c_{n+1} = c_n · J · (6n + 1)(6n + 5)(2n + 1)/(72(n + 1)³).
pub fn series_sum(j: &BigReal, t: &BigReal, n_terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if w_abs(j) >= 1 {
        return Err(Error::domain("ramanujan_sum", "|J| ≥ 1: the series diverges"));
    }
    let bits = ctx.bits() + 32;
    let j = Float::with_val(bits, j);
    let t = Float::with_val(bits, t);
    let mut coef = Float::with_val(bits, 1);
    let mut sum = Float::with_val(bits, 0);
    for n in 0..n_terms {
        let linear = Float::with_val(bits, 6 * n + 1) - &t;
        sum += Float::with_val(bits, &coef * &linear);
        let num = rug::Integer::from(6 * n + 1) * (6 * n + 5) * (2 * n + 1);
        let den = rug::Integer::from(n + 1).pow(3u32) * 72u32;
        coef *= Float::with_val(bits, &Rational::from((num, den)));
        coef *= &j;
    }
    Ok(ctx.real(sum))
}

/// Number of terms after which the tail of the series for this J is below
/// the working precision of `ctx`.
pub fn terms_for_precision(j: &BigReal, ctx: &PrecisionContext) -> Result<u64> {
    let dpt = digits_per_term(j).to_f64();
    if dpt.is_nan() || dpt <= 0.0 {
        return Err(Error::domain("ramanujan_sum", "|J| ≥ 1: the series diverges"));
    }
    let want = (ctx.digits() + ctx.guard()) as f64 + 5.0;
    Ok((want / dpt).ceil().min(u64::MAX as f64 / 2.0) as u64 + 2)
}

/// π extracted from the series for a given r.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiComputation {
    #[serde(skip)]
    pub value: BigReal,
    pub terms: u64,
    pub digits_per_term: f64,
    pub working_digits: u32,
}

/// π to `target_digits` digits as 3/(√r√(1 − J) S_N), N = ⌈target/dpt⌉ + 2.
///
/// Works at target + 15 + ⌈log₁₀ N⌉ digits, independently of `ctx`'s own
/// digits (the context only supplies guard and term limits).
pub fn compute_pi(r: &Rational, target_digits: u32, ctx: &PrecisionContext) -> Result<PiComputation> {
    require_at_least_one(r, "compute_pi")?;
    if *r == 1 {
        return Err(Error::domain("compute_pi", "J₁ = 1: the series diverges"));
    }
    // Rate estimate at low precision.
    let probe = PrecisionContext::new(30)?;
    let dpt = digits_per_term(&series_j(r, &probe)?).to_f64();
    if dpt.is_nan() || dpt <= 0.0 {
        return Err(Error::domain("compute_pi", "series does not converge"));
    }
    let terms = (target_digits as f64 / dpt).ceil() as u64 + 2;
    let working = target_digits + 15 + (terms as f64).log10().ceil() as u32;
    let w = PrecisionContext::new(working)?
        .with_guard(ctx.guard())
        .with_max_terms(ctx.max_terms());
    let params = SeriesParams::for_r(r, &w)?;
    let sum = ramanujan_sum(&params, terms, &w)?;
    let root = w.real(&params.sqrt_one_minus_j);
    let pi = w.real(3) / (w.real(r).sqrt() * root * sum);
    Ok(PiComputation {
        value: pi,
        terms,
        digits_per_term: dpt,
        working_digits: working,
    })
}
