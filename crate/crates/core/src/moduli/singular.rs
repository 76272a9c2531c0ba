use rug::{Float, Rational};

use super::solver::{solve_decreasing, Bracket, UnitPoint};
use crate::error::{Error, Result};
use crate::mpcore::{agm, gauss_2f1, gauss_2f1_complement, BigReal, PrecisionContext};
use crate::par::Execution;
use crate::qseries::{cubic_theta_pair, Nome};

/// A solved modulus together with its complement 1 − x, each carried at
/// full relative precision.
pub type SolvedModulus = UnitPoint;

fn positive(r: &Rational, op: &'static str) -> Result<()> {
    if *r <= 0 {
        return Err(Error::domain(op, format!("r must be positive, got {r}")));
    }
    Ok(())
}

/// Initial logit guess for a family whose small-x asymptotics are
/// ratio ≈ (ln C − ln x)/λ, i.e. x ≈ C·e^{−λ√r}.
fn asymptotic_guess(sqrt_r: f64, lambda: f64, ln_c: f64) -> f64 {
    if sqrt_r >= 1.0 {
        ln_c - lambda * sqrt_r
    } else {
        lambda / sqrt_r - ln_c
    }
}

/// K(1 − x)/K(x) from x and 1 − x.
fn k_ratio(p: &UnitPoint, ctx: &PrecisionContext) -> Result<Float> {
    let one = ctx.real(1);
    let num = agm(&one, &ctx.real(p.xc.sqrt_ref()), ctx)?;
    let den = agm(&one, &ctx.real(p.x.sqrt_ref()), ctx)?;
    Ok(num / den)
}

/// m solving K(1 − m)/K(m) = s for a real s > 0, with its complement.
pub fn solve_m_sqrt(s: &BigReal, ctx: &PrecisionContext) -> Result<SolvedModulus> {
    if *s <= 0 {
        return Err(Error::domain("solve_m", "√r must be positive"));
    }
    if *s == 1 {
        return Ok(UnitPoint {
            x: ctx.real(0.5),
            xc: ctx.real(0.5),
        });
    }
    let sf = s.to_f64();
    let guess = asymptotic_guess(sf, std::f64::consts::PI, 16f64.ln());
    solve_decreasing("solve_m", Bracket::around(guess, 2.0), ctx, |p, c| {
        Ok(k_ratio(p, c)? - c.real(s))
    })
}

/// The singular modulus parameter m_r = k_r².
pub fn solve_m(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    positive(r, "solve_m")?;
    let s = ctx.raised(10).real(r).sqrt();
    Ok(solve_m_sqrt(&s, ctx)?.x)
}

/// |K(1 − m)/K(m) − √r|.
pub fn k_ratio_residual(r: &Rational, m: &SolvedModulus, ctx: &PrecisionContext) -> Result<BigReal> {
    let s = ctx.real(r).sqrt();
    Ok(ctx.real(k_ratio(m, ctx)? - s).abs())
}

/// α_r = (c(q)/a(q))³ at the cubic nome q = e^{−2π√(r/3)}.
pub fn alpha_from_theta(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    positive(r, "alpha_from_theta")?;
    let work = ctx.raised(5);
    let log_q = Nome::log_q_cubic_of(r, &work);
    let pair = cubic_theta_pair(&log_q, Execution::default(), &work)?;
    let ratio = pair.c_reduced / &pair.a;
    let cube = work.real(ratio.square_ref()) * &ratio;
    Ok(ctx.real(log_q.exp() * cube))
}

/// ₂F₁(a, 1 − a; 1; x) using whichever of x, 1 − x is the accurate one.
fn f_at(a: &Rational, x: &Float, xc: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let b = Rational::from(1 - a);
    let one = Rational::from(1);
    if *x <= 0.5 {
        gauss_2f1(a, &b, &one, x, ctx)
    } else {
        gauss_2f1_complement(a, &b, &one, xc, ctx)
    }
}

fn hyp_ratio(a: &Rational, p: &UnitPoint, ctx: &PrecisionContext) -> Result<Float> {
    let num = f_at(a, &p.xc, &p.x, ctx)?;
    let den = f_at(a, &p.x, &p.xc, ctx)?;
    Ok(num / den)
}

fn solve_hyp(op: &'static str, a: Rational, ln_c: f64, r: &Rational, ctx: &PrecisionContext) -> Result<SolvedModulus> {
    positive(r, op)?;
    if *r == 1 {
        return Ok(UnitPoint {
            x: ctx.real(0.5),
            xc: ctx.real(0.5),
        });
    }
    let s = ctx.raised(10).real(r).sqrt();
    let lambda = std::f64::consts::PI / (std::f64::consts::PI * a.to_f64()).sin();
    let guess = asymptotic_guess(s.to_f64(), lambda, ln_c);
    solve_decreasing(op, Bracket::around(guess, 2.0), ctx, |p, c| Ok(hyp_ratio(&a, p, c)? - c.real(&s)))
}

/// α_r from z(1 − α)/z(α) = √r, z = ₂F₁(1/3, 2/3; 1; ·).
pub fn alpha_solve(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(solve_hyp("alpha_solve", Rational::from((1, 3)), 27f64.ln(), r, ctx)?.x)
}

/// β_r from u(1 − β)/u(β) = √r, u = ₂F₁(1/6, 5/6; 1; ·).
pub fn beta_solve(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(solve_hyp("beta_solve", Rational::from((1, 6)), 432f64.ln(), r, ctx)?.x)
}

fn hyp_residual(a: Rational, r: &Rational, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let work = ctx.raised(5);
    let x = work.real(x);
    let xc = work.real(1 - &x);
    let p = UnitPoint { x, xc };
    let s = work.real(r).sqrt();
    Ok(ctx.real(hyp_ratio(&a, &p, &work)? - s).abs())
}

/// |z(1 − α)/z(α) − √r|.
pub fn alpha_ratio_residual(r: &Rational, alpha: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    hyp_residual(Rational::from((1, 3)), r, alpha, ctx)
}

/// |u(1 − β)/u(β) − √r|.
pub fn beta_ratio_residual(r: &Rational, beta: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    hyp_residual(Rational::from((1, 6)), r, beta, ctx)
}
