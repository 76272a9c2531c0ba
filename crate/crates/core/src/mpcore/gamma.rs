use rug::ops::Pow;
use rug::{Float, Rational};

use super::bernoulli::bernoulli;
use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

/// Working state for the Stirling-type asymptotic expansions: the argument
/// is shifted up to `y = x + n` so that the series reaches the target
/// precision well before it starts to diverge.
struct Shifted {
    y: Float,
    shift: u32,
    bits: u32,
}

fn shift_up(x: &Float, digits: u32, bits: u32) -> Shifted {
    let floor = (digits as f64).max(12.0);
    let xf = x.to_f64();
    let shift = if xf >= floor { 0 } else { (floor - xf).ceil() as u32 };
    Shifted {
        y: Float::with_val(bits, x + shift),
        shift,
        bits,
    }
}

fn nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && (x.is_zero() || x.is_sign_negative())
}

/// Γ(x) for real x, from the Stirling series with argument shift and the
/// reflection formula for x < 1/2.
pub fn gamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if nonpositive_integer(x) {
        return Err(Error::pole("gamma", x.to_string()));
    }
    let work = ctx.raised(10);
    let bits = work.bits() + 32;
    let x = Float::with_val(bits, x);
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1 − x))
        let pi = Float::with_val(bits, rug::float::Constant::Pi);
        let s = Float::with_val(bits, &pi * &x).sin();
        let g = gamma_positive(&Float::with_val(bits, 1 - &x), &work, bits)?;
        return Ok(ctx.real(pi / (s * g)));
    }
    Ok(ctx.real(gamma_positive(&x, &work, bits)?))
}

fn gamma_positive(x: &Float, work: &PrecisionContext, bits: u32) -> Result<Float> {
    let sh = shift_up(x, work.digits() + work.guard(), bits);
    let ln = ln_gamma_asymptotic(&sh, work)?;
    let mut prod = Float::with_val(bits, 1);
    for j in 0..sh.shift {
        prod *= Float::with_val(bits, x + j);
    }
    Ok(ln.exp() / prod)
}

/// ln Γ(y) = (y − ½) ln y − y + ½ ln 2π + Σ B_{2k} / (2k(2k−1) y^{2k−1}).
fn ln_gamma_asymptotic(sh: &Shifted, work: &PrecisionContext) -> Result<Float> {
    let bits = sh.bits;
    let y = &sh.y;
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let mut acc = Float::with_val(bits, y - 0.5) * Float::with_val(bits, y.ln_ref());
    acc -= y;
    acc += Float::with_val(bits, pi * 2u32).ln() / 2u32;
    let tail = stirling_tail(y, bits, work, "gamma", |k| 2 * k * (2 * k - 1), 1)?;
    Ok(acc + tail)
}

/// Σ_{k≥1} B_{2k} / (den(k) · y^{2k−1+offset}) truncated at the first
/// term below the working precision.
fn stirling_tail(
    y: &Float,
    bits: u32,
    work: &PrecisionContext,
    op: &'static str,
    den: impl Fn(u64) -> u64,
    first_power: i32,
) -> Result<Float> {
    let y2 = Float::with_val(bits, y.square_ref());
    let mut ypow = Float::with_val(bits, y.pow(first_power));
    let mut sum = Float::with_val(bits, 0);
    let eps = Float::with_val(bits, Float::with_val(bits, 1) >> (bits - 8));
    let limit = 4 * work.digits() as u64 + 200;
    for k in 1..=limit {
        let b = bernoulli(2 * k as usize) / Rational::from(den(k));
        let term = Float::with_val(bits, b) / &ypow;
        let small = Float::with_val(bits, term.abs_ref()) <= eps;
        sum += term;
        if small {
            return Ok(sum);
        }
        ypow *= &y2;
    }
    Err(Error::NonConvergence { op, terms: limit })
}

/// Digamma ψ(x) = Γ'(x)/Γ(x) for real x.
pub fn digamma(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if nonpositive_integer(x) {
        return Err(Error::pole("digamma", x.to_string()));
    }
    let work = ctx.raised(10);
    let bits = work.bits() + 32;
    let x = Float::with_val(bits, x);
    if x < 0.5 {
        // ψ(x) = ψ(1 − x) − π cot(πx)
        let pi = Float::with_val(bits, rug::float::Constant::Pi);
        let cot = Float::with_val(bits, &pi * &x).cot();
        let p = digamma_positive(&Float::with_val(bits, 1 - &x), &work, bits)?;
        return Ok(ctx.real(p - pi * cot));
    }
    Ok(ctx.real(digamma_positive(&x, &work, bits)?))
}

fn digamma_positive(x: &Float, work: &PrecisionContext, bits: u32) -> Result<Float> {
    let sh = shift_up(x, work.digits() + work.guard(), bits);
    let y = &sh.y;
    // ψ(y) = ln y − 1/(2y) − Σ B_{2k} / (2k y^{2k})
    let mut acc = Float::with_val(bits, y.ln_ref());
    acc -= Float::with_val(bits, y.recip_ref()) / 2u32;
    acc -= stirling_tail(y, bits, work, "digamma", |k| 2 * k, 2)?;
    for j in 0..sh.shift {
        acc -= Float::with_val(bits, x + j).recip();
    }
    Ok(acc)
}

/// 1/Γ(q) for rational q, zero at the poles of Γ.
pub fn recip_gamma_rational(q: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if *q.denom() == 1 && *q.numer() <= 0 {
        return Ok(ctx.real(0));
    }
    let g = gamma(&ctx.raised(2).real(q), &ctx.raised(2))?;
    Ok(ctx.real(g.recip()))
}
