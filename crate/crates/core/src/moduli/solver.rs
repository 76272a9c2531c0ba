//! Root finding in logit space.
//!
//! Unknowns live in (0, 1) and are frequently astronomically close to 0
//! or 1, so the search variable is u = ln(x/(1 − x)). Both x = 1/(1 + e^{−u})
//! and 1 − x = 1/(1 + e^{u}) are formed from u directly, so neither loses
//! relative precision. Bisection brackets the root to about ten digits,
//! then Newton with a central-difference derivative polishes it.

use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};

/// A point of (0, 1) together with its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoint {
    pub x: BigReal,
    pub xc: BigReal,
}

pub(crate) fn from_logit(u: &Float) -> UnitPoint {
    let bits = u.prec();
    let e_neg = Float::with_val(bits, (-u.clone()).exp());
    let e_pos = Float::with_val(bits, u.exp_ref());
    UnitPoint {
        x: Float::with_val(bits, 1 + e_neg).recip(),
        xc: Float::with_val(bits, 1 + e_pos).recip(),
    }
}

/// ln(x/(1 − x)) as an f64 (for bracketing only).
pub(crate) fn logit_f64(x: &Float, xc: &Float) -> f64 {
    let bits = x.prec().max(64);
    Float::with_val(bits, Float::with_val(bits, x.ln_ref()) - Float::with_val(bits, xc.ln_ref())).to_f64()
}

/// Search interval in u. Ends marked `open` are widened until the sign
/// condition holds; fixed ends must already satisfy it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Bracket {
    pub fn around(u0: f64, half_width: f64) -> Self {
        Self {
            lo: u0 - half_width,
            hi: u0 + half_width,
            open_lo: true,
            open_hi: true,
        }
    }
}

const MAX_EXPANSIONS: usize = 64;
const MAX_NEWTON: usize = 60;

/// Finds the root of `f`, which must be strictly decreasing in x on the
/// bracket. `f` receives (x, 1 − x) and the context to evaluate in.
pub(crate) fn solve_decreasing<F>(op: &'static str, bracket: Bracket, ctx: &PrecisionContext, f: F) -> Result<UnitPoint>
where
    F: Fn(&UnitPoint, &PrecisionContext) -> Result<Float>,
{
    // Phase 1: bisection at modest precision.
    let low = PrecisionContext::new(ctx.digits().min(30))?;
    let bits_lo = low.bits() + 32;
    let eval_lo = |u: f64| -> Result<Float> { f(&from_logit(&Float::with_val(bits_lo, u)), &low) };

    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut width = (hi - lo).max(1.0);
    let mut expansions = 0;
    while eval_lo(lo)? <= 0 {
        if !bracket.open_lo || expansions == MAX_EXPANSIONS {
            return Err(Error::RootNotFound {
                op,
                detail: format!("no sign change below u = {lo}"),
            });
        }
        lo -= width;
        width *= 2.0;
        expansions += 1;
    }
    width = (hi - lo).max(1.0);
    while eval_lo(hi)? >= 0 {
        if !bracket.open_hi || expansions == MAX_EXPANSIONS {
            return Err(Error::RootNotFound {
                op,
                detail: format!("no sign change above u = {hi}"),
            });
        }
        hi += width;
        width *= 2.0;
        expansions += 1;
    }
    while hi - lo > 1e-11 * hi.abs().max(lo.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval_lo(mid)? > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Phase 2: Newton at full precision.
    let work = ctx.raised(10);
    let bits = work.bits() + 32;
    let eval = |u: &Float| -> Result<Float> { f(&from_logit(u), &work) };
    let mut u = Float::with_val(bits, 0.5 * (lo + hi));
    let scale = |u: &Float| -> Float {
        let a = Float::with_val(bits, u.abs_ref());
        if a < 1 {
            Float::with_val(bits, 1)
        } else {
            a
        }
    };
    let stop_shift = work.bits() as i32 - 8;
    let mut last_step: Option<Float> = None;
    for _ in 0..MAX_NEWTON {
        let h = Float::with_val(bits, scale(&u) >> (work.bits() / 3));
        let f0 = eval(&u)?;
        let fp = eval(&Float::with_val(bits, &u + &h))?;
        let fm = eval(&Float::with_val(bits, &u - &h))?;
        let deriv = Float::with_val(bits, fp - fm) / Float::with_val(bits, &h * 2u32);
        if deriv.is_zero() || !deriv.is_finite() {
            return Err(Error::RootNotFound {
                op,
                detail: "vanishing derivative".into(),
            });
        }
        let step = f0 / deriv;
        u -= &step;
        let size = Float::with_val(bits, step.abs_ref());
        let tiny = Float::with_val(bits, scale(&u) >> stop_shift);
        if size <= tiny {
            let p = from_logit(&u);
            return Ok(UnitPoint {
                x: ctx.real(&p.x),
                xc: ctx.real(&p.xc),
            });
        }
        // Stalled at the noise floor of the derivative estimate.
        if let Some(prev) = &last_step {
            if size >= *prev && size <= Float::with_val(bits, scale(&u) >> (stop_shift / 2)) {
                let p = from_logit(&u);
                return Ok(UnitPoint {
                    x: ctx.real(&p.x),
                    xc: ctx.real(&p.xc),
                });
            }
        }
        last_step = Some(size);
    }
    Err(Error::NonConvergence {
        op,
        terms: MAX_NEWTON as u64,
    })
}
