use std::collections::BTreeMap;

use rug::{Float, Rational};

use super::Nome;
use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};
use crate::par::{map_range, map_vec, Execution};

/// a(q) and the reduced sum c(q)/q^{1/3} of the cubic theta functions.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicThetaPair {
    /// a(q) = Σ q^{m² + mn + n²}.
    pub a: BigReal,
    /// Σ q^{m² + mn + n² + m + n}, so that c(q) = q^{1/3} times this.
    pub c_reduced: BigReal,
}

/// Largest exponent kept: q^k < 2^{−bits} beyond it.
fn max_exponent(log_q: &Float, bits: u32) -> u64 {
    let per = -log_q.to_f64();
    (bits as f64 * std::f64::consts::LN_2 / per).ceil() as u64 + 2
}

/// Truncation radius M: every lattice point with quadratic form value up
/// to the cut-off lies in |m|, |n| ≤ M. The form m² + mn + n² has minimum
/// eigenvalue 1/2, and the shifted form only adds a bounded offset.
pub fn cubic_theta_radius(log_q: &BigReal, ctx: &PrecisionContext) -> u64 {
    let k = max_exponent(log_q, ctx.bits() + 16) as f64;
    (2.0 * (k + 1.0)).sqrt().ceil() as u64 + 2
}

/// a(q) and c(q)/q^{1/3} from log q < 0.
///
/// Lattice points are first bucketed by their (integer) exponent; the
/// counts are exact, so the summation order of the final weighted sum is
/// fixed regardless of how the rows are scheduled.
pub fn cubic_theta_pair(log_q: &BigReal, exec: Execution, ctx: &PrecisionContext) -> Result<CubicThetaPair> {
    if !log_q.is_finite() || *log_q >= 0 {
        return Err(Error::domain("cubic_theta", "need 0 < q < 1"));
    }
    let bits = ctx.bits() + 16;
    let kmax = max_exponent(log_q, bits) as i64;
    let m_max = cubic_theta_radius(log_q, ctx) as i64;
    let rows = map_range(exec, -m_max, m_max, |m| {
        let mut a = Vec::new();
        let mut c = Vec::new();
        for n in -m_max..=m_max {
            let ka = m * m + m * n + n * n;
            if ka <= kmax {
                a.push(ka as u64);
            }
            let kc = ka + m + n;
            if kc <= kmax {
                c.push(kc as u64);
            }
        }
        (a, c)
    });
    let mut counts_a: BTreeMap<u64, u64> = BTreeMap::new();
    let mut counts_c: BTreeMap<u64, u64> = BTreeMap::new();
    for (a, c) in rows {
        for k in a {
            *counts_a.entry(k).or_default() += 1;
        }
        for k in c {
            *counts_c.entry(k).or_default() += 1;
        }
    }
    let lq = Float::with_val(bits, log_q);
    let weigh = |counts: BTreeMap<u64, u64>| -> Float {
        let items: Vec<(u64, u64)> = counts.into_iter().collect();
        let terms = map_vec(exec, items, |(k, count)| {
            let e = Float::with_val(bits, &lq * k).exp();
            e * count
        });
        let mut s = Float::with_val(bits, 0);
        for t in terms {
            s += t;
        }
        s
    };
    Ok(CubicThetaPair {
        a: ctx.real(weigh(counts_a)),
        c_reduced: ctx.real(weigh(counts_c)),
    })
}

fn theta_log(q: &BigReal, op: &'static str, ctx: &PrecisionContext) -> Result<Option<BigReal>> {
    if q.is_sign_negative() && !q.is_zero() || *q >= 1 {
        return Err(Error::domain(op, "need 0 ≤ q < 1"));
    }
    if q.is_zero() {
        return Ok(None);
    }
    Ok(Some(ctx.raised(5).real(q).ln()))
}

/// a(q) = Σ_{m,n} q^{m² + mn + n²}.
pub fn cubic_theta_a(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    match theta_log(q, "cubic_theta_a", ctx)? {
        None => Ok(ctx.real(1)),
        Some(lq) => Ok(cubic_theta_pair(&lq, Execution::default(), ctx)?.a),
    }
}

/// c(q) = Σ_{m,n} q^{(m + 1/3)² + (m + 1/3)(n + 1/3) + (n + 1/3)²}.
pub fn cubic_theta_c(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    match theta_log(q, "cubic_theta_c", ctx)? {
        None => Ok(ctx.real(0)),
        Some(lq) => {
            let pair = cubic_theta_pair(&lq, Execution::default(), ctx)?;
            let third = ctx.real(&lq / 3u32).exp();
            Ok(ctx.real(third * pair.c_reduced))
        }
    }
}

fn theta_series(log_q: &Float, bits: u32, start: i64, exponent: impl Fn(i64) -> i64, ctx: &PrecisionContext) -> Result<Float> {
    let eps = Float::with_val(bits, Float::with_val(bits, 1) >> (ctx.bits() + 4));
    let mut sum = Float::with_val(bits, 0);
    for n in start.. {
        let t = Float::with_val(bits, log_q * exponent(n)).exp();
        sum += &t;
        if n > start + 1 && t <= Float::with_val(bits, &sum * &eps) {
            return Ok(sum);
        }
        if (n - start) as u64 > ctx.max_terms() {
            break;
        }
    }
    Err(Error::NonConvergence {
        op: "jacobi_theta",
        terms: ctx.max_terms(),
    })
}

/// θ₃(q) = 1 + 2 Σ_{n≥1} q^{n²}, from log q.
pub fn jacobi_theta3(log_q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.bits() + 16;
    let lq = Float::with_val(bits, log_q);
    let s = theta_series(&lq, bits, 1, |n| n * n, ctx)?;
    Ok(ctx.real(1 + s * 2u32))
}

/// θ₂(q) = 2 q^{1/4} Σ_{n≥0} q^{n(n+1)}, from log q.
pub fn jacobi_theta2(log_q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.bits() + 16;
    let lq = Float::with_val(bits, log_q);
    let s = theta_series(&lq, bits, 0, |n| n * (n + 1), ctx)?;
    let quarter = Float::with_val(bits, &lq / 4u32).exp();
    Ok(ctx.real(quarter * s * 2u32))
}

/// The singular modulus parameter m_r = (θ₂/θ₃)⁴ at q = e^{−π√r}.
///
/// An independent route to the value `solve_m` finds by root finding.
pub fn singular_m_theta(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let work = ctx.raised(5);
    let lq = Nome::new(r, &work)?.log_q;
    let t2 = jacobi_theta2(&lq, &work)?;
    let t3 = jacobi_theta3(&lq, &work)?;
    let ratio = t2 / t3;
    Ok(ctx.real(ratio.square().square()))
}
