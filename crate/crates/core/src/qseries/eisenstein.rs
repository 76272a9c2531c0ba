use rug::{Float, Rational};

use super::Nome;
use crate::error::{Error, Result};
use crate::mpcore::{bernoulli, zeta_even, BigReal, PrecisionContext};

/// Σ_{n≥1} nˢ xⁿ/(1 − xⁿ) with x = e^{log_x}, log_x < 0.
///
/// xⁿ is formed as exp(n·log_x) and 1 − xⁿ as −expm1(n·log_x), so nothing
/// is lost when x is close to 1.
pub fn lambert_sum(s: u32, log_x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !log_x.is_finite() || *log_x >= 0 {
        return Err(Error::domain("lambert_sum", "need 0 < x < 1"));
    }
    let bits = ctx.bits() + 32;
    let lx = Float::with_val(bits, log_x);
    let eps = Float::with_val(bits, Float::with_val(bits, 1) >> (ctx.bits() + 4));
    let mut sum = Float::with_val(bits, 0);
    let mut prev: Option<Float> = None;
    for n in 1..=ctx.max_terms() {
        let t = Float::with_val(bits, &lx * n);
        let xn = Float::with_val(bits, t.exp_ref());
        let den = -t.exp_m1();
        let term = Float::with_val(bits, n).pow(s) * xn / den;
        let decreasing = prev.as_ref().is_some_and(|p| term < *p);
        sum += &term;
        if decreasing && term <= Float::with_val(bits, &sum * &eps) {
            return Ok(ctx.real(sum));
        }
        prev = Some(term);
    }
    Err(Error::NonConvergence {
        op: "lambert_sum",
        terms: ctx.max_terms(),
    })
}

use rug::ops::Pow;

/// P, Q, R evaluated at q², i.e. summed over q^{2n}.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinTriple {
    pub p: BigReal,
    pub q: BigReal,
    pub r: BigReal,
}

impl EisensteinTriple {
    /// From log q (the sums run over e^{2n log q}).
    pub fn from_log_q(log_q: &BigReal, ctx: &PrecisionContext) -> Result<Self> {
        let log_x = ctx.real(log_q * 2u32);
        let s1 = lambert_sum(1, &log_x, ctx)?;
        let s3 = lambert_sum(3, &log_x, ctx)?;
        let s5 = lambert_sum(5, &log_x, ctx)?;
        Ok(Self {
            p: ctx.real(1 - s1 * 24u32),
            q: ctx.real(1 + s3 * 240u32),
            r: ctx.real(1 - s5 * 504u32),
        })
    }

    pub fn at_nome(nome: &Nome, ctx: &PrecisionContext) -> Result<Self> {
        Self::from_log_q(&nome.log_q, ctx)
    }

    /// Q³ − R², which equals 1728 times the modular discriminant.
    pub fn discriminant(&self, ctx: &PrecisionContext) -> BigReal {
        let q3 = ctx.real(self.q.clone().pow(3u32));
        q3 - ctx.real(self.r.square_ref())
    }

    /// j = 1728 Q³/(Q³ − R²).
    pub fn j_invariant(&self, ctx: &PrecisionContext) -> BigReal {
        let q3 = ctx.real(self.q.clone().pow(3u32));
        q3 * 1728u32 / self.discriminant(ctx)
    }
}

fn log_of_nome(q: &BigReal, op: &'static str, ctx: &PrecisionContext) -> Result<Option<BigReal>> {
    if q.is_sign_negative() && !q.is_zero() || *q >= 1 {
        return Err(Error::domain(op, "need 0 ≤ q < 1"));
    }
    if q.is_zero() {
        return Ok(None);
    }
    Ok(Some(ctx.raised(5).real(q).ln()))
}

fn eis_one(q: &BigReal, op: &'static str, s: u32, c: i32, ctx: &PrecisionContext) -> Result<BigReal> {
    match log_of_nome(q, op, ctx)? {
        None => Ok(ctx.real(1)),
        Some(lq) => {
            let lx = ctx.real(lq * 2u32);
            Ok(ctx.real(1 + lambert_sum(s, &lx, ctx)? * c))
        }
    }
}

/// P(q²) = 1 − 24 Σ n q^{2n}/(1 − q^{2n}).
pub fn eis_p(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    eis_one(q, "eis_p", 1, -24, ctx)
}

/// Q(q²) = 1 + 240 Σ n³ q^{2n}/(1 − q^{2n}).
pub fn eis_q(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    eis_one(q, "eis_q", 3, 240, ctx)
}

/// R(q²) = 1 − 504 Σ n⁵ q^{2n}/(1 − q^{2n}).
pub fn eis_r(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    eis_one(q, "eis_r", 5, -504, ctx)
}

/// Σ_{n≥1} nˢ/(e^{2πn√r} − 1) for odd s.
pub fn hyperbolic_sum(s: u32, r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if s % 2 == 0 {
        return Err(Error::domain("hyperbolic_sum", "exponent must be odd"));
    }
    if *r <= 0 {
        return Err(Error::domain("hyperbolic_sum", "r must be positive"));
    }
    let log_x = ctx.real(Nome::log_q_of(r, &ctx.raised(5)) * 2u32);
    lambert_sum(s, &log_x, ctx)
}

/// g_ν(r) = 2ζ(2ν) − (8νζ(2ν)/B_{2ν}) Σ n^{2ν−1} q₁ⁿ/(1 − q₁ⁿ),
/// q₁ = e^{2πiτ} = e^{−2π√r} for τ = i√r.
///
/// Normalized so that g_2 = g₂*/60 and g_3 = g₃*/140 for the lattice
/// invariants g₂*, g₃*.
pub fn eis_g(nu: u32, r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if nu < 2 {
        return Err(Error::domain("eis_g", "weight index ν must be ≥ 2"));
    }
    let work = ctx.raised(5);
    let zeta = zeta_even(nu, &work);
    let b = bernoulli(2 * nu as usize);
    let sum = hyperbolic_sum(2 * nu - 1, r, &work)?;
    let coef = work.real(&zeta * (8 * nu)) / work.real(&b);
    Ok(ctx.real(zeta * 2u32 - coef * sum))
}
