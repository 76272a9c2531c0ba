use rug::Float;

use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

const MAX_AGM_STEPS: u64 = 400;

/// Arithmetic–geometric mean of two non-negative numbers.
pub fn agm(a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if a.is_sign_negative() && !a.is_zero() || b.is_sign_negative() && !b.is_zero() {
        return Err(Error::domain("agm", "arguments must be non-negative"));
    }
    let bits = ctx.bits() + 16;
    let mut x = Float::with_val(bits, a);
    let mut y = Float::with_val(bits, b);
    if x.is_zero() || y.is_zero() {
        return Ok(ctx.real(0));
    }
    for _ in 0..MAX_AGM_STEPS {
        let diff = Float::with_val(bits, &x - &y).abs();
        let scale = Float::with_val(bits, &x >> (bits - 4));
        if diff <= scale {
            return Ok(ctx.real(Float::with_val(bits, &x + &y) / 2u32));
        }
        let mean = Float::with_val(bits, &x + &y) / 2u32;
        y = Float::with_val(bits, &x * &y).sqrt();
        x = mean;
    }
    Err(Error::NonConvergence {
        op: "agm",
        terms: MAX_AGM_STEPS,
    })
}

/// K and E at a common parameter m.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticPair {
    pub m: BigReal,
    pub k: BigReal,
    pub e: BigReal,
}

impl EllipticPair {
    pub fn new(m: &BigReal, ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            m: ctx.real(m),
            k: ellip_k(m, ctx)?,
            e: ellip_e(m, ctx)?,
        })
    }
}

/// Complete elliptic integral of the first kind, K(m), with parameter
/// m = k² in [0, 1).
pub fn ellip_k(m: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if m.is_sign_negative() && !m.is_zero() {
        return Err(Error::domain("ellip_k", "parameter must be in [0, 1)"));
    }
    if *m >= 1 {
        return Err(Error::pole("ellip_k", "m = 1"));
    }
    let bits = ctx.bits() + 16;
    let mc = Float::with_val(bits, 1 - Float::with_val(bits, m)).sqrt();
    half_pi_over_agm(&mc, ctx)
}

/// K(1 − m) evaluated from m itself, so that tiny m lose nothing to the
/// subtraction 1 − m.
pub fn ellip_k_complement(m: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if m.is_zero() {
        return Err(Error::pole("ellip_k_complement", "m = 0"));
    }
    if m.is_sign_negative() || *m > 1 {
        return Err(Error::domain("ellip_k_complement", "parameter must be in (0, 1]"));
    }
    let bits = ctx.bits() + 16;
    let k = Float::with_val(bits, m).sqrt();
    half_pi_over_agm(&k, ctx)
}

fn half_pi_over_agm(b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let inner = ctx.raised(5);
    let g = agm(&inner.real(1), b, &inner)?;
    Ok(ctx.real(inner.pi() / (g * 2u32)))
}

/// Complete elliptic integral of the second kind, E(m), m in [0, 1].
pub fn ellip_e(m: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if m.is_sign_negative() && !m.is_zero() || *m > 1 {
        return Err(Error::domain("ellip_e", "parameter must be in [0, 1]"));
    }
    if *m == 1 {
        return Ok(ctx.real(1));
    }
    let (k, defect) = ellip_k_defect(m, ctx)?;
    Ok(ctx.real(k * (1 - defect)))
}

/// K(m) together with 1 − E(m)/K(m), the latter summed directly from the
/// AGM differences so that it keeps full relative precision as m → 0.
pub fn ellip_k_defect(m: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    if m.is_sign_negative() && !m.is_zero() {
        return Err(Error::domain("ellip_k_defect", "parameter must be in [0, 1)"));
    }
    if *m >= 1 {
        return Err(Error::pole("ellip_k_defect", "m = 1"));
    }
    let bits = ctx.bits() + 32;
    let mut a = Float::with_val(bits, 1);
    let mut b = Float::with_val(bits, 1 - Float::with_val(bits, m)).sqrt();
    // E = K (1 − Σ 2^(n−1) c_n²) with c_0² = m, c_{n+1} = (a_n − b_n)/2.
    let mut sum = Float::with_val(bits, m) / 2u32;
    let mut weight = Float::with_val(bits, 0.5);
    for _ in 0..MAX_AGM_STEPS {
        let c = Float::with_val(bits, &a - &b) / 2u32;
        let mean = Float::with_val(bits, &a + &b) / 2u32;
        b = Float::with_val(bits, &a * &b).sqrt();
        a = mean;
        weight *= 2u32;
        let term = Float::with_val(bits, c.square_ref()) * &weight;
        sum += &term;
        let tiny = Float::with_val(bits, &sum >> (bits + 8));
        if term <= tiny || c.is_zero() {
            let pi = Float::with_val(bits, rug::float::Constant::Pi);
            let k = pi / (a * 2u32);
            return Ok((ctx.real(k), ctx.real(sum)));
        }
    }
    Err(Error::NonConvergence {
        op: "ellip_e",
        terms: MAX_AGM_STEPS,
    })
}

/// π by the Gauss–Legendre (Brent–Salamin) iteration.
///
/// Fully independent of the library constant, which makes it usable as
/// an oracle for π.
pub fn agm_pi(ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.bits() + 32;
    let mut a = Float::with_val(bits, 1);
    let mut b = Float::with_val(bits, 0.5).sqrt();
    let mut t = Float::with_val(bits, 0.25);
    let mut p = Float::with_val(bits, 1);
    let stop = Float::with_val(bits, Float::with_val(bits, 1) >> (bits / 2 + 4));
    loop {
        let an = Float::with_val(bits, &a + &b) / 2u32;
        let bn = Float::with_val(bits, &a * &b).sqrt();
        let d = Float::with_val(bits, &a - &an);
        t -= Float::with_val(bits, d.square_ref()) * &p;
        p *= 2u32;
        let done = Float::with_val(bits, &a - &b).abs() <= stop;
        a = an;
        b = bn;
        if done {
            let s = Float::with_val(bits, &a + &b);
            return ctx.real(s.square() / (t * 4u32));
        }
    }
}
