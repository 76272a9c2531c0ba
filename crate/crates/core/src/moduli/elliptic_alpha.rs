use rug::{Float, Rational};

use super::algebraic::multiplier_m3;
use super::singular::solve_m_sqrt;
use crate::error::{Error, Result};
use crate::mpcore::{agm, ellip_k_defect, BigReal, PrecisionContext};

/// The elliptic alpha function a(r) = (√r/3)(1 + m − s_r) with
/// s_r = 3E/K − 2 + m − 3π/(4√r K²), m = m_r.
///
/// Evaluated in the equivalent form a(r) = π/(4K²) + √r (1 − E/K), with
/// 1 − E/K taken straight from the AGM so that nothing cancels at large r.
pub fn elliptic_alpha(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if *r <= 0 {
        return Err(Error::domain("elliptic_alpha", "r must be positive"));
    }
    let work = ctx.raised(10);
    let s = work.real(r).sqrt();
    let m = solve_m_sqrt(&s, &work)?;
    Ok(ctx.real(elliptic_alpha_from_m(&s, &m.x, &work)?))
}

/// a(r) from √r and an already known m_r.
pub fn elliptic_alpha_from_m(sqrt_r: &BigReal, m: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let (k, defect) = ellip_k_defect(m, ctx)?;
    let first = ctx.pi() / (ctx.real(k.square_ref()) * 4u32);
    Ok(first + ctx.real(sqrt_r * defect))
}

struct Level {
    sqrt_r: Float,
    m: Float,
    mc: Float,
    a: Float,
}

fn level(sqrt_r: Float, work: &PrecisionContext) -> Result<Level> {
    let sol = solve_m_sqrt(&sqrt_r, work)?;
    let a = elliptic_alpha_from_m(&sqrt_r, &sol.x, work)?;
    Ok(Level {
        sqrt_r,
        m: sol.x,
        mc: sol.xc,
        a,
    })
}

/// |LHS − RHS| of
///
/// a(9r)/√r − k_{9r}² = 1 − (k_{9r}k_r + k'_{9r}k'_r + 1)/(3M) − 1/(3M²)
///                       + (a(r)/√r − k_r²/3)/M²
///
/// with M the degree-3 multiplier.
pub fn verify_a1(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if *r <= 0 {
        return Err(Error::domain("verify_a1", "r must be positive"));
    }
    let w = ctx.raised(10);
    let base = level(w.real(r).sqrt(), &w)?;
    let nine = level(w.real(&base.sqrt_r * 3u32), &w)?;
    let mm = multiplier_m3(&base.m, &w)?.value;
    let k = w.real(base.m.sqrt_ref());
    let kp = w.real(base.mc.sqrt_ref());
    let k9 = w.real(nine.m.sqrt_ref());
    let k9p = w.real(nine.mc.sqrt_ref());
    let lhs = w.real(&nine.a / &base.sqrt_r) - &nine.m;
    let three_m = w.real(&mm * 3u32);
    let m2 = w.real(mm.square_ref());
    let cross = w.real(&k9 * &k) + w.real(&k9p * &kp) + 1u32;
    let tail = w.real(&base.a / &base.sqrt_r) - w.real(&base.m / 3u32);
    let rhs = 1 - cross / &three_m - w.real(1) / w.real(&m2 * 3u32) + tail / &m2;
    Ok(ctx.real(lhs - rhs).abs())
}

/// |LHS − RHS| of
///
/// a(81r)/√r − 3k_{81r}² = 3 − M₃⁵/(6M₉^{7/2}) − M₃³/M₉^{5/2} − 1/(3M₉²)
///                          − 3M₃/(2M₉^{3/2}) + (a(r)/√r − k_r²/3)/M₉²
///
/// where M₃ is the degree-3 multiplier and M₉ = K(m_{81r})/K(m_r) is
/// computed directly as a K-ratio.
pub fn verify_a2(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    if *r <= 0 {
        return Err(Error::domain("verify_a2", "r must be positive"));
    }
    let w = ctx.raised(10);
    let base = level(w.real(r).sqrt(), &w)?;
    let far = level(w.real(&base.sqrt_r * 9u32), &w)?;
    let m3 = multiplier_m3(&base.m, &w)?.value;
    let one = w.real(1);
    let m9 = agm(&one, &w.real(base.mc.sqrt_ref()), &w)? / agm(&one, &w.real(far.mc.sqrt_ref()), &w)?;
    let pow = |x: &Float, e: f64| -> Float { w.real(rug::ops::Pow::pow(x, e)) };
    let lhs = w.real(&far.a / &base.sqrt_r) - w.real(&far.m * 3u32);
    let tail = w.real(&base.a / &base.sqrt_r) - w.real(&base.m / 3u32);
    let rhs = 3 - pow(&m3, 5.0) / (pow(&m9, 3.5) * 6u32) - pow(&m3, 3.0) / pow(&m9, 2.5)
        - w.real(1) / (pow(&m9, 2.0) * 3u32)
        - w.real(&m3 * 3u32) / (pow(&m9, 1.5) * 2u32)
        + tail / pow(&m9, 2.0);
    Ok(ctx.real(lhs - rhs).abs())
}
