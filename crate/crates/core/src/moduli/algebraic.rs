use rug::ops::Pow;
use rug::Float;

use super::singular::solve_m_sqrt;
use super::solver::{logit_f64, solve_decreasing, Bracket, UnitPoint};
use crate::error::{Error, Result};
use crate::mpcore::{agm, BigReal, PrecisionContext};

/// J_r = 4β_r(1 − β_r) from α_{3r}: 64α(1 − α)³/(1 + 8α)³.
///
/// Free of cancellation for small α, unlike forming β first.
pub fn j_from_alpha3r(alpha_3r: &BigReal) -> BigReal {
    let bits = alpha_3r.prec() + 16;
    let a = Float::with_val(bits, alpha_3r);
    let ac = Float::with_val(bits, 1 - &a);
    let d = Float::with_val(bits, 1 + Float::with_val(bits, &a * 8u32));
    let num = a * 64u32 * ac.pow(3u32);
    Float::with_val(alpha_3r.prec(), num / d.pow(3u32))
}

/// β_r = 1/2 − (1 − 20α − 8α²)/(2(1 + 8α)^{3/2}) with α = α_{3r}.
///
/// Evaluated as β = J/(2(1 + √(1 − J))) (or its reflection 1 − β when the
/// numerator is negative), which is the same number without the
/// catastrophic cancellation of 1/2 − (≈1/2) when β is tiny. Here
/// √(1 − J) = |1 − 20α − 8α²|/(1 + 8α)^{3/2}.
pub fn beta_from_alpha3r(alpha_3r: &BigReal) -> BigReal {
    let prec = alpha_3r.prec();
    let bits = prec + 16;
    let a = Float::with_val(bits, alpha_3r);
    let numer = Float::with_val(bits, 1 - Float::with_val(bits, &a * 20u32)) - Float::with_val(bits, a.square_ref()) * 8u32;
    let d = Float::with_val(bits, 1 + Float::with_val(bits, &a * 8u32));
    let root = Float::with_val(bits, numer.abs_ref()) / Float::with_val(bits, d.pow(1.5f64));
    let j = Float::with_val(bits, j_from_alpha3r(&Float::with_val(bits, &a)));
    let small = j / (1 + root) / 2u32;
    if numer.is_sign_negative() {
        Float::with_val(prec, 1 - small)
    } else {
        Float::with_val(prec, small)
    }
}

/// β_{3r} directly from α_r, with α' = 1 − α and c = α'^{1/3}:
///
/// β_{3r} = 1/2 + (27 + 4α(−9 + 2α)) / (2(−9 + 8α)√(1 + 2c)√(1 − 2c + 4c²)).
///
/// Agrees with `beta_from_alpha3r(triplicate_alpha(α_r))`.
pub fn beta_3r_from_alpha(alpha_r: &BigReal) -> BigReal {
    let prec = alpha_r.prec();
    let bits = prec + 32;
    let a = Float::with_val(bits, alpha_r);
    let c = Float::with_val(bits, 1 - &a).cbrt();
    let numer = 27 + Float::with_val(bits, &a * 4u32) * (Float::with_val(bits, &a * 2u32) - 9u32);
    let s1 = Float::with_val(bits, 1 + Float::with_val(bits, &c * 2u32)).sqrt();
    let quad: Float = 1 - Float::with_val(bits, &c * 2u32) + Float::with_val(bits, c.square_ref()) * 4u32;
    let s2 = quad.sqrt();
    let den = (Float::with_val(bits, &a * 8u32) - 9u32) * 2u32 * s1 * s2;
    Float::with_val(prec, 0.5 + numer / den)
}

/// α_{9r} = ((1 − c)/(1 + 2c))³ with c = (1 − α_r)^{1/3}.
///
/// 1 − c is formed as α/(1 + c + c²) to keep precision for small α.
pub fn triplicate_alpha(alpha_r: &BigReal) -> BigReal {
    let prec = alpha_r.prec();
    let bits = prec + 16;
    let a = Float::with_val(bits, alpha_r);
    let c = Float::with_val(bits, 1 - &a).cbrt();
    let one_minus_c = Float::with_val(bits, &a / (1 + Float::with_val(bits, &c + Float::with_val(bits, c.square_ref()))));
    let ratio: Float = one_minus_c / (1 + c * 2u32);
    Float::with_val(prec, ratio.pow(3u32))
}

/// α_{4r} from α_r through (α_r α_{4r})^{1/3} + (α'_r α'_{4r})^{1/3} = 1,
/// taking the root in (0, α_r).
pub fn modular2_alpha(alpha_r: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *alpha_r <= 0 || *alpha_r >= 1 {
        return Err(Error::domain("modular2_alpha", "α must lie in (0, 1)"));
    }
    let work = ctx.raised(10);
    let a = work.real(alpha_r);
    let ac = work.real(1 - &a);
    let top = logit_f64(&a, &ac);
    let bracket = Bracket {
        lo: top - 8.0,
        hi: top,
        open_lo: true,
        open_hi: false,
    };
    // g(y) = (αy)^{1/3} − (1 − P^{1/3}) with P = α'(1 − y), where
    // 1 − P^{1/3} = (α + y − αy)/(1 + p + p²), p = P^{1/3}. g increases in
    // y on (0, α_r) and is non-negative at y = α_r; −g is the decreasing
    // function handed to the solver.
    let p = solve_decreasing("modular2_alpha", bracket, ctx, |pt: &UnitPoint, c| {
        let a = c.real(&a);
        let ac = c.real(&ac);
        let lead = c.real(&a * &pt.x).cbrt();
        let pp = c.real(&ac * &pt.xc).cbrt();
        let one_minus_big = c.real(&a + &pt.x) - c.real(&a * &pt.x);
        let den = 1 + c.real(&pp + c.real(pp.square_ref()));
        Ok(one_minus_big / den - lead)
    })?;
    Ok(p.x)
}

/// m_{4r} = k_{4r}² from m_r, with k_{4r} = (1 − k')/(1 + k') written as
/// m/(1 + k')², i.e. m_{4r} = m²/(1 + k')⁴.
pub fn duplicate_k(m_r: &BigReal) -> BigReal {
    let prec = m_r.prec();
    let bits = prec + 16;
    let m = Float::with_val(bits, m_r);
    let kp = Float::with_val(bits, 1 - &m).sqrt();
    let d = Float::with_val(bits, 1 + kp).square().square();
    Float::with_val(prec, m.square() / d)
}

/// A modular-equation multiplier K(m_{n²r})/K(m_r).
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierValue {
    pub n: u32,
    pub value: BigReal,
}

/// The degree-3 multiplier, the root of 27M⁴ − 18M² − 8(1 − 2m)M − 1 = 0
/// that equals K(m_{9r})/K(m_r).
///
/// The root is picked by computing the K-ratio independently and
/// polishing it with Newton's method on the polynomial.
pub fn multiplier_m3(m_r: &BigReal, ctx: &PrecisionContext) -> Result<MultiplierValue> {
    if *m_r <= 0 || *m_r >= 1 {
        return Err(Error::domain("multiplier_m3", "m must lie in (0, 1)"));
    }
    let work = ctx.raised(10);
    let m = work.real(m_r);
    let mc = work.real(1 - &m);
    let one = work.real(1);
    let agm_k = agm(&one, &work.real(mc.sqrt_ref()), &work)?;
    let agm_kc = agm(&one, &work.real(m.sqrt_ref()), &work)?;
    let s = work.real(&agm_k / &agm_kc);
    let m9 = solve_m_sqrt(&work.real(&s * 3u32), &work)?;
    let agm9 = agm(&one, &work.real(m9.xc.sqrt_ref()), &work)?;
    // K(m₉)/K(m) = agm(1, k')/agm(1, k₉')
    let oracle = work.real(&agm_k / &agm9);

    let lin = work.real(1 - work.real(&m * 2u32)) * 8u32;
    let poly = |x: &Float| -> (Float, Float) {
        let x2 = work.real(x.square_ref());
        let v = work.real(&x2 * &x2) * 27u32 - work.real(&x2 * 18u32) - work.real(&lin * x) - 1u32;
        let d = work.real(&x2 * x) * 108u32 - work.real(x * 36u32) - &lin;
        (v, d)
    };
    let mut x = oracle.clone();
    for _ in 0..100 {
        let (v, d) = poly(&x);
        let step = v / d;
        x -= &step;
        if work.real(step.abs_ref()) <= work.real(&x >> (work.bits() - 4)) {
            break;
        }
    }
    let gap = work.real(&x - &oracle).abs();
    if gap > work.real(&oracle * 1e-6f64) {
        return Err(Error::RootNotFound {
            op: "multiplier_m3",
            detail: "no polynomial root near the K-ratio".into(),
        });
    }
    Ok(MultiplierValue {
        n: 3,
        value: ctx.real(x),
    })
}
