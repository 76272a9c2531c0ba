use rug::ops::Pow;
use rug::{Float, Rational};

use super::singular::{alpha_from_theta, solve_m};
use super::solver::{logit_f64, solve_decreasing, Bracket, UnitPoint};
use crate::error::{Error, Result};
use crate::mpcore::{ellip_k, BigReal, PrecisionContext};

fn quartic_form(m: &Float, ctx: &PrecisionContext) -> Float {
    // 1 − m + m²
    ctx.real(1 - m) + ctx.real(m.square_ref())
}

/// ₂F₁(1/3, 2/3; 1; α_r) through the classical base:
/// (2/π)((1 − m + m²)/(1 + 8α_r))^{1/4} K(m) with m = m_{r/3}.
pub fn thm1_eval(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = ctx.raised(10);
    let m = solve_m(&Rational::from(r / 3u32), &w)?;
    let alpha = alpha_from_theta(r, &w)?;
    let k = ellip_k(&m, &w)?;
    let ratio: Float = quartic_form(&m, &w) / (1 + alpha * 8u32);
    let f = k * 2u32 / w.pi();
    Ok(ctx.real(ratio.sqrt().sqrt() * f))
}

/// u(β_r) = ₂F₁(1/6, 5/6; 1; β_r) through the classical base:
/// (2/π)(1 − m + m²)^{1/4} K(m) with m = m_r.
pub fn thm3_eval(r: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = ctx.raised(10);
    let m = solve_m(r, &w)?;
    let k = ellip_k(&m, &w)?;
    let f = k * 2u32 / w.pi();
    Ok(ctx.real(quartic_form(&m, &w).sqrt().sqrt() * f))
}

/// (t₁, t₂) = ((1 − x + x²)F⁴, (1 + x)(1 − x/2)(1 − 2x)F⁶) with x = m_r and
/// F = 2K(x)/π.
pub fn thm2_inputs(r: &Rational, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let w = ctx.raised(10);
    let x = solve_m(r, &w)?;
    let f = ellip_k(&x, &w)? * 2u32 / w.pi();
    let t1 = quartic_form(&x, &w) * w.real((&f).pow(4u32));
    let t2 = w.real(1 + &x) * w.real(1 - w.real(&x / 2u32)) * w.real(1 - w.real(&x * 2u32)) * w.real((&f).pow(6u32));
    Ok((ctx.real(t1), ctx.real(t2)))
}

/// Solves (1 + 8α)z⁴ = t₁, (1 − 20α − 8α²)z⁶ = t₂ for α ∈ (0, 1), z > 0.
///
/// Eliminating z leaves h(α) = 64α(1 − α)³/(1 + 8α)³ = 1 − t₂²/t₁³. h rises
/// from 0 to 1 on (0, α*) and falls back to 0 on (α*, 1), where
/// α* = (3√3 − 5)/4 is the zero of 1 − 20α − 8α²; the sign of t₂ selects
/// the branch. Then z = (t₁/(1 + 8α))^{1/4}.
pub fn solve_thm2_system(t1: &BigReal, t2: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    if *t1 <= 0 {
        return Err(Error::domain("solve_thm2_system", "t₁ must be positive"));
    }
    let w = ctx.raised(10);
    let t1w = w.real(t1);
    let t2w = w.real(t2);
    let target: Float = 1 - w.real(t2w.square_ref()) / w.real((&t1w).pow(3u32));
    if target.is_sign_negative() && !target.is_zero() {
        return Err(Error::RootNotFound {
            op: "solve_thm2_system",
            detail: "t₂² exceeds t₁³".into(),
        });
    }
    let star = (w.real(3).sqrt() * 3u32 - 5u32) / 4u32;
    let alpha = if t2w.is_zero() {
        star
    } else {
        let star_c = w.real(1 - &star);
        let u_star = logit_f64(&star, &star_c);
        let rising = t2w.is_sign_positive();
        let bracket = if rising {
            Bracket {
                lo: u_star - 10.0,
                hi: u_star,
                open_lo: true,
                open_hi: false,
            }
        } else {
            Bracket {
                lo: u_star,
                hi: u_star + 10.0,
                open_lo: false,
                open_hi: true,
            }
        };
        let p = solve_decreasing("solve_thm2_system", bracket, &w, |p: &UnitPoint, c| {
            let d = c.real(1 + c.real(&p.x * 8u32));
            let h = c.real(&p.x * 64u32) * c.real((&p.xc).pow(3u32)) / d.pow(3u32);
            let t = c.real(&target);
            Ok(if rising { t - h } else { h - t })
        })?;
        p.x
    };
    let z = w.real(&t1w / w.real(1 + w.real(&alpha * 8u32))).sqrt().sqrt();
    Ok((ctx.real(alpha), ctx.real(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{alpha_solve, beta_solve};
    use crate::mpcore::{gamma_fn, gauss_2f1};

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn rel(a: &Float, b: &Float) -> Float {
        Float::with_val(a.prec(), a - b).abs() / Float::with_val(a.prec(), b.abs_ref())
    }

    #[test]
    fn cubic_evaluation_matches_series() {
        let c = ctx(60);
        for r in [1, 3, 6] {
            let r = q(r, 1);
            let a = alpha_solve(&r, &c).unwrap();
            let z = gauss_2f1(&q(1, 3), &q(2, 3), &q(1, 1), &a, &c).unwrap();
            assert!(rel(&thm1_eval(&r, &c).unwrap(), &z) < c.real(1e-50), "r = {r}");
        }
    }

    #[test]
    fn cubic_evaluation_gamma_examples() {
        let c = ctx(60);
        let g = |x: f64| gamma_fn(&c.real(x), &c).unwrap();
        // 8(1 + 2/√3)^{1/4} √(2π)/Γ(−1/4)²
        let inner: Float = 1 + c.real(2) / c.real(3).sqrt();
        let ex1 = inner.sqrt().sqrt() * 8u32 * c.real(c.pi() * 2u32).sqrt() / g(-0.25).square();
        assert!(rel(&thm1_eval(&q(3, 1), &c).unwrap(), &ex1) < c.real(1e-50));
        // 5/(2√(6π)) ((3 − 2√2)/(29 − 6√6))^{1/4} Γ(1/8)/Γ(5/8)
        let num = 3u32 - c.real(2).sqrt() * 2u32;
        let den = 29u32 - c.real(6).sqrt() * 6u32;
        let ex2 = c.real(5) / (c.real(c.pi() * 6u32).sqrt() * 2u32) * (num / den).sqrt().sqrt() * g(0.125) / g(0.625);
        assert!(rel(&thm1_eval(&q(6, 1), &c).unwrap(), &ex2) < c.real(1e-50));
    }

    #[test]
    fn sextic_evaluation_matches_series() {
        let c = ctx(60);
        for r in [1, 4, 16] {
            let r = q(r, 1);
            let b = beta_solve(&r, &c).unwrap();
            let u = gauss_2f1(&q(1, 6), &q(5, 6), &q(1, 1), &b, &c).unwrap();
            assert!(rel(&thm3_eval(&r, &c).unwrap(), &u) < c.real(1e-50), "r = {r}");
        }
    }

    #[test]
    fn system_round_trip() {
        let c = ctx(60);
        for r in [1, 2] {
            let r = q(r, 1);
            let (t1, t2) = thm2_inputs(&r, &c).unwrap();
            let (a, z) = solve_thm2_system(&t1, &t2, &c).unwrap();
            let a3 = alpha_from_theta(&Rational::from(&r * 3u32), &c).unwrap();
            assert!(rel(&a, &a3) < c.real(1e-50), "r = {r}");
            let z3 = gauss_2f1(&q(1, 3), &q(2, 3), &q(1, 1), &a3, &c).unwrap();
            assert!(rel(&z, &z3) < c.real(1e-50));
            // eliminated form: (1 − 20α − 8α²)² t₁³ = (1 + 8α)³ t₂²
            let n: Float = 1 - c.real(&a * 20u32) - c.real(a.square_ref()) * 8u32;
            let lhs = n.square() * c.real((&t1).pow(3u32));
            let rhs = c.real(1 + c.real(&a * 8u32)).pow(3u32) * c.real(t2.square_ref());
            assert!(c.real(lhs - rhs).abs() < c.real(1e-50));
        }
        assert!(solve_thm2_system(&c.real(-1), &c.real(0), &c).is_err());
    }
}
