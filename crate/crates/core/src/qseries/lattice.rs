use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};
use crate::par::{map_range, Execution};

/// Which part of the lattice is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LatticeRegion {
    /// All (m, n) ≠ (0, 0) with |m|, |n| ≤ M.
    #[default]
    Full,
    /// Half of the lattice (m > 0, or m = 0 and n > 0), doubled. The
    /// weights are even, so this equals the full sum.
    HalfDoubled,
}

/// g₂*(i√r) = 60 Σ' (mτ + n)^{−4}, truncated to |m|, |n| ≤ M.
///
/// The omitted tail is O(M^{−2}).
pub fn lattice_g2(r: &Rational, radius: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let s = lattice_sum(4, r, radius, LatticeRegion::Full, Execution::default(), ctx)?;
    Ok(s * 60u32)
}

/// g₃*(i√r) = 140 Σ' (mτ + n)^{−6}, truncated to |m|, |n| ≤ M.
///
/// The omitted tail is O(M^{−4}).
pub fn lattice_g3(r: &Rational, radius: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let s = lattice_sum(6, r, radius, LatticeRegion::Full, Execution::default(), ctx)?;
    Ok(s * 140u32)
}

/// Σ' Re (n + i m√r)^{−w} for w ∈ {4, 6}.
///
/// Rows (fixed m) are summed independently, possibly in parallel, and then
/// added in row order, so the result does not depend on `exec`.
pub fn lattice_sum(
    weight: u32,
    r: &Rational,
    radius: u32,
    region: LatticeRegion,
    exec: Execution,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if weight != 4 && weight != 6 {
        return Err(Error::domain("lattice_sum", "weight must be 4 or 6"));
    }
    if *r <= 0 {
        return Err(Error::domain("lattice_sum", "r must be positive"));
    }
    if radius == 0 {
        return Err(Error::domain("lattice_sum", "radius must be positive"));
    }
    let bits = ctx.bits();
    let rr = Float::with_val(bits, r);
    let big_m = radius as i64;
    let m_lo = match region {
        LatticeRegion::Full => -big_m,
        LatticeRegion::HalfDoubled => 0,
    };
    let rows = map_range(exec, m_lo, big_m, |m| {
        let n_lo = match region {
            LatticeRegion::HalfDoubled if m == 0 => 1,
            _ => -big_m,
        };
        let mut row = Float::with_val(bits, 0);
        // a = m²r is shared by the whole row.
        let a = Float::with_val(bits, &rr * (m * m));
        for n in n_lo..=big_m {
            if m == 0 && n == 0 {
                continue;
            }
            let n2 = n * n;
            let d = Float::with_val(bits, &a + n2);
            let num = if weight == 4 {
                // n⁴ − 6n²a + a²
                Float::with_val(bits, a.square_ref()) - Float::with_val(bits, &a * (6 * n2)) + n2 * n2
            } else {
                // n⁶ − 15n⁴a + 15n²a² − a³
                let a2 = Float::with_val(bits, a.square_ref());
                let a3 = Float::with_val(bits, &a2 * &a);
                Float::with_val(bits, &a2 * (15 * n2)) - Float::with_val(bits, &a * (15 * n2 * n2)) - a3
                    + n2 * n2 * n2
            };
            let d2 = Float::with_val(bits, d.square_ref());
            let den = match weight {
                4 => d2.square(),
                _ => Float::with_val(bits, &d2 * &d2) * d2,
            };
            row += num / den;
        }
        row
    });
    let mut total = Float::with_val(bits, 0);
    for row in rows {
        total += row;
    }
    if region == LatticeRegion::HalfDoubled {
        total *= 2u32;
    }
    Ok(ctx.real(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_lattice_doubled_matches_full() {
        let ctx = PrecisionContext::new(30).unwrap();
        let r = Rational::from((3, 2));
        for w in [4, 6] {
            let full = lattice_sum(w, &r, 40, LatticeRegion::Full, Execution::Sequential, &ctx).unwrap();
            let half = lattice_sum(w, &r, 40, LatticeRegion::HalfDoubled, Execution::Sequential, &ctx).unwrap();
            assert!(ctx.real(&full - &half).abs() < ctx.tolerance(2));
        }
    }

    #[test]
    fn execution_mode_does_not_change_result() {
        let ctx = PrecisionContext::new(30).unwrap();
        let r = Rational::from(2);
        let a = lattice_sum(4, &r, 60, LatticeRegion::Full, Execution::Sequential, &ctx).unwrap();
        let b = lattice_sum(4, &r, 60, LatticeRegion::Full, Execution::Parallel, &ctx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn square_lattice_weight_four_sum() {
        // Σ' (m i + n)^{−4} over the Gaussian integers = Γ(1/4)⁸/(960π²)
        let ctx = PrecisionContext::new(20).unwrap();
        let v = lattice_sum(4, &Rational::from(1), 200, LatticeRegion::Full, Execution::default(), &ctx).unwrap();
        let g = ctx.real(0.25).gamma();
        let pi = ctx.pi();
        let expected = g.pow(8u32) / (ctx.real(pi.square_ref()) * 960u32);
        let rel = ctx.real(&v / &expected) - 1u32;
        assert!(rel.abs() < 1e-3, "{v} vs {expected}");
    }

    use rug::ops::Pow;
}
