//! Algebraic numbers given as a real root of an integer polynomial.
//!
//! The root is selected by a numeric hint and refined by Newton's method;
//! its position among the real roots is read off a Sturm sequence, so the
//! printed root index can be checked exactly.

use std::fmt;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};

/// The `index`-th real root (1-based, ascending) of c₀ + c₁x + … + cₙxⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRootForm {
    /// Coefficients in ascending degree.
    pub coefficients: Vec<Integer>,
    /// Root index as printed alongside the polynomial.
    pub printed_index: usize,
}

/// A root chosen by [`select_poly_root`].
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoot {
    pub value: BigReal,
    /// 1-based position among the distinct real roots in ascending order.
    pub index: usize,
    /// |p(x)| / Σ|cᵢ xⁱ| at the refined root.
    pub residual: BigReal,
}

/// Roots further than this from the hint are not accepted.
const HINT_RADIUS: f64 = 1e-6;
/// Window around the root that must hold no other real root.
const ISOLATION_RADIUS: f64 = 1e-10;

impl PolyRootForm {
    pub fn new(coefficients: Vec<Integer>, printed_index: usize) -> Result<Self> {
        if coefficients.last().is_some_and(|c| *c == 0) {
            return Err(Error::Expression("leading polynomial coefficient is zero".into()));
        }
        if coefficients.len() < 2 {
            return Err(Error::Expression("polynomial must have degree at least one".into()));
        }
        if printed_index == 0 {
            return Err(Error::Expression("root indices start at 1".into()));
        }
        Ok(Self {
            coefficients,
            printed_index,
        })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// p(x) and p'(x) by Horner's rule.
    fn eval_with_derivative(&self, x: &Float) -> (Float, Float) {
        let bits = x.prec();
        let mut p = Float::with_val(bits, 0);
        let mut dp = Float::with_val(bits, 0);
        for c in self.coefficients.iter().rev() {
            dp = dp * x + &p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// |p(x)| / Σ|cᵢ||x|ⁱ: zero at an exact root, scale-free otherwise.
    pub fn residual(&self, x: &BigReal) -> BigReal {
        let bits = x.prec();
        let ax = Float::with_val(bits, x.abs_ref());
        let mut scale = Float::with_val(bits, 0);
        for c in self.coefficients.iter().rev() {
            scale = scale * &ax + Float::with_val(bits, c).abs();
        }
        let (p, _) = self.eval_with_derivative(x);
        if scale.is_zero() {
            return p.abs();
        }
        p.abs() / scale
    }
}

impl fmt::Display for PolyRootForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(poly {}", self.printed_index)?;
        for c in &self.coefficients {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

/// The real root of `form` nearest `hint`, refined to the precision of
/// `ctx`, with its index among the real roots.
///
/// Fails when Newton's method from the hint does not settle on a root in
/// (0, 1) within 10⁻⁶ of the hint, or when that root is not the only real
/// root within 10⁻¹⁰ of itself.
pub fn select_poly_root(form: &PolyRootForm, hint: &BigReal, ctx: &PrecisionContext) -> Result<PolyRoot> {
    let work = ctx.raised(20);
    let x = newton(form, &work.real(hint), &work)?;
    let dist = Float::with_val(work.bits(), &x - hint).abs();
    if dist > HINT_RADIUS || x <= 0 || x >= 1 {
        return Err(Error::RootNotFound {
            op: "select_poly_root",
            detail: format!("no root in (0, 1) near {}", hint.to_f64()),
        });
    }
    let sturm = Sturm::new(form);
    let exact = x.to_rational().unwrap_or_else(|| unreachable!("finite Newton iterate"));
    let delta = Rational::from_f64(ISOLATION_RADIUS).unwrap_or_else(|| unreachable!());
    let lo = Rational::from(&exact - &delta);
    let hi = Rational::from(&exact + &delta);
    let below = sturm.count_at_most(&lo);
    if sturm.count_at_most(&hi) - below != 1 {
        return Err(Error::RootNotFound {
            op: "select_poly_root",
            detail: format!("root near {} is not isolated", x.to_f64()),
        });
    }
    Ok(PolyRoot {
        residual: ctx.real(form.residual(&x)),
        value: ctx.real(&x),
        index: below + 1,
    })
}

fn newton(form: &PolyRootForm, start: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let tol = ctx.eps() * 16u32;
    let mut x = start.clone();
    for _ in 0..200 {
        let (p, dp) = form.eval_with_derivative(&x);
        if dp.is_zero() {
            break;
        }
        let step = p / dp;
        x -= &step;
        let small = Float::with_val(ctx.bits(), x.abs_ref()) * &tol;
        if step.abs() <= small || !x.is_finite() {
            return if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::NonConvergence {
                    op: "select_poly_root",
                    terms: 200,
                })
            };
        }
    }
    Err(Error::NonConvergence {
        op: "select_poly_root",
        terms: 200,
    })
}

/// Sturm sequence p, p′, −rem(p, p′), … over ℚ; counts distinct real roots.
struct Sturm {
    chain: Vec<Vec<Rational>>,
}

impl Sturm {
    fn new(form: &PolyRootForm) -> Self {
        let p: Vec<Rational> = form.coefficients.iter().map(Rational::from).collect();
        let dp = derivative(&p);
        let mut chain = vec![p, dp];
        loop {
            let n = chain.len();
            let r = remainder(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Self { chain }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let signs = self.chain.iter().map(|p| horner(p, x).cmp0());
        count_changes(signs)
    }

    fn changes_at_minus_infinity(&self) -> usize {
        let signs = self.chain.iter().map(|p| {
            let lead = p.last().map_or(std::cmp::Ordering::Equal, Rational::cmp0);
            if (p.len() - 1) % 2 == 1 {
                lead.reverse()
            } else {
                lead
            }
        });
        count_changes(signs)
    }

    /// Number of distinct real roots in (−∞, x].
    fn count_at_most(&self, x: &Rational) -> usize {
        self.changes_at_minus_infinity() - self.sign_changes(x)
    }
}

fn count_changes(signs: impl Iterator<Item = std::cmp::Ordering>) -> usize {
    let mut last = None;
    let mut changes = 0;
    for s in signs.filter(|s| s.is_ne()) {
        if last.is_some_and(|l| l != s) {
            changes += 1;
        }
        last = Some(s);
    }
    changes
}

fn horner(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u32)).collect()
}

/// Remainder of a ÷ b, trailing zeros trimmed (empty for the zero polynomial).
fn remainder(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap_or_else(|| unreachable!("divisor is non-zero"));
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = Rational::from(r.last().unwrap_or_else(|| unreachable!()) / lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&factor * c);
        }
        r.pop();
        while r.last().is_some_and(|c| *c == 0) {
            r.pop();
        }
    }
    r
}
