use rug::ops::Pow;
use rug::Complete;
use rug::{Float, Rational};

use super::gamma::{digamma, gamma, recip_gamma_rational};
use super::{ellip_e, ellip_k, BigReal, PrecisionContext};
use crate::error::{Error, Result};

/// Which evaluation route [`gauss_2f1_with`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Hyp2f1Path {
    /// Pick the route from the argument.
    #[default]
    Auto,
    /// Power series in w; valid for |w| < 1 but slow close to 1.
    DirectSeries,
    /// Expansion around w = 1 in powers of 1 − w; valid for 0 < w < 1.
    Connection,
}

/// Gauss hypergeometric function ₂F₁(a, b; c; w) for real w in [−1, 1].
///
/// At w = 1 the value is Gauss's Γ-quotient when c − a − b > 0 and +∞
/// when c − a − b = 0.
pub fn gauss_2f1(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    w: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    gauss_2f1_with(a, b, c, w, Hyp2f1Path::Auto, ctx)
}

/// ₂F₁(a, b; c; 1 − x) from x itself, keeping full relative precision
/// when x is tiny.
pub fn gauss_2f1_complement(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let h = Hyp::new(a, b, c, ctx)?;
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::domain("gauss_2f1", "argument 1 − x exceeds 1"));
    }
    if x.is_zero() {
        return h.at_one();
    }
    if *x <= 0.5 && !h.is_polynomial() {
        return h.connection(&h.widen(x));
    }
    let w = Float::with_val(h.bits, 1 - h.widen(x));
    h.auto(&w)
}

/// [`gauss_2f1`] with an explicit route, for cross-checking the routes
/// against each other.
pub fn gauss_2f1_with(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    w: &BigReal,
    path: Hyp2f1Path,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let h = Hyp::new(a, b, c, ctx)?;
    let w = h.widen(w);
    if w > 1 || w <= -1 {
        return Err(Error::domain("gauss_2f1", format!("|w| ≥ 1 (w = {})", w.to_f64())));
    }
    match path {
        Hyp2f1Path::Auto => h.auto(&w),
        Hyp2f1Path::DirectSeries => {
            if w == 1 || w == -1 {
                return Err(Error::domain("gauss_2f1", "direct series needs |w| < 1"));
            }
            h.finish(h.direct(&h.a, &h.b, &h.c, &w)?)
        }
        Hyp2f1Path::Connection => {
            if w <= 0 || w >= 1 {
                return Err(Error::domain("gauss_2f1", "connection route needs 0 < w < 1"));
            }
            let x = Float::with_val(h.bits, 1 - &w);
            h.connection(&x)
        }
    }
}

struct Hyp<'a> {
    a: Rational,
    b: Rational,
    c: Rational,
    ctx: &'a PrecisionContext,
    work: PrecisionContext,
    bits: u32,
}

fn is_nonpositive_integer(q: &Rational) -> bool {
    *q.denom() == 1 && *q.numer() <= 0
}

impl<'a> Hyp<'a> {
    fn new(a: &Rational, b: &Rational, c: &Rational, ctx: &'a PrecisionContext) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::pole("gauss_2f1", format!("c = {c}")));
        }
        let work = ctx.raised(10);
        Ok(Self {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            ctx,
            bits: work.bits() + 32,
            work,
        })
    }

    fn is_polynomial(&self) -> bool {
        is_nonpositive_integer(&self.a) || is_nonpositive_integer(&self.b)
    }

    fn widen(&self, x: &Float) -> Float {
        Float::with_val(self.bits, x)
    }

    fn real(&self, q: &Rational) -> Float {
        Float::with_val(self.bits, q)
    }

    fn finish(&self, v: Float) -> Result<BigReal> {
        Ok(self.ctx.real(v))
    }

    fn gamma_q(&self, q: &Rational) -> Result<Float> {
        Ok(self.widen(&gamma(&self.work.real(q), &self.work)?))
    }

    fn rgamma_q(&self, q: &Rational) -> Result<Float> {
        Ok(self.widen(&recip_gamma_rational(q, &self.work)?))
    }

    fn psi_q(&self, q: &Rational) -> Result<Float> {
        Ok(self.widen(&digamma(&self.work.real(q), &self.work)?))
    }

    fn eps(&self) -> Float {
        Float::with_val(self.bits, Float::with_val(self.bits, 1) >> (self.work.bits() + 4))
    }

    /// Number of leading terms that may still grow before the tail is
    /// monotone; truncation is only allowed past this index.
    fn warmup(&self) -> u64 {
        let mag = |q: &Rational| q.to_f64().abs().ceil() as u64;
        mag(&self.a) + mag(&self.b) + mag(&self.c) + 4
    }

    fn auto(&self, w: &Float) -> Result<BigReal> {
        if *w == 1 {
            return self.at_one();
        }
        if self.is_polynomial() {
            return self.finish(self.direct(&self.a, &self.b, &self.c, w)?);
        }
        if *w > 0.5 {
            let x = Float::with_val(self.bits, 1 - w);
            return self.connection(&x);
        }
        if *w < -0.5 {
            // Pfaff: F(a, b; c; w) = (1 − w)^(−a) F(a, c − b; c; w/(w − 1)).
            let one_minus = Float::with_val(self.bits, 1 - w);
            let z = Float::with_val(self.bits, w / Float::with_val(self.bits, w - 1u32));
            let cb = Rational::from(&self.c - &self.b);
            let s = self.direct(&self.a, &cb, &self.c, &z)?;
            let pre = one_minus.pow(&-self.real(&self.a));
            return self.finish(pre * s);
        }
        self.finish(self.direct(&self.a, &self.b, &self.c, w)?)
    }

    fn at_one(&self) -> Result<BigReal> {
        let d = Rational::from(&self.c - &self.a) - &self.b;
        if d > 0 {
            let ca = Rational::from(&self.c - &self.a);
            let cb = Rational::from(&self.c - &self.b);
            let v = self.gamma_q(&self.c)? * self.gamma_q(&d)? * self.rgamma_q(&ca)? * self.rgamma_q(&cb)?;
            self.finish(v)
        } else if self.is_polynomial() {
            self.finish(self.direct(&self.a, &self.b, &self.c, &self.real(&Rational::from(1)))?)
        } else if d == 0 {
            Ok(self.ctx.real(rug::float::Special::Infinity))
        } else {
            Err(Error::pole("gauss_2f1", "w = 1 with c − a − b < 0"))
        }
    }

    /// Σ (a)_n (b)_n / ((c)_n n!) wⁿ.
    fn direct(&self, a: &Rational, b: &Rational, c: &Rational, w: &Float) -> Result<Float> {
        let bits = self.bits;
        let eps = self.eps();
        let warm = self.warmup();
        let mut term = Float::with_val(bits, 1);
        let mut sum = Float::with_val(bits, 1);
        for n in 0..self.ctx.max_terms() {
            let num = Rational::from(a + n) * Rational::from(b + n);
            let den = Rational::from(c + n) * Rational::from(n + 1);
            if num == 0 {
                return Ok(sum);
            }
            term *= self.real(&(num / den));
            term *= w;
            sum += &term;
            if n >= warm && Float::with_val(bits, term.abs_ref()) <= Float::with_val(bits, Float::with_val(self.bits, sum.abs_ref()) * &eps) {
                return Ok(sum);
            }
        }
        Err(Error::NonConvergence {
            op: "gauss_2f1",
            terms: self.ctx.max_terms(),
        })
    }

    /// Expansion around w = 1 in powers of x = 1 − w, 0 < x ≤ 1/2.
    fn connection(&self, x: &Float) -> Result<BigReal> {
        if self.is_polynomial() {
            let w = Float::with_val(self.bits, 1 - x);
            return self.finish(self.direct(&self.a, &self.b, &self.c, &w)?);
        }
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let d = Rational::from(c - a) - b;
        if *d.denom() != 1 {
            let ca = Rational::from(c - a);
            let cb = Rational::from(c - b);
            let gc = self.gamma_q(c)?;
            let coef_a = Float::with_val(self.bits, &gc * self.gamma_q(&d)?) * self.rgamma_q(&ca)? * self.rgamma_q(&cb)?;
            let nd = Rational::from(-&d);
            let coef_b = gc * self.gamma_q(&nd)? * self.rgamma_q(a)? * self.rgamma_q(b)?;
            let s1 = self.direct(a, b, &Rational::from(1 - &d), x)?;
            let s2 = self.direct(&ca, &cb, &Rational::from(1 + &d), x)?;
            let xd = Float::with_val(self.bits, x.pow(&self.real(&d)));
            return self.finish(coef_a * s1 + coef_b * xd * s2);
        }
        let m = d.numer().to_i64().expect("integer offset fits in i64");
        if m == 0 {
            self.log_case_zero(x)
        } else if m > 0 {
            self.log_case_positive(x, m as u64)
        } else {
            self.log_case_negative(x, (-m) as u64)
        }
    }

    /// c = a + b.
    fn log_case_zero(&self, x: &Float) -> Result<BigReal> {
        let (a, b) = (&self.a, &self.b);
        let coef = self.gamma_q(&self.c)? * self.rgamma_q(a)? * self.rgamma_q(b)?;
        let ln_x = Float::with_val(self.bits, x.ln_ref());
        let mut psi_n1 = self.psi_q(&Rational::from(1))?;
        let mut psi_a = self.psi_q(a)?;
        let mut psi_b = self.psi_q(b)?;
        let sum = self.log_series(x, |n, t| {
            let bracket = Float::with_val(self.bits, &psi_n1 * 2u32) - &psi_a - &psi_b - &ln_x;
            let value = Float::with_val(self.bits, t * &bracket);
            let nq = n as u64;
            psi_n1 += Float::with_val(self.bits, nq + 1).recip();
            psi_a += self.real(&Rational::from(a + nq)).recip();
            psi_b += self.real(&Rational::from(b + nq)).recip();
            let ratio = Rational::from(a + nq) * Rational::from(b + nq) / Rational::from((nq + 1) * (nq + 1));
            (value, ratio)
        }, Float::with_val(self.bits, 1))?;
        self.finish(coef * sum)
    }

    /// c = a + b + m, m ≥ 1.
    fn log_case_positive(&self, x: &Float, m: u64) -> Result<BigReal> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let am = Rational::from(a + m);
        let bm = Rational::from(b + m);
        let gc = self.gamma_q(c)?;
        let gm = self.gamma_q(&Rational::from(m))?;

        // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1−m)_n) xⁿ.
        let mut finite = Float::with_val(self.bits, 0);
        let mut t = Float::with_val(self.bits, 1);
        for n in 0..m {
            finite += &t;
            if n + 1 == m {
                break;
            }
            let ratio = Rational::from(a + n) * Rational::from(b + n)
                / (Rational::from(n + 1) * Rational::from(1 + n as i64 - m as i64));
            t *= self.real(&ratio);
            t *= x;
        }
        let finite = finite * &gm * &gc * self.rgamma_q(&am)? * self.rgamma_q(&bm)?;

        // Log part.
        let ln_x = Float::with_val(self.bits, x.ln_ref());
        let mut psi_n1 = self.psi_q(&Rational::from(1))?;
        let mut psi_nm1 = self.psi_q(&Rational::from(m + 1))?;
        let mut psi_a = self.psi_q(&am)?;
        let mut psi_b = self.psi_q(&bm)?;
        let inv_m_fact = Float::with_val(self.bits, rug::Integer::factorial(m as u32).complete()).recip();
        let series = self.log_series(x, |n, t| {
            let bracket = Float::with_val(self.bits, &ln_x - &psi_n1) - &psi_nm1 + &psi_a + &psi_b;
            let value = Float::with_val(self.bits, t * &bracket);
            let nq = n as u64;
            psi_n1 += Float::with_val(self.bits, nq + 1).recip();
            psi_nm1 += Float::with_val(self.bits, nq + m + 1).recip();
            psi_a += self.real(&Rational::from(&am + nq)).recip();
            psi_b += self.real(&Rational::from(&bm + nq)).recip();
            let ratio = Rational::from(&am + nq) * Rational::from(&bm + nq) / Rational::from((nq + 1) * (nq + m + 1));
            (value, ratio)
        }, inv_m_fact)?;
        let mut neg_x_m = Float::with_val(self.bits, x.pow(m as u32));
        if m % 2 == 1 {
            neg_x_m = -neg_x_m;
        }
        let log_part = neg_x_m * gc * self.rgamma_q(a)? * self.rgamma_q(b)? * series;
        self.finish(finite - log_part)
    }

    /// c = a + b − m, m ≥ 1.
    fn log_case_negative(&self, x: &Float, m: u64) -> Result<BigReal> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let a_m = Rational::from(a - m);
        let b_m = Rational::from(b - m);
        let gc = self.gamma_q(c)?;
        let gm = self.gamma_q(&Rational::from(m))?;

        // Γ(m)Γ(c)/(Γ(a)Γ(b)) x^(−m) Σ_{n<m} (a−m)_n (b−m)_n / (n! (1−m)_n) xⁿ.
        let mut finite = Float::with_val(self.bits, 0);
        let mut t = Float::with_val(self.bits, 1);
        for n in 0..m {
            finite += &t;
            if n + 1 == m {
                break;
            }
            let ratio = Rational::from(&a_m + n) * Rational::from(&b_m + n)
                / (Rational::from(n + 1) * Rational::from(1 + n as i64 - m as i64));
            t *= self.real(&ratio);
            t *= x;
        }
        let x_neg_m = Float::with_val(self.bits, x.pow(m as u32)).recip();
        let finite = finite * x_neg_m * gm * &gc * self.rgamma_q(a)? * self.rgamma_q(b)?;

        let ln_x = Float::with_val(self.bits, x.ln_ref());
        let mut psi_n1 = self.psi_q(&Rational::from(1))?;
        let mut psi_nm1 = self.psi_q(&Rational::from(m + 1))?;
        let mut psi_a = self.psi_q(a)?;
        let mut psi_b = self.psi_q(b)?;
        let inv_m_fact = Float::with_val(self.bits, rug::Integer::factorial(m as u32).complete()).recip();
        let series = self.log_series(x, |n, t| {
            let bracket = Float::with_val(self.bits, &ln_x - &psi_n1) - &psi_nm1 + &psi_a + &psi_b;
            let value = Float::with_val(self.bits, t * &bracket);
            let nq = n as u64;
            psi_n1 += Float::with_val(self.bits, nq + 1).recip();
            psi_nm1 += Float::with_val(self.bits, nq + m + 1).recip();
            psi_a += self.real(&Rational::from(a + nq)).recip();
            psi_b += self.real(&Rational::from(b + nq)).recip();
            let ratio = Rational::from(a + nq) * Rational::from(b + nq) / Rational::from((nq + 1) * (nq + m + 1));
            (value, ratio)
        }, inv_m_fact)?;
        let mut coef = gc * self.rgamma_q(&a_m)? * self.rgamma_q(&b_m)?;
        if m % 2 == 1 {
            coef = -coef;
        }
        self.finish(finite - coef * series)
    }

    /// Sums `value_n` where `step(n, t_n)` returns the n-th contribution and
    /// the coefficient ratio t_{n+1}/(t_n x).
    fn log_series<F>(&self, x: &Float, mut step: F, t0: Float) -> Result<Float>
    where
        F: FnMut(usize, &Float) -> (Float, Rational),
    {
        let eps = self.eps();
        let warm = self.warmup() as usize;
        let mut t = t0;
        let mut sum = Float::with_val(self.bits, 0);
        for n in 0..self.ctx.max_terms() as usize {
            let (value, ratio) = step(n, &t);
            let small = Float::with_val(self.bits, value.abs_ref()) <= Float::with_val(self.bits, Float::with_val(self.bits, sum.abs_ref()) * &eps);
            sum += value;
            if n >= warm && small {
                return Ok(sum);
            }
            if ratio == 0 {
                return Ok(sum);
            }
            t *= self.real(&ratio);
            t *= x;
        }
        Err(Error::NonConvergence {
            op: "gauss_2f1",
            terms: self.ctx.max_terms(),
        })
    }
}

/// Legendre function P_ν(w) = ₂F₁(−ν, ν + 1; 1; (1 − w)/2), −1 < w ≤ 1.
pub fn legendre_p(nu: &Rational, w: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *w <= -1 || *w > 1 {
        return Err(Error::domain("legendre_p", "argument must lie in (−1, 1]"));
    }
    let bits = ctx.bits() + 32;
    let a = Rational::from(-nu);
    let b = Rational::from(nu + 1u32);
    let one = Rational::from(1);
    let z = Float::with_val(bits, 1 - Float::with_val(bits, w)) / 2u32;
    if z > 0.5 {
        // Complement 1 − z = (1 + w)/2 is formed exactly from w.
        let x = Float::with_val(bits, 1 + Float::with_val(bits, w)) / 2u32;
        gauss_2f1_complement(&a, &b, &one, &x, ctx)
    } else {
        gauss_2f1(&a, &b, &one, &z, ctx)
    }
}

/// ₂F₁(1/4, 7/4; 1; w), 0 ≤ w < 1, in closed form through complete
/// elliptic integrals of parameter p = 2√w/(1 + √w).
pub fn hyp2f1_quarter_seven(w: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if w.is_sign_negative() && !w.is_zero() || *w >= 1 {
        return Err(Error::domain("hyp2f1_quarter_seven", "argument must lie in [0, 1)"));
    }
    if w.is_zero() {
        return Ok(ctx.real(1));
    }
    let work = ctx.raised(10);
    let s = work.real(w).sqrt();
    let one_plus = work.real(1 + &s);
    let one_minus = work.real(1 - &s);
    let p = work.real(&s * 2u32) / &one_plus;
    let e = ellip_e(&p, &work)?;
    let k = ellip_k(&p, &work)?;
    // −2(E − 2(√w − 1)K) / (3π(√w − 1)√(1 + √w))
    let num = (e + work.real(&one_minus * 2u32) * k) * 2u32;
    let den = work.pi() * 3u32 * &one_minus * one_plus.sqrt();
    Ok(ctx.real(num / den))
}
