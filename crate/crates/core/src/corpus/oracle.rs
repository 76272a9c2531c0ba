//! Independent numeric routes that corpus closed forms are checked against.

use std::fmt;

use rug::{Float, Rational};

use super::expr::{eval_exact, ExactExpr, Parser};
use crate::error::{Error, Result};
use crate::moduli::{alpha_from_theta, beta_solve, duplicate_k, elliptic_alpha, modular2_alpha, solve_m, triplicate_alpha};
use crate::mpcore::{agm_pi, BigReal, PrecisionContext};
use crate::piseries::{series_j, series_sum, series_t, terms_for_precision};

/// Which computation produces the reference value for a corpus entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Oracle {
    /// α_r from the cubic theta quotient.
    AlphaTheta { r: Rational },
    /// J_r of the 1/π series.
    SeriesJ { r: Rational },
    /// T_r of the 1/π series.
    SeriesT { r: Rational },
    /// β_r from the ₂F₁(1/6, 5/6; 1) ratio equation.
    Beta { r: Rational },
    /// k_r = √m_r from the K ratio equation.
    K { r: Rational },
    /// The elliptic alpha function a(r).
    EllipticAlpha { r: Rational },
    /// m_{4ˢr} by `steps` duplications of m_r.
    DuplicateM { r: Rational, steps: u32 },
    /// k_{4ˢr} by `steps` duplications of m_r.
    DuplicateK { r: Rational, steps: u32 },
    /// α_{9ˢr} by `steps` triplications of the theta-quotient α_r.
    Triplicate { r: Rational, steps: u32 },
    /// α_{4ˢr} by `steps` applications of the degree-2 modular equation.
    Modular2 { r: Rational, steps: u32 },
    /// scale · π · Σ (1/6)_n(5/6)_n(1/2)_n/n!³ Jⁿ(6n + 1 − T), with π from
    /// the AGM.
    RamanujanSum {
        j: ExactExpr,
        t: ExactExpr,
        scale: ExactExpr,
    },
}

impl Oracle {
    /// Parses `name arg …`, arguments in prefix syntax.
    pub fn parse(text: &str, parser: &Parser) -> Result<Self> {
        let text = text.trim();
        let (name, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let args = parser.expressions(rest)?;
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Expression(format!("oracle `{name}` takes {n} arguments, got {}", args.len())))
            }
        };
        let rational = |i: usize| -> Result<Rational> {
            let q = args[i]
                .exact_rational()
                .ok_or_else(|| Error::Expression(format!("oracle `{name}`: argument {} must be rational", i + 1)))?;
            if q <= 0 {
                return Err(Error::Expression(format!("oracle `{name}`: r must be positive")));
            }
            Ok(q)
        };
        let steps = |i: usize| -> Result<u32> {
            args[i]
                .exact_rational()
                .filter(|q| *q.denom() == 1)
                .and_then(|q| q.numer().to_u32())
                .ok_or_else(|| Error::Expression(format!("oracle `{name}`: step count must be a natural number")))
        };
        let one = |make: fn(Rational) -> Oracle| -> Result<Oracle> {
            want(1)?;
            Ok(make(rational(0)?))
        };
        let chain = |make: fn(Rational, u32) -> Oracle| -> Result<Oracle> {
            want(2)?;
            Ok(make(rational(0)?, steps(1)?))
        };
        match name {
            "alpha_theta" => one(|r| Oracle::AlphaTheta { r }),
            "J" => one(|r| Oracle::SeriesJ { r }),
            "T" => one(|r| Oracle::SeriesT { r }),
            "beta" => one(|r| Oracle::Beta { r }),
            "k" => one(|r| Oracle::K { r }),
            "a_elliptic" => one(|r| Oracle::EllipticAlpha { r }),
            "m_dup" => chain(|r, steps| Oracle::DuplicateM { r, steps }),
            "k_dup" => chain(|r, steps| Oracle::DuplicateK { r, steps }),
            "alpha_trip" => chain(|r, steps| Oracle::Triplicate { r, steps }),
            "alpha_mod2" => chain(|r, steps| Oracle::Modular2 { r, steps }),
            "ramanujan_sum" => {
                want(3)?;
                let mut it = args.clone().into_iter();
                let mut next = || it.next().unwrap_or_else(|| unreachable!("arity checked"));
                Ok(Oracle::RamanujanSum {
                    j: next(),
                    t: next(),
                    scale: next(),
                })
            }
            _ => Err(Error::Expression(format!("unknown oracle `{name}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Oracle::AlphaTheta { .. } => "alpha_theta",
            Oracle::SeriesJ { .. } => "J",
            Oracle::SeriesT { .. } => "T",
            Oracle::Beta { .. } => "beta",
            Oracle::K { .. } => "k",
            Oracle::EllipticAlpha { .. } => "a_elliptic",
            Oracle::DuplicateM { .. } => "m_dup",
            Oracle::DuplicateK { .. } => "k_dup",
            Oracle::Triplicate { .. } => "alpha_trip",
            Oracle::Modular2 { .. } => "alpha_mod2",
            Oracle::RamanujanSum { .. } => "ramanujan_sum",
        }
    }

    /// The reference value at the precision of `ctx`.
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        let w = ctx.raised(5);
        let iterate = |mut x: Float, steps: u32, f: &dyn Fn(&Float) -> Result<Float>| -> Result<Float> {
            for _ in 0..steps {
                x = f(&x)?;
            }
            Ok(x)
        };
        let value = match self {
            Oracle::AlphaTheta { r } => alpha_from_theta(r, &w)?,
            Oracle::SeriesJ { r } => series_j(r, &w)?,
            Oracle::SeriesT { r } => series_t(r, &w)?,
            Oracle::Beta { r } => beta_solve(r, &w)?,
            Oracle::K { r } => solve_m(r, &w)?.sqrt(),
            Oracle::EllipticAlpha { r } => elliptic_alpha(r, &w)?,
            Oracle::DuplicateM { r, steps } => iterate(solve_m(r, &w)?, *steps, &|m| Ok(duplicate_k(m)))?,
            Oracle::DuplicateK { r, steps } => iterate(solve_m(r, &w)?, *steps, &|m| Ok(duplicate_k(m)))?.sqrt(),
            Oracle::Triplicate { r, steps } => {
                iterate(alpha_from_theta(r, &w)?, *steps, &|a| Ok(triplicate_alpha(a)))?
            }
            Oracle::Modular2 { r, steps } => iterate(alpha_from_theta(r, &w)?, *steps, &|a| modular2_alpha(a, &w))?,
            Oracle::RamanujanSum { j, t, scale } => {
                let j = eval_exact(j, &w)?;
                let t = eval_exact(t, &w)?;
                let scale = eval_exact(scale, &w)?;
                let n = terms_for_precision(&j, &w)?;
                let sum = series_sum(&j, &t, n, &w)?;
                w.real(scale * agm_pi(&w)) * sum
            }
        };
        Ok(ctx.real(value))
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |q: &Rational| ExactExpr::literal(q.clone());
        write!(f, "{}", self.name())?;
        match self {
            Oracle::AlphaTheta { r }
            | Oracle::SeriesJ { r }
            | Oracle::SeriesT { r }
            | Oracle::Beta { r }
            | Oracle::K { r }
            | Oracle::EllipticAlpha { r } => write!(f, " {}", lit(r)),
            Oracle::DuplicateM { r, steps }
            | Oracle::DuplicateK { r, steps }
            | Oracle::Triplicate { r, steps }
            | Oracle::Modular2 { r, steps } => write!(f, " {} {steps}", lit(r)),
            Oracle::RamanujanSum { j, t, scale } => write!(f, " {j} {t} {scale}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Parser::new();
        for text in [
            "alpha_theta 7",
            "J 2",
            "T 1/3",
            "k_dup 27 3",
            "alpha_mod2 16 1",
            "ramanujan_sum 27/125 5/14 1",
            "ramanujan_sum (/ (- 5643000 (* 3990168 (^ 2 1/2))) 1520875) 1 (* 2 (^ 2 1/2))",
        ] {
            let o = Oracle::parse(text, &p).unwrap();
            assert_eq!(o.to_string(), text);
            assert_eq!(Oracle::parse(&o.to_string(), &p).unwrap(), o);
        }
    }

    #[test]
    fn malformed_oracles() {
        let p = Parser::new();
        for text in ["nope 1", "J", "J 1 2", "J (^ 2 1/2)", "k_dup 2 1/2", "beta -1", "ramanujan_sum 1 2"] {
            assert!(Oracle::parse(text, &p).is_err(), "{text}");
        }
    }

    #[test]
    fn duplication_reaches_k8() {
        let c = PrecisionContext::new(40).unwrap();
        let via_dup = Oracle::DuplicateK {
            r: Rational::from(2),
            steps: 1,
        }
        .eval(&c)
        .unwrap();
        let direct = Oracle::K { r: Rational::from(8) }.eval(&c).unwrap();
        let d = Float::with_val(c.bits(), &via_dup - &direct).abs();
        assert!(d < c.tolerance(2) * &direct);
    }
}
