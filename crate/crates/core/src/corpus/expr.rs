//! Exact expression trees over the integers and rationals, their prefix
//! syntax, and certified evaluation.

use std::collections::HashMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};

/// A closed form built from integer and rational literals with +, −, ×, ÷
/// and powers with rational exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactExpr {
    Integer(Integer),
    Rational(Rational),
    Sum(Vec<ExactExpr>),
    /// First child minus the rest; a single child is negated.
    Difference(Vec<ExactExpr>),
    Product(Vec<ExactExpr>),
    Quotient(Box<ExactExpr>, Box<ExactExpr>),
    /// Base raised to a reduced rational exponent p/q. For even q the base
    /// must be non-negative; for odd q the real root is taken.
    Power(Box<ExactExpr>, Rational),
}

impl ExactExpr {
    /// A literal, stored as an integer node when the denominator is 1.
    pub fn literal(value: Rational) -> Self {
        if *value.denom() == 1 {
            ExactExpr::Integer(value.into_numer_denom().0)
        } else {
            ExactExpr::Rational(value)
        }
    }

    pub fn power(base: ExactExpr, exponent: Rational) -> Self {
        ExactExpr::Power(Box::new(base), exponent)
    }

    pub fn sqrt(base: ExactExpr) -> Self {
        Self::power(base, Rational::from((1, 2)))
    }

    /// Parses a single expression in prefix syntax. `$name` references are
    /// not allowed here; see [`Parser`] for definitions.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new().expression(text)
    }

    /// The exact value if the tree only involves rational operations and
    /// integer powers.
    pub fn exact_rational(&self) -> Option<Rational> {
        match self {
            ExactExpr::Integer(n) => Some(Rational::from(n)),
            ExactExpr::Rational(q) => Some(q.clone()),
            ExactExpr::Sum(xs) => xs.iter().try_fold(Rational::new(), |acc, x| Some(acc + x.exact_rational()?)),
            ExactExpr::Product(xs) => {
                xs.iter().try_fold(Rational::from(1), |acc, x| Some(acc * x.exact_rational()?))
            }
            ExactExpr::Difference(xs) => {
                let first = xs.first()?.exact_rational()?;
                if xs.len() == 1 {
                    return Some(-first);
                }
                xs[1..].iter().try_fold(first, |acc, x| Some(acc - x.exact_rational()?))
            }
            ExactExpr::Quotient(a, b) => {
                let d = b.exact_rational()?;
                if d == 0 {
                    return None;
                }
                Some(a.exact_rational()? / d)
            }
            ExactExpr::Power(b, e) => {
                if *e.denom() != 1 {
                    return None;
                }
                let p = e.numer().to_i32()?;
                let b = b.exact_rational()?;
                if b == 0 && p < 0 {
                    return None;
                }
                Some(b.pow(p))
            }
        }
    }

    /// Evaluates at a fixed binary precision, without certification.
    pub fn eval_bits(&self, bits: u32) -> Result<BigReal> {
        let fold = |xs: &[ExactExpr], init: Float, f: fn(Float, Float) -> Float| -> Result<Float> {
            xs.iter().try_fold(init, |acc, x| Ok(f(acc, x.eval_bits(bits)?)))
        };
        match self {
            ExactExpr::Integer(n) => Ok(Float::with_val(bits, n)),
            ExactExpr::Rational(q) => Ok(Float::with_val(bits, q)),
            ExactExpr::Sum(xs) => fold(xs, Float::with_val(bits, 0), |a, b| a + b),
            ExactExpr::Product(xs) => fold(xs, Float::with_val(bits, 1), |a, b| a * b),
            ExactExpr::Difference(xs) => {
                let first = xs
                    .first()
                    .ok_or_else(|| Error::Expression("empty difference".into()))?
                    .eval_bits(bits)?;
                if xs.len() == 1 {
                    return Ok(-first);
                }
                fold(&xs[1..], first, |a, b| a - b)
            }
            ExactExpr::Quotient(a, b) => {
                let d = b.eval_bits(bits)?;
                if d.is_zero() {
                    return Err(Error::pole("eval_exact", "division by zero"));
                }
                Ok(a.eval_bits(bits)? / d)
            }
            ExactExpr::Power(b, e) => rational_power(b.eval_bits(bits)?, e),
        }
    }
}

/// x^(p/q) with the real q-th root.
fn rational_power(x: Float, e: &Rational) -> Result<Float> {
    let p = e
        .numer()
        .to_i32()
        .ok_or_else(|| Error::Expression(format!("exponent {e} too large")))?;
    let q = e
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Expression(format!("exponent {e} too large")))?;
    if x.is_zero() {
        return match p {
            0 => Ok(Float::with_val(x.prec(), 1)),
            p if p > 0 => Ok(x),
            _ => Err(Error::pole("eval_exact", "zero raised to a negative power")),
        };
    }
    let negative = x.is_sign_negative();
    if negative && q % 2 == 0 {
        return Err(Error::domain("eval_exact", format!("negative base {} under an even root", x.to_f64())));
    }
    let mag = x.abs();
    let root = match q {
        1 => mag,
        2 => mag.sqrt(),
        3 => mag.cbrt(),
        _ => mag.root(q),
    };
    let value = root.pow(p);
    Ok(if negative && p % 2 != 0 { -value } else { value })
}

/// Evaluates `expr` to `ctx.digits()` correct digits.
///
/// The expression is evaluated at the working precision of `ctx` and again
/// at twice as many digits; when the two agree to `ctx.digits()` digits the
/// higher-precision value is returned. Otherwise (heavy cancellation, or a
/// radicand that only looks negative because of rounding) the precision
/// keeps doubling, up to three times.
pub fn eval_exact(expr: &ExactExpr, ctx: &PrecisionContext) -> Result<BigReal> {
    const DOUBLINGS: u32 = 3;
    let tol = ctx.tolerance(0);
    let mut level = *ctx;
    let mut previous = expr.eval_bits(level.bits());
    for step in 1..=DOUBLINGS {
        level = level.raised(level.digits());
        let current = expr.eval_bits(level.bits());
        match (&previous, &current) {
            // An exact zero at two precisions may still be cancellation;
            // only the last level is trusted with it.
            (Ok(a), Ok(b)) if (!b.is_zero() || step == DOUBLINGS) && agree(a, b, &tol) => {
                return Ok(ctx.real(b));
            }
            (_, Err(e)) if step == DOUBLINGS => return Err(e.clone()),
            _ => {}
        }
        previous = current;
    }
    Err(Error::Precision(format!(
        "closed form could not be certified to {} digits",
        ctx.digits()
    )))
}

fn agree(a: &Float, b: &Float, tol: &Float) -> bool {
    let bits = a.prec().max(b.prec());
    let diff = Float::with_val(bits, a - b).abs();
    let scale = Float::with_val(bits, b.abs_ref());
    if scale.is_zero() {
        return diff <= *tol;
    }
    diff <= scale * tol
}

impl fmt::Display for ExactExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, xs: &[ExactExpr]| -> fmt::Result {
            write!(f, "({op}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            write!(f, ")")
        };
        match self {
            ExactExpr::Integer(n) => write!(f, "{n}"),
            ExactExpr::Rational(q) => write!(f, "{q}"),
            ExactExpr::Sum(xs) => list(f, "+", xs),
            ExactExpr::Difference(xs) => list(f, "-", xs),
            ExactExpr::Product(xs) => list(f, "*", xs),
            ExactExpr::Quotient(a, b) => write!(f, "(/ {a} {b})"),
            ExactExpr::Power(b, e) => write!(f, "(^ {b} {e})"),
        }
    }
}

/// A token of the prefix syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Open,
    Close,
    Atom(String),
}

pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom)));
        }
    };
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut atom, &mut out);
                out.push(if ch == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}

pub(crate) fn parse_literal(atom: &str) -> Result<Rational> {
    let valid = !atom.is_empty()
        && atom
            .trim_start_matches('-')
            .chars()
            .all(|c| c.is_ascii_digit() || c == '/');
    let parsed = valid.then(|| Rational::parse(atom).ok()).flatten();
    parsed
        .map(Rational::from)
        .ok_or_else(|| Error::Expression(format!("`{atom}` is not an integer or rational literal")))
}

/// Prefix-syntax reader with a table of named definitions.
#[derive(Debug, Default, Clone)]
pub struct Parser {
    definitions: HashMap<String, ExactExpr>,
}

impl Parser {
    pub fn new() -> Self {
        Self::default()
    }

    /// Makes `$name` stand for `expr` in everything parsed afterwards.
    pub fn define(&mut self, name: &str, expr: ExactExpr) -> Result<()> {
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Expression(format!("invalid definition name `{name}`")));
        }
        if self.definitions.insert(name.to_string(), expr).is_some() {
            return Err(Error::Expression(format!("`{name}` defined twice")));
        }
        Ok(())
    }

    /// Parses text holding exactly one expression.
    pub fn expression(&self, text: &str) -> Result<ExactExpr> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let e = self.next(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Expression(format!("trailing input after expression in `{text}`")));
        }
        Ok(e)
    }

    /// Parses a whitespace-separated sequence of expressions.
    pub fn expressions(&self, text: &str) -> Result<Vec<ExactExpr>> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let mut out = Vec::new();
        while pos < tokens.len() {
            out.push(self.next(&tokens, &mut pos)?);
        }
        Ok(out)
    }

    pub(crate) fn next(&self, tokens: &[Token], pos: &mut usize) -> Result<ExactExpr> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| Error::Expression("unexpected end of expression".into()))?;
        *pos += 1;
        match tok {
            Token::Close => Err(Error::Expression("unexpected `)`".into())),
            Token::Atom(a) => match a.strip_prefix('$') {
                Some(name) => self
                    .definitions
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::Expression(format!("undefined name `${name}`"))),
                None => Ok(ExactExpr::literal(parse_literal(a)?)),
            },
            Token::Open => {
                let op = match tokens.get(*pos) {
                    Some(Token::Atom(op)) => op.clone(),
                    _ => return Err(Error::Expression("expected an operator after `(`".into())),
                };
                *pos += 1;
                if op == "^" {
                    let base = self.next(tokens, pos)?;
                    let exp = match tokens.get(*pos) {
                        Some(Token::Atom(a)) if !a.starts_with('$') => parse_literal(a)?,
                        _ => return Err(Error::Expression("exponent must be a rational literal".into())),
                    };
                    *pos += 1;
                    expect_close(tokens, pos, "^")?;
                    return Ok(ExactExpr::power(base, exp));
                }
                let mut args = Vec::new();
                while !matches!(tokens.get(*pos), Some(Token::Close) | None) {
                    args.push(self.next(tokens, pos)?);
                }
                expect_close(tokens, pos, &op)?;
                build(&op, args)
            }
        }
    }
}

fn expect_close(tokens: &[Token], pos: &mut usize, op: &str) -> Result<()> {
    if tokens.get(*pos) != Some(&Token::Close) {
        return Err(Error::Expression(format!("unterminated `({op}`")));
    }
    *pos += 1;
    Ok(())
}

fn build(op: &str, mut args: Vec<ExactExpr>) -> Result<ExactExpr> {
    let arity = |ok: bool, want: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Expression(format!("`{op}` takes {want} operands")))
        }
    };
    match op {
        "+" => arity(!args.is_empty(), "one or more").map(|_| ExactExpr::Sum(args)),
        "*" => arity(!args.is_empty(), "one or more").map(|_| ExactExpr::Product(args)),
        "-" => arity(!args.is_empty(), "one or more").map(|_| ExactExpr::Difference(args)),
        "/" => {
            arity(args.len() == 2, "two")?;
            let b = args.pop().unwrap_or_else(|| unreachable!());
            let a = args.pop().unwrap_or_else(|| unreachable!());
            Ok(ExactExpr::Quotient(Box::new(a), Box::new(b)))
        }
        _ => Err(Error::Expression(format!("unknown operator `{op}`"))),
    }
}
