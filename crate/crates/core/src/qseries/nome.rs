use rug::Rational;

use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};

/// The nomes attached to a positive rational r.
#[derive(Debug, Clone, PartialEq)]
pub struct Nome {
    pub r: Rational,
    /// q = e^{−π√r}.
    pub q: BigReal,
    /// log q = −π√r.
    pub log_q: BigReal,
    /// The cubic nome e^{−2π√(r/3)}.
    pub q_cubic: BigReal,
    pub log_q_cubic: BigReal,
}

impl Nome {
    pub fn new(r: &Rational, ctx: &PrecisionContext) -> Result<Self> {
        if *r <= 0 {
            return Err(Error::domain("nome", format!("r must be positive, got {r}")));
        }
        let log_q = Self::log_q_of(r, ctx);
        let log_q_cubic = Self::log_q_cubic_of(r, ctx);
        Ok(Self {
            r: r.clone(),
            q: ctx.real(log_q.exp_ref()),
            q_cubic: ctx.real(log_q_cubic.exp_ref()),
            log_q,
            log_q_cubic,
        })
    }

    /// −π√r at working precision.
    pub fn log_q_of(r: &Rational, ctx: &PrecisionContext) -> BigReal {
        let wide = ctx.raised(5);
        let s = wide.real(r).sqrt();
        ctx.real(-(wide.pi() * s))
    }

    /// −2π√(r/3) at working precision.
    pub fn log_q_cubic_of(r: &Rational, ctx: &PrecisionContext) -> BigReal {
        let third = Rational::from(r / 3u32);
        let wide = ctx.raised(5);
        let s = wide.real(&third).sqrt();
        ctx.real(-(wide.pi() * s * 2u32))
    }
}
