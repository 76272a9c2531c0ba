use rug::ops::Pow;
use rug::float::Constant;
use rug::{Assign, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision binary floating point number.
pub type BigReal = Float;

/// Working precision for a computation.
///
/// `digits` is the number of significant decimal digits the caller wants;
/// `guard` extra digits are carried internally so that rounding in long
/// sums and cancellations does not eat into the requested digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
    max_terms: u64,
}

const LOG2_10: f64 = std::f64::consts::LOG2_10;

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const MAX_DIGITS: u32 = 1_000_000;
    pub const DEFAULT_GUARD: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        if !(Self::MIN_DIGITS..=Self::MAX_DIGITS).contains(&digits) {
            return Err(Error::Precision(format!(
                "{digits} digits requested; supported range is {}..={}",
                Self::MIN_DIGITS,
                Self::MAX_DIGITS
            )));
        }
        Ok(Self {
            digits,
            guard: Self::DEFAULT_GUARD,
            max_terms: 1_000_000,
        })
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Same guard and term limit, `extra` more requested digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            max_terms: self.max_terms,
            ..*self
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// Working precision in bits, guard digits included.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard) as f64 * LOG2_10).ceil() as u32
    }

    /// A new number at working precision.
    pub fn real<T>(&self, value: T) -> BigReal
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    /// Relative size of one unit in the last working place: 2^(1 − bits).
    pub fn eps(&self) -> BigReal {
        let mut e = self.real(1);
        e >>= self.bits() - 1;
        e
    }

    /// 10^(−digits + slack): the tolerance a result accurate to the
    /// requested digits (minus `slack`) must meet.
    pub fn tolerance(&self, slack: i32) -> BigReal {
        let exp = -(self.digits as i32) + slack;
        self.real(10).pow(exp)
    }

    pub fn pi(&self) -> BigReal {
        self.real(Constant::Pi)
    }
}
