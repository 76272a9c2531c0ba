use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::Rational;
use serde::Serialize;

use super::algebraic::beta_from_alpha3r;
use super::elliptic_alpha::elliptic_alpha_from_m;
use super::singular::{alpha_from_theta, solve_m_sqrt};
use crate::error::{Error, Result};
use crate::mpcore::{BigReal, PrecisionContext};

/// How a record field was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Root of its defining equation.
    Solved,
    /// Obtained from other moduli by an algebraic or q-series map.
    Transformed,
    /// Read from an exact closed form.
    Corpus,
}

/// m_r, k_r, α_r, β_r and a(r) for one rational r.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusRecord {
    pub r: Rational,
    pub m: BigReal,
    /// 1 − m_r, carried separately for full relative precision.
    pub m_complement: BigReal,
    pub k: BigReal,
    pub alpha: BigReal,
    pub beta: BigReal,
    pub a_elliptic: BigReal,
    pub m_provenance: Provenance,
    pub alpha_provenance: Provenance,
    pub beta_provenance: Provenance,
    pub a_provenance: Provenance,
}

impl ModulusRecord {
    /// m by root finding; α from cubic theta functions; β from α_{3r};
    /// a(r) from E, K at m.
    pub fn compute(r: &Rational, ctx: &PrecisionContext) -> Result<Self> {
        if *r <= 0 {
            return Err(Error::domain("modulus_record", "r must be positive"));
        }
        let w = ctx.raised(10);
        let s = w.real(r).sqrt();
        let m = solve_m_sqrt(&s, &w)?;
        let alpha = alpha_from_theta(r, &w)?;
        let alpha3 = alpha_from_theta(&Rational::from(r * 3u32), &w)?;
        let beta = beta_from_alpha3r(&alpha3);
        let a = elliptic_alpha_from_m(&s, &m.x, &w)?;
        Ok(Self {
            r: r.clone(),
            k: ctx.real(m.x.sqrt_ref()),
            m: ctx.real(&m.x),
            m_complement: ctx.real(&m.xc),
            alpha: ctx.real(alpha),
            beta: ctx.real(beta),
            a_elliptic: ctx.real(a),
            m_provenance: Provenance::Solved,
            alpha_provenance: Provenance::Transformed,
            beta_provenance: Provenance::Transformed,
            a_provenance: Provenance::Transformed,
        })
    }
}

/// A thread-safe memo of records keyed by (r, digits).
///
/// Population is idempotent: two threads racing on the same key compute
/// the same record and either result may be kept.
#[derive(Debug, Default)]
pub struct ModulusCache {
    map: RwLock<HashMap<(Rational, u32), Arc<ModulusRecord>>>,
}

impl ModulusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, r: &Rational, ctx: &PrecisionContext) -> Result<Arc<ModulusRecord>> {
        let key = (r.clone(), ctx.digits());
        if let Some(hit) = self.map.read().expect("modulus cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let rec = Arc::new(ModulusRecord::compute(r, ctx)?);
        let mut map = self.map.write().expect("modulus cache poisoned");
        Ok(Arc::clone(map.entry(key).or_insert(rec)))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("modulus cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
