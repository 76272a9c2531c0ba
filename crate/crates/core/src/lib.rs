//! Arbitrary-precision machinery for Ramanujan-type series for 1/π.
//!
//! The crate is layered bottom-up:
//!
//! - [`mpcore`]: precision contexts, AGM, complete elliptic integrals,
//!   Gauss ₂F₁ (direct series and the 1−w connection formulas), Legendre
//!   functions, Gamma and digamma.
//! - [`qseries`]: Eisenstein series P, Q, R, lattice sums, cubic theta
//!   functions and the hyperbolic sums Σ nˢ/(e^{2πn√r} − 1).
//! - [`moduli`]: singular moduli k_r, cubic moduli α_r, sextic moduli β_r,
//!   the elliptic alpha function and the algebraic maps between them.
//! - [`piseries`]: the (1/6, 5/6, 1/2) hypergeometric series for 1/π and
//!   π extraction from it.
//! - [`corpus`]: exact nested-radical closed forms and the engine that
//!   checks them against the numeric routes above.
//!
//! Every numeric routine takes a [`PrecisionContext`] explicitly and is a
//! pure function of its inputs.

pub mod corpus;
pub mod error;
pub mod moduli;
pub mod mpcore;
pub mod par;
pub mod piseries;
pub mod qseries;

pub use error::{Error, Result};
pub use mpcore::{BigReal, PrecisionContext};
pub use par::Execution;
