//! Precision contexts and the special functions everything else is built on.

mod agm;
mod bernoulli;
mod context;
mod gamma;
mod hyper;

pub use agm::{agm, agm_pi, ellip_e, ellip_k, ellip_k_complement, ellip_k_defect, EllipticPair};
pub use bernoulli::{bernoulli, zeta_even};
pub use context::{BigReal, PrecisionContext};
pub use gamma::{digamma, gamma as gamma_fn, recip_gamma_rational};
pub use hyper::{
    gauss_2f1, gauss_2f1_complement, gauss_2f1_with, hyp2f1_quarter_seven, legendre_p,
    Hyp2f1Path,
};
