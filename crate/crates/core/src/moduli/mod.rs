//! Singular moduli and the maps between them.
//!
//! Three families are handled side by side, all as functions of a
//! positive rational r:
//!
//! - the classical parameter m_r = k_r², with K(1 − m)/K(m) = √r;
//! - the cubic modulus α_r, with z(1 − α)/z(α) = √r for
//!   z = ₂F₁(1/3, 2/3; 1; ·);
//! - the sextic modulus β_r, with u(1 − β)/u(β) = √r for
//!   u = ₂F₁(1/6, 5/6; 1; ·).
//!
//! Elliptic integrals always take the parameter m = k², never k.

mod algebraic;
mod elliptic_alpha;
mod record;
mod singular;
mod solver;
mod closed_forms;

pub use algebraic::{
    beta_3r_from_alpha, beta_from_alpha3r, duplicate_k, j_from_alpha3r, modular2_alpha, multiplier_m3,
    triplicate_alpha, MultiplierValue,
};
pub use elliptic_alpha::{elliptic_alpha, elliptic_alpha_from_m, verify_a1, verify_a2};
pub use record::{ModulusCache, ModulusRecord, Provenance};
pub use singular::{
    alpha_from_theta, alpha_ratio_residual, alpha_solve, beta_ratio_residual, beta_solve, k_ratio_residual, solve_m,
    solve_m_sqrt, SolvedModulus,
};
pub use closed_forms::{solve_thm2_system, thm1_eval, thm2_inputs, thm3_eval};
