//! q-expansions: Eisenstein series, lattice sums, theta functions and the
//! hyperbolic sums Σ nˢ/(e^{2πn√r} − 1).
//!
//! All powers of the nome are formed as exp(n·log q) from an exactly
//! computed log q, never by repeated multiplication of a rounded q.

mod eisenstein;
mod lattice;
mod nome;
mod theta;

pub use eisenstein::{eis_g, eis_p, eis_q, eis_r, hyperbolic_sum, lambert_sum, EisensteinTriple};
pub use lattice::{lattice_g2, lattice_g3, lattice_sum, LatticeRegion};
pub use nome::Nome;
pub use theta::{
    cubic_theta_a, cubic_theta_c, cubic_theta_pair, cubic_theta_radius, jacobi_theta2, jacobi_theta3,
    singular_m_theta, CubicThetaPair,
};
