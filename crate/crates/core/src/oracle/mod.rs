//! Brute-force numerics used to check the closed forms: spectral free-particle
//! propagation, adaptive Gauss–Kronrod quadrature and 2×2 Hermitian eigenvalues.

mod eigen;
mod quadrature;
mod spectral;

pub use eigen::hermitian_2x2_eigenvalues;
pub use quadrature::{adaptive_integrate, Quadrature, MAX_DEPTH};
pub use spectral::{momentum_grid, spectral_propagate, GridSpec, EDGE_LIMIT};
