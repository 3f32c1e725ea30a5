//! Spectra of the perturbed Kohn Laplacian `□_b^t` of the Rossi sphere on
//! spherical-harmonic subspaces of `L²(S³)`.
//!
//! - [`poly`]: exact polynomials in `z, z̄` and the operators `L`, `Lbar`, `Δ`, `□_b`, `□_b^t`
//! - [`harmonics`]: bases of `H_{p,q}(S³)` and `H_m(S³)`, harmonic decomposition
//! - [`rossi`]: matrices of `□_b^t`, brute force and closed-form tridiagonal blocks
//! - [`tridiag`]: symmetrization, continuants, Sturm bisection and the decay bound

pub mod error;
pub mod harmonics;
pub mod linalg;
pub mod poly;
pub mod rossi;
pub mod scalar;
pub mod tridiag;
pub mod unipoly;

pub use error::{Error, Result};
pub use scalar::{ComplexRational, RossiParam};
