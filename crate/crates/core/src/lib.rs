//! Numerical toolkit for Barron-space functions and their ridge-function
//! representations.
//!
//! The pipeline runs from a Fourier density `phi` through its zonal
//! decomposition and closed-form dual profiles `h^alpha(theta, t)` to
//! dual-Radon reconstructions, shallow networks with `delta^(-alpha)`
//! activations and random-feature (RVFL) sampling, together with the
//! covering-number concentration bounds that control those networks.
//!
//! Fourier convention throughout: `f(x) = ∫ phi(u) exp(i<u,x>) du`, no prefactor.

pub mod barron;
pub mod bounds;
pub mod error;
pub mod mellin;
pub mod par;
pub mod radon;
pub mod rvfl;
pub mod specfun;
pub mod spherical;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used for every complex value in the crate.
pub type ComplexScalar = Complex64;

/// Library version recorded in experiment provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
