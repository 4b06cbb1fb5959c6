//! Special functions and combinatorial primitives.

mod bessel;
mod combinatorics;
mod gamma;
mod gegenbauer;
mod quadrature;
mod sine_integral;

pub use bessel::{bessel_j, bessel_kernel};
pub use combinatorics::{
    ball_volume, binomial, harmonic_dim, pochhammer, sphere_area, stirling_first,
    stirling_first_signed, stirling_first_unsigned,
};
pub use gamma::{ln_gamma_real, log_gamma_complex};
pub use gegenbauer::{gegenbauer, gegenbauer_all};
pub use quadrature::{gauss_jacobi, gauss_jacobi_ab, gauss_legendre, Quadrature1D};
pub use sine_integral::{cos_sin_integral, sine_integral};

use num_complex::Complex64;

/// `cis_l(x)`: `cos x` for even `l`, `i sin x` for odd `l`.
#[inline]
pub fn cis_parity(l: u32, x: f64) -> Complex64 {
    if l % 2 == 0 {
        Complex64::new(x.cos(), 0.0)
    } else {
        Complex64::new(0.0, x.sin())
    }
}

/// `i^k` for an integer exponent.
#[inline]
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}
