//! Test Barron functions `f = F{phi}`, their norms, zonal pieces, closed-form
//! dual profiles and the inversion-quadrature identities.

mod density;
mod profile;
mod sigma;
mod zonal;

pub use density::{radial_rule, DensityKind, Parity, RadialOptions, SourceDensity, SIGMA_CUT};
pub use profile::{
    h_profile, norm_1_inf, norm_from_table, tabulate, ClosedFormProfile, CosTail, DualProfile,
    ExpSum, NormEstimate, ProfileTable, RadialBasis, TGrid,
};
pub use sigma::{
    calibrate_kappa, printed_kappa, radial_kappa, sigma_closed_form, sigma_fourier, sigma_g,
    sigma_g_laplacian, SigmaClosedForm,
};
pub use zonal::{g_profile, tail_integral_f, zonal_piece_f, ZonalExpansion};

use crate::par::{sum_range, Execution};
use crate::specfun::{bessel_kernel, sphere_area};
use crate::spherical::{dot, gegenbauer_index, sphere_quadrature, SphereQuadrature};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Quadrature resolution shared by the Fourier-side routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization {
    pub sphere_resolution: usize,
    pub radial: RadialOptions,
    pub exec: Execution,
}

impl Discretization {
    pub fn for_dimension(n: usize) -> Self {
        let sphere_resolution = match n {
            2 => 80,
            3 => 40,
            _ => 16,
        };
        Discretization { sphere_resolution, radial: RadialOptions::default(), exec: Execution::default() }
    }

    pub fn sphere(&self, n: usize) -> SphereQuadrature {
        sphere_quadrature(n, self.sphere_resolution)
    }
}

/// `f(x) = ∫ phi(u) e^{i<u,x>} du`.
pub fn eval_f(density: &SourceDensity, x: &[f64], disc: &Discretization) -> Complex64 {
    let n = density.n;
    assert_eq!(x.len(), n);
    let s = dot(x, x).sqrt();
    if let DensityKind::Sigma = density.kind {
        return Complex64::new(sigma_fourier(density, s), 0.0);
    }
    let basis = RadialBasis::for_density(density, 0, disc.radial);
    if density.is_radial() {
        let nu = gegenbauer_index(n);
        let v: f64 = basis
            .nodes()
            .map(|(r, w)| {
                w * r.powi(n as i32 - 1) * density.radial_profile(r).unwrap() * bessel_kernel(nu, nu, r * s)
            })
            .sum();
        return Complex64::new(v * (2.0 * PI).powf(n as f64 / 2.0), 0.0);
    }
    let sphere = disc.sphere(n);
    let zero = vec![Complex64::new(0.0, 0.0); basis.len()];
    sum_range(sphere.len(), disc.exec, |i| {
        let th = sphere.node(i);
        let plus: Vec<Complex64> = basis
            .nodes()
            .map(|(r, w)| Complex64::new(w * r.powi(n as i32 - 1) * density.eval_polar(r, th), 0.0))
            .collect();
        basis.exp_sum(&plus, &zero, dot(th, x)) * sphere.weights[i]
    })
}

/// `‖u -> |u|^α phi(u)‖_1`.
pub fn barron_norm(density: &SourceDensity, alpha: u32, disc: &Discretization) -> f64 {
    assert!(density.supports_alpha(alpha), "alpha outside the decay support");
    let n = density.n;
    let basis = RadialBasis::for_density(density, alpha, disc.radial);
    let pw = n as i32 - 1 + alpha as i32;
    if density.is_radial() {
        let mut v: f64 = basis
            .nodes()
            .map(|(r, w)| w * r.powi(pw) * density.radial_profile(r).unwrap().abs())
            .sum();
        if let DensityKind::Sigma = density.kind {
            v += density.scale.abs() / basis.end();
        }
        return v * sphere_area(n as u32);
    }
    let sphere = disc.sphere(n);
    sum_range(sphere.len(), disc.exec, |i| {
        let th = sphere.node(i);
        let s: f64 = basis.nodes().map(|(r, w)| w * r.powi(pw) * density.eval_polar(r, th).abs()).sum();
        Complex64::new(s * sphere.weights[i], 0.0)
    })
    .re
}
