use super::density::{DensityKind, SourceDensity};
use crate::specfun::{bessel_kernel, gauss_jacobi, gauss_legendre, sine_integral, sphere_area};
use crate::spherical::gegenbauer_index;
use std::f64::consts::PI;

/// `F{sigma}(x)` at `|x| = s` by the radial Bessel formula
/// `(2π)^{n/2} ∫_1^∞ rho^-2 J_ν(rho s)/(rho s)^ν d rho`, with an asymptotic tail.
pub fn sigma_fourier(density: &SourceDensity, s: f64) -> f64 {
    assert!(matches!(density.kind, DensityKind::Sigma));
    let n = density.n;
    let s = s.abs();
    if s == 0.0 {
        return density.scale * sphere_area(n as u32);
    }
    let nu = gegenbauer_index(n);
    // z = rho s:  (2π)^{n/2} s ∫_s^∞ z^-2 K(z) dz
    let gl = gauss_legendre(16);
    let mut breaks = vec![s];
    let mut a = s;
    while a < 1.0 {
        a = (2.0 * a).min(1.0);
        breaks.push(a);
    }
    let zc = a + 800.0;
    while a < zc {
        a += 1.0;
        breaks.push(a);
    }
    let body: f64 = breaks
        .windows(2)
        .map(|p| gl.integrate_on(p[0], p[1], |z| bessel_kernel(nu, nu, z) / (z * z)))
        .sum();
    // K(z) ~ sqrt(2/π) z^{-ν-1/2} cos(z - ω), integrated by parts twice.
    let z = *breaks.last().unwrap();
    let p = nu + 2.5;
    let om = (2.0 * nu + 1.0) * PI / 4.0;
    let tail = (2.0 / PI).sqrt()
        * (-z.powf(-p) * (z - om).sin() + p * z.powf(-p - 1.0) * (z - om).cos());
    density.scale * (2.0 * PI).powf(n as f64 / 2.0) * s * (body + tail)
}

/// Closed-form pieces of `F{sigma}` at `|x| = s` for a given constant `kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaClosedForm {
    /// The smooth part `G(s) = kappa ∫_{-1}^{1} (1-v^2)^{(n-3)/2} (cos(vs) + vs Si(vs)) dv`.
    pub g: f64,
    /// The linear part `-kappa π s/(n-1)`.
    pub linear: f64,
}

impl SigmaClosedForm {
    pub fn total(&self) -> f64 {
        self.g + self.linear
    }
}

const SIGMA_GJ_POINTS: usize = 48;

pub fn sigma_closed_form(n: usize, s: f64, kappa: f64) -> SigmaClosedForm {
    let rule = gauss_jacobi(SIGMA_GJ_POINTS, (n as f64 - 3.0) / 2.0);
    let g = kappa
        * rule.integrate(|v| {
            let z = v * s;
            z.cos() + z * sine_integral(z)
        });
    let linear = -kappa * PI * s.abs() / (n as f64 - 1.0);
    SigmaClosedForm { g, linear }
}

/// `G(s)` alone, with `|s|` entering only through even functions.
pub fn sigma_g(n: usize, s: f64, kappa: f64) -> f64 {
    sigma_closed_form(n, s, kappa).g
}

/// `ΔG = G'' + (n-1) G'/s` by central differences with step `h`.
pub fn sigma_g_laplacian(n: usize, s: f64, kappa: f64, h: f64) -> f64 {
    let gp = sigma_g(n, s + h, kappa);
    let g0 = sigma_g(n, s, kappa);
    let gm = sigma_g(n, s - h, kappa);
    (gp - 2.0 * g0 + gm) / (h * h) + (n as f64 - 1.0) * (gp - gm) / (2.0 * h * s)
}

/// Constant matching the closed form to the direct transform at the origin.
pub fn calibrate_kappa(density: &SourceDensity) -> f64 {
    sigma_fourier(density, 0.0) / sigma_closed_form(density.n, 0.0, 1.0).total()
}

/// The constant printed with the radial formula, `|S^{n-1}|`.
pub fn printed_kappa(n: usize) -> f64 {
    sphere_area(n as u32)
}

/// `|S^{n-2}|`, the constant of the radial Fourier formula.
pub fn radial_kappa(n: usize) -> f64 {
    sphere_area(n as u32 - 1)
}

