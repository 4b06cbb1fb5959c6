use super::density::{DensityKind, RadialOptions, SourceDensity};
use super::profile::{CosTail, RadialBasis};
use super::sigma::sigma_fourier;
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_kernel, gauss_jacobi, gauss_legendre, gegenbauer, gegenbauer_all, harmonic_dim,
    i_pow, sphere_area,
};
use crate::spherical::{dot, gegenbauer_index, SphereQuadrature};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

/// Angular moments `A_l(rho) = ∫ phi(rho a) Z_l(theta, a) da` of a density
/// about a fixed axis `theta`, on the nodes of a radial rule.
#[derive(Debug, Clone)]
pub struct ZonalExpansion {
    pub density: SourceDensity,
    pub theta: Vec<f64>,
    pub l_max: u32,
    pub alpha_max: u32,
    basis: Arc<RadialBasis>,
    rho: Vec<f64>,
    weight: Vec<f64>,
    /// `[l][k]` moments.
    moments: Vec<f64>,
}

impl ZonalExpansion {
    /// Moments for `l <= l_max`, with a radial range wide enough for `alpha <= alpha_max`.
    pub fn new(
        density: SourceDensity,
        theta: &[f64],
        l_max: u32,
        alpha_max: u32,
        sphere: &SphereQuadrature,
        opts: RadialOptions,
    ) -> Self {
        let n = density.n;
        assert_eq!(sphere.n, n);
        let basis = Arc::new(RadialBasis::for_density(&density, alpha_max, opts));
        let (rho, weight): (Vec<f64>, Vec<f64>) = basis.nodes().unzip();
        let k = rho.len();
        let lp = l_max as usize + 1;
        let mut moments = vec![0.0; lp * k];
        let lam = gegenbauer_index(n);
        let norms: Vec<f64> = (0..=l_max)
            .map(|l| harmonic_dim(l, n as u32) as f64 / sphere_area(n as u32))
            .collect();
        let mut c = Vec::with_capacity(lp);
        for (a, w) in sphere.iter() {
            gegenbauer_all(l_max, lam, dot(theta, a), &mut c);
            for (j, &r) in rho.iter().enumerate() {
                let v = w * density.eval_polar(r, a);
                if v == 0.0 {
                    continue;
                }
                for l in 0..lp {
                    moments[l * k + j] += v * norms[l] * c[l];
                }
            }
        }
        ZonalExpansion {
            density,
            theta: theta.to_vec(),
            l_max,
            alpha_max,
            basis,
            rho,
            weight,
            moments,
        }
    }

    fn row(&self, l: u32) -> &[f64] {
        assert!(l <= self.l_max, "degree above the expansion order");
        let k = self.rho.len();
        &self.moments[l as usize * k..(l as usize + 1) * k]
    }

    /// `f_l(θ,t) = (2π)^{n/2} i^l ∫ rho^(n-1) A_l(rho) J_{l+ν}(t rho)/(t rho)^ν d rho`, `ν = (n-2)/2`.
    pub fn f_piece(&self, l: u32, t: f64) -> Complex64 {
        let n = self.density.n;
        if matches!(self.density.kind, DensityKind::Sigma) {
            // Radial with an algebraic tail: only l = 0 survives and f_0(θ,t) = f(t).
            return if l == 0 {
                Complex64::new(sigma_fourier(&self.density, t.abs()), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        let nu = gegenbauer_index(n);
        let order = l as f64 + nu;
        let s: f64 = self
            .row(l)
            .iter()
            .zip(self.rho.iter().zip(&self.weight))
            .map(|(&a, (&r, &w))| {
                if a == 0.0 {
                    return 0.0;
                }
                // J_{l+ν}(z)/z^ν = z^l · J_{l+ν}(z)/z^{l+ν}
                let z = t * r;
                w * r.powi(n as i32 - 1) * a * z.powi(l as i32) * bessel_kernel(order, order, z)
            })
            .sum();
        i_pow(l as i64) * (s * (2.0 * std::f64::consts::PI).powf(n as f64 / 2.0))
    }

    /// `h_l^α(θ,t) = ∫ rho^(n-1+α) A_l(rho) cis_l(t rho + α π/2) d rho`; `α = 0` gives `G_l`.
    ///
    /// Valid for all real `t`; the closed form itself obeys the parity law
    /// `h(θ,-t) = (-1)^{l+α} h(θ,t)`.
    pub fn g_piece(&self, l: u32, alpha: u32, t: f64) -> Complex64 {
        assert!(alpha <= self.alpha_max, "alpha above the expansion range");
        let n = self.density.n;
        let shift = alpha as f64 * FRAC_PI_2;
        let pw = n as i32 - 1 + alpha as i32;
        let s: f64 = self
            .row(l)
            .iter()
            .zip(self.rho.iter().zip(&self.weight))
            .map(|(&a, (&r, &w))| {
                let x = t * r + shift;
                let c = if l % 2 == 0 { x.cos() } else { x.sin() };
                w * r.powi(pw) * a * c
            })
            .sum();
        let mut s = s;
        if l == 0 && alpha == 0 && matches!(self.density.kind, DensityKind::Sigma) {
            s += CosTail { amplitude: self.density.scale, cut: self.basis.end() }.eval(t);
        }
        if l % 2 == 0 {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, s)
        }
    }

    /// `G_l^α` extended to `t < 0` by `(-1)^{l+α} G_l^α(θ,-t)`.
    pub fn g_parity_extended(&self, l: u32, alpha: u32, t: f64) -> Complex64 {
        if t >= 0.0 {
            self.g_piece(l, alpha, t)
        } else {
            let v = self.g_piece(l, alpha, -t);
            if (l + alpha) % 2 == 0 {
                v
            } else {
                -v
            }
        }
    }

    /// `2|S^{n-2}| ∫_0^1 G_l(θ,tv) C_l(v) (1-v^2)^{(n-3)/2} dv`, which reproduces `f_l(θ,t)`.
    pub fn inversion_rhs(&self, l: u32, t: f64, points: usize) -> Complex64 {
        let n = self.density.n;
        let rule = gauss_jacobi(points, (n as f64 - 3.0) / 2.0);
        let lam = gegenbauer_index(n);
        let s: Complex64 = rule.integrate(|v| self.g_parity_extended(l, 0, t * v) * gegenbauer(l, lam, v));
        s * sphere_area(n as u32 - 1)
    }

    /// `2|S^{n-2}| ∫_0^1 G_l(θ,tv) (1/(n-1)) C_{l-1}^{n/2}(v) (1-v^2)^{(n-1)/2} dv/v` for even `l >= 2`.
    pub fn tail_rhs(&self, l: u32, t: f64, points: usize) -> Complex64 {
        assert!(l >= 2 && l % 2 == 0, "tail identity needs an even degree >= 2");
        let n = self.density.n as f64;
        let rule = gauss_jacobi(2 * points.div_ceil(2), (n - 1.0) / 2.0);
        let s: Complex64 = rule.integrate(|v| {
            self.g_piece(l, 0, t * v) * (gegenbauer(l - 1, n / 2.0, v) / v)
        });
        s * (sphere_area(self.density.n as u32 - 1) / (n - 1.0))
    }

    /// `F_l(θ,t) = -∫_t^∞ f_l(θ,v) dv/v` by panels of width 1 until the increments die out.
    pub fn tail_integral(&self, l: u32, t: f64) -> Result<Complex64> {
        if t <= 0.0 {
            return Err(Error::Domain(format!("tail integral needs t > 0, got {t}")));
        }
        const CAP: f64 = 400.0;
        let gl = gauss_legendre(24);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut a = t;
        let mut quiet = 0;
        // First panels grow geometrically to follow the 1/v weight near small t.
        while a < CAP {
            let b = if a < 1.0 { (2.0 * a).min(a + 1.0) } else { a + 1.0 };
            let inc: Complex64 = gl.integrate_on(a, b, |v| self.f_piece(l, v) / v);
            acc += inc;
            quiet = if inc.norm() <= 1e-15 * (1.0 + acc.norm()) { quiet + 1 } else { 0 };
            if quiet >= 3 && b > 2.0 * t {
                return Ok(-acc);
            }
            a = b;
        }
        Err(Error::Integration(format!("tail increments above tolerance at v = {CAP}")))
    }
}

/// `f_l(θ,t)` by a one-off expansion.
pub fn zonal_piece_f(
    density: &SourceDensity,
    l: u32,
    theta: &[f64],
    t: f64,
    sphere: &SphereQuadrature,
) -> Complex64 {
    ZonalExpansion::new(*density, theta, l, 0, sphere, RadialOptions::default()).f_piece(l, t)
}

/// `h_l^α(θ,t)` (or `G_l` for `α = 0`) by a one-off expansion.
pub fn g_profile(
    density: &SourceDensity,
    alpha: u32,
    l: u32,
    theta: &[f64],
    t: f64,
    sphere: &SphereQuadrature,
) -> Complex64 {
    ZonalExpansion::new(*density, theta, l, alpha, sphere, RadialOptions::default())
        .g_parity_extended(l, alpha, t)
}

/// `F_l(θ,t)` by a one-off expansion.
pub fn tail_integral_f(
    density: &SourceDensity,
    l: u32,
    theta: &[f64],
    t: f64,
    sphere: &SphereQuadrature,
) -> Result<Complex64> {
    if l < 2 || l % 2 == 1 {
        return Err(Error::Domain(format!("tail integral defined for even l >= 2, got {l}")));
    }
    ZonalExpansion::new(*density, theta, l, 0, sphere, RadialOptions::default())
        .tail_integral(l, t)
}
