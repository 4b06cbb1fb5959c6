use crate::specfun::{gauss_legendre, sphere_area, Quadrature1D};
use num_complex::Complex64;

/// Symmetry of a density under `u -> -u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// The catalogue of test densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityKind {
    /// `exp(-|u|^2/2)`.
    RadialGaussian,
    /// `exp(-|u - s e_1|^2/2)`.
    ShiftedGaussian { shift: f64 },
    /// `u_1 exp(-|u|^2/2)`, a pure degree-one harmonic.
    HarmonicGaussian,
    /// Smoothed annulus `(tanh((|u|-a)/w) - tanh((|u|-b)/w)) / 2`.
    RadialShell { inner: f64, outer: f64, width: f64 },
    /// `[|u| > 1] / |u|^(n+1)`.
    Sigma,
}

/// A Fourier density `phi` on `R^n` with the metadata the quadratures need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceDensity {
    pub n: usize,
    pub kind: DensityKind,
    /// Constant multiplier applied to the catalogue formula.
    pub scale: f64,
}

impl SourceDensity {
    pub fn new(n: usize, kind: DensityKind) -> Self {
        assert!(n >= 2, "densities live on R^n with n >= 2");
        SourceDensity { n, kind, scale: 1.0 }
    }

    pub fn radial_gaussian(n: usize) -> Self {
        Self::new(n, DensityKind::RadialGaussian)
    }

    pub fn shifted_gaussian(n: usize) -> Self {
        Self::new(n, DensityKind::ShiftedGaussian { shift: 1.0 })
    }

    pub fn harmonic_gaussian(n: usize) -> Self {
        Self::new(n, DensityKind::HarmonicGaussian)
    }

    pub fn radial_shell(n: usize) -> Self {
        Self::new(n, DensityKind::RadialShell { inner: 1.0, outer: 2.0, width: 0.2 })
    }

    pub fn sigma(n: usize) -> Self {
        Self::new(n, DensityKind::Sigma)
    }

    /// Every catalogue entry in dimension `n`.
    pub fn catalog(n: usize) -> Vec<SourceDensity> {
        vec![
            Self::radial_gaussian(n),
            Self::shifted_gaussian(n),
            Self::harmonic_gaussian(n),
            Self::radial_shell(n),
            Self::sigma(n),
        ]
    }

    /// Look up a catalogue entry by name.
    pub fn by_name(name: &str, n: usize) -> Option<Self> {
        Some(match name {
            "radial_gaussian" => Self::radial_gaussian(n),
            "shifted_gaussian" => Self::shifted_gaussian(n),
            "harmonic_gaussian" => Self::harmonic_gaussian(n),
            "radial_shell" => Self::radial_shell(n),
            "sigma" => Self::sigma(n),
            _ => return None,
        })
    }

    /// Same density multiplied by `c`.
    pub fn scaled(mut self, c: f64) -> Self {
        self.scale *= c;
        self
    }

    pub fn catalog_id(&self) -> &'static str {
        match self.kind {
            DensityKind::RadialGaussian => "radial_gaussian",
            DensityKind::ShiftedGaussian { .. } => "shifted_gaussian",
            DensityKind::HarmonicGaussian => "harmonic_gaussian",
            DensityKind::RadialShell { .. } => "radial_shell",
            DensityKind::Sigma => "sigma",
        }
    }

    pub fn is_radial(&self) -> bool {
        matches!(
            self.kind,
            DensityKind::RadialGaussian | DensityKind::RadialShell { .. } | DensityKind::Sigma
        )
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            DensityKind::HarmonicGaussian => Parity::Odd,
            DensityKind::ShiftedGaussian { shift } if shift != 0.0 => Parity::Mixed,
            _ => Parity::Even,
        }
    }

    /// Largest `alpha` with `∫ |u|^alpha |phi| < ∞`.
    pub fn max_alpha(&self) -> Option<u32> {
        match self.kind {
            DensityKind::Sigma => Some(0),
            _ => None,
        }
    }

    pub fn supports_alpha(&self, alpha: u32) -> bool {
        self.max_alpha().is_none_or(|m| alpha <= m)
    }

    /// `phi(u)` for a point given by its radius and unit direction.
    #[inline]
    pub fn eval_polar(&self, rho: f64, dir: &[f64]) -> f64 {
        let v = match self.kind {
            DensityKind::RadialGaussian => (-0.5 * rho * rho).exp(),
            DensityKind::ShiftedGaussian { shift } => {
                (-0.5 * (rho * rho - 2.0 * shift * rho * dir[0] + shift * shift)).exp()
            }
            DensityKind::HarmonicGaussian => rho * dir[0] * (-0.5 * rho * rho).exp(),
            DensityKind::RadialShell { .. } | DensityKind::Sigma => self.radial_value(rho),
        };
        self.scale * v
    }

    /// `phi(u)` at a Cartesian point.
    pub fn eval(&self, u: &[f64]) -> Complex64 {
        let rho = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rho == 0.0 {
            let mut e1 = vec![0.0; self.n];
            e1[0] = 1.0;
            return Complex64::new(self.eval_polar(0.0, &e1), 0.0);
        }
        let dir: Vec<f64> = u.iter().map(|x| x / rho).collect();
        Complex64::new(self.eval_polar(rho, &dir), 0.0)
    }

    /// Profile of a radial density (unscaled), `phi(u) = phi_0(|u|)`.
    fn radial_value(&self, rho: f64) -> f64 {
        match self.kind {
            DensityKind::RadialGaussian => (-0.5 * rho * rho).exp(),
            DensityKind::RadialShell { inner, outer, width } => {
                0.5 * (((rho - inner) / width).tanh() - ((rho - outer) / width).tanh())
            }
            DensityKind::Sigma => {
                if rho > 1.0 {
                    rho.powi(-(self.n as i32) - 1)
                } else {
                    0.0
                }
            }
            _ => panic!("radial_value on a non-radial density"),
        }
    }

    /// `phi_0(rho)` (including the scale) for radial densities.
    pub fn radial_profile(&self, rho: f64) -> Option<f64> {
        self.is_radial().then(|| self.scale * self.radial_value(rho))
    }

    /// Upper bound for `max_{|u| = rho} |phi(u)|`.
    pub fn sphere_max(&self, rho: f64) -> f64 {
        let v = match self.kind {
            DensityKind::ShiftedGaussian { shift } => (-0.5 * (rho - shift.abs()).powi(2)).exp(),
            DensityKind::HarmonicGaussian => rho * (-0.5 * rho * rho).exp(),
            _ => self.radial_value(rho),
        };
        self.scale.abs() * v
    }

    /// Inner edge of the support (the jump of `sigma`).
    pub fn support_start(&self) -> f64 {
        match self.kind {
            DensityKind::Sigma => 1.0,
            _ => 0.0,
        }
    }

    /// Radius `P` with `∫_{|u|>P} |u|^alpha |phi| < 1e-12 (1 + ‖phi°‖_1)`.
    ///
    /// For `sigma` the tail is algebraic; a fixed cut is returned and the
    /// tail is handled in closed form by the callers.
    pub fn decay_radius(&self, alpha: u32) -> f64 {
        if let DensityKind::Sigma = self.kind {
            return SIGMA_CUT;
        }
        let area = sphere_area(self.n as u32);
        let gl = gauss_legendre(32);
        let tail = |p: f64| -> f64 {
            area * gl.integrate_on(p, p + 30.0, |rho| {
                rho.powi((self.n - 1) as i32 + alpha as i32) * self.sphere_max(rho)
            })
        };
        let scale = self.scale.abs().max(1e-300);
        let mut p = 1.0;
        while tail(p) > 1e-12 * scale && p < 200.0 {
            p += 0.5;
        }
        p
    }

    /// Characteristic length of the dual profile in `t`, used for grid extents.
    pub fn profile_decay_scale(&self) -> f64 {
        match self.kind {
            DensityKind::RadialShell { width, .. } => 1.0 / width,
            _ => 1.0,
        }
    }
}

/// Radial cut used for `sigma`; the remainder `∫_P^∞ rho^-2` is added analytically.
pub const SIGMA_CUT: f64 = 64.0;

/// Layout of the radial Gauss–Legendre panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    pub panel_width: f64,
    pub points: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions { panel_width: 1.0, points: 20 }
    }
}

/// Composite radial rule on `[support_start, decay_radius(alpha)]`.
pub fn radial_rule(density: &SourceDensity, alpha: u32, opts: RadialOptions) -> Quadrature1D {
    let a = density.support_start();
    let b = density.decay_radius(alpha);
    let panels = ((b - a) / opts.panel_width).ceil().max(1.0) as usize;
    Quadrature1D::composite_uniform(opts.points, a, b, panels)
}
