use super::density::{DensityKind, RadialOptions, SourceDensity};
use crate::par::{map_range, Execution};
use crate::specfun::{cos_sin_integral, gauss_legendre, i_pow};
use crate::spherical::SphereQuadrature;
use num_complex::Complex64;
use std::sync::Arc;

/// Uniform composite Gauss–Legendre rule on `[start, start + panels*width]`,
/// stored so that `exp(i rho t)` factors into a panel phase and a local phase.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialBasis {
    pub start: f64,
    pub width: f64,
    pub panels: usize,
    /// Node offsets inside a panel, in `[0, width]`.
    pub local: Vec<f64>,
    /// Weights of one panel.
    pub local_weights: Vec<f64>,
}

impl RadialBasis {
    pub fn new(start: f64, end: f64, opts: RadialOptions) -> Self {
        let panels = ((end - start) / opts.panel_width).ceil().max(1.0) as usize;
        let width = (end - start) / panels as f64;
        let base = gauss_legendre(opts.points).mapped(0.0, width);
        RadialBasis { start, width, panels, local: base.nodes, local_weights: base.weights }
    }

    /// Basis covering the decay support of `density` for moment order `alpha`.
    pub fn for_density(density: &SourceDensity, alpha: u32, opts: RadialOptions) -> Self {
        Self::new(density.support_start(), density.decay_radius(alpha), opts)
    }

    pub fn len(&self) -> usize {
        self.panels * self.local.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> f64 {
        self.start + self.width * self.panels as f64
    }

    /// `(rho_k, w_k)` for all nodes in panel order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.panels).flat_map(move |p| {
            let off = self.start + p as f64 * self.width;
            self.local.iter().zip(&self.local_weights).map(move |(&x, &w)| (off + x, w))
        })
    }

    /// `Σ_k (a_k e^{i rho_k t} + b_k e^{-i rho_k t})`.
    pub fn exp_sum(&self, plus: &[Complex64], minus: &[Complex64], t: f64) -> Complex64 {
        let step = Complex64::cis(self.width * t);
        let loc: Vec<Complex64> = self.local.iter().map(|&x| Complex64::cis(x * t)).collect();
        let mut phase = Complex64::cis(self.start * t);
        let j = self.local.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..self.panels {
            let (a, b) = (&plus[p * j..(p + 1) * j], &minus[p * j..(p + 1) * j]);
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..j {
                let e = phase * loc[k];
                s += a[k] * e + b[k] * e.conj();
            }
            acc += s;
            // Re-anchor periodically to bound phase drift.
            phase = if (p + 1) % 16 == 0 {
                Complex64::cis((self.start + (p + 1) as f64 * self.width) * t)
            } else {
                phase * step
            };
        }
        acc
    }
}

/// Amplitude of `∫_P^∞ cos(t rho)/rho^2 d rho`, the analytic remainder of `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosTail {
    pub amplitude: f64,
    pub cut: f64,
}

impl CosTail {
    /// `amplitude * ∫_cut^∞ cos(t rho) rho^-2 d rho`.
    pub fn eval(&self, t: f64) -> f64 {
        let u = t.abs();
        let p = self.cut;
        if u == 0.0 {
            return self.amplitude / p;
        }
        let (si, _) = cos_sin_integral(u * p);
        self.amplitude * ((u * p).cos() / p - u * (std::f64::consts::FRAC_PI_2 - si))
    }
}

/// `h(t) = Σ_k (c⁺_k e^{i rho_k t} + c⁻_k e^{-i rho_k t})` plus an optional cosine tail.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    pub basis: Arc<RadialBasis>,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
    pub tail: Option<CosTail>,
}

impl ExpSum {
    pub fn eval(&self, t: f64) -> Complex64 {
        let v = self.basis.exp_sum(&self.plus, &self.minus, t);
        match self.tail {
            Some(tail) => v + tail.eval(t),
            None => v,
        }
    }

    /// `k`-th derivative in `t`; the cosine tail is not differentiated.
    pub fn derivative(&self, k: u32, t: f64) -> Complex64 {
        if k == 0 {
            return self.eval(t);
        }
        let ik = i_pow(k as i64);
        let mik = i_pow(-(k as i64));
        let (plus, minus): (Vec<_>, Vec<_>) = self
            .basis
            .nodes()
            .zip(self.plus.iter().zip(&self.minus))
            .map(|((rho, _), (&a, &b))| {
                let rk = rho.powi(k as i32);
                (a * ik * rk, b * mik * rk)
            })
            .unzip();
        self.basis.exp_sum(&plus, &minus, t)
    }

    /// Values on `t0 + j dt`, `j < count`, by phasor rotation.
    pub fn eval_grid(&self, t0: f64, dt: f64, count: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); count];
        const BLOCK: usize = 128;
        for ((rho, _), (&a, &b)) in self.basis.nodes().zip(self.plus.iter().zip(&self.minus)) {
            let step = Complex64::cis(rho * dt);
            let mut start = 0;
            while start < count {
                let mut e = Complex64::cis(rho * (t0 + start as f64 * dt));
                let end = (start + BLOCK).min(count);
                for o in &mut out[start..end] {
                    *o += a * e + b * e.conj();
                    e *= step;
                }
                start = end;
            }
        }
        if let Some(tail) = self.tail {
            for (j, o) in out.iter_mut().enumerate() {
                *o += tail.eval(t0 + j as f64 * dt);
            }
        }
        out
    }

    /// Multiply all coefficients by `c`.
    pub fn scale(&mut self, c: f64) {
        self.plus.iter_mut().for_each(|z| *z *= c);
        self.minus.iter_mut().for_each(|z| *z *= c);
        if let Some(t) = &mut self.tail {
            t.amplitude *= c;
        }
    }
}

/// A function on `S^(n-1) × R`.
pub trait DualProfile: Send + Sync {
    fn dim(&self) -> usize;
    fn alpha(&self) -> u32;
    fn eval(&self, theta: &[f64], t: f64) -> Complex64;
    /// Exponential-sum form of `t -> h(theta, t)`, when one exists.
    fn spectral(&self, _theta: &[f64]) -> Option<ExpSum> {
        None
    }
    /// Scale of decay in `t`, used for grid extents.
    fn decay_scale(&self) -> f64 {
        1.0
    }
    /// True when `h(θ, t)` does not depend on `θ`.
    fn theta_independent(&self) -> bool {
        false
    }
}

/// The unified closed form
/// `h^α(θ,t) = ½ i^α ∫ρ^(n-1) φ°(θρ) e^{itρ} dρ + ½ (-i)^α ∫ρ^(n-1) φ°(-θρ) e^{-itρ} dρ`.
#[derive(Debug, Clone)]
pub struct ClosedFormProfile {
    pub density: SourceDensity,
    pub alpha: u32,
    pub basis: Arc<RadialBasis>,
}

impl ClosedFormProfile {
    pub fn new(density: SourceDensity, alpha: u32, opts: RadialOptions) -> Self {
        assert!(density.supports_alpha(alpha), "alpha outside the decay support");
        let basis = Arc::new(RadialBasis::for_density(&density, alpha, opts));
        ClosedFormProfile { density, alpha, basis }
    }

    /// Profile on a caller-chosen radial basis.
    pub fn with_basis(density: SourceDensity, alpha: u32, basis: Arc<RadialBasis>) -> Self {
        ClosedFormProfile { density, alpha, basis }
    }

    pub fn exp_sum(&self, theta: &[f64]) -> ExpSum {
        let n = self.density.n;
        let neg: Vec<f64> = theta.iter().map(|x| -x).collect();
        let cp = i_pow(self.alpha as i64) * 0.5;
        let cm = i_pow(-(self.alpha as i64)) * 0.5;
        let pw = (n - 1) as i32 + self.alpha as i32;
        let (plus, minus) = self
            .basis
            .nodes()
            .map(|(rho, w)| {
                let m = w * rho.powi(pw);
                (
                    cp * (m * self.density.eval_polar(rho, theta)),
                    cm * (m * self.density.eval_polar(rho, &neg)),
                )
            })
            .unzip();
        let tail = match self.density.kind {
            DensityKind::Sigma if self.basis.end() < f64::INFINITY => {
                Some(CosTail { amplitude: self.density.scale, cut: self.basis.end() })
            }
            _ => None,
        };
        ExpSum { basis: self.basis.clone(), plus, minus, tail }
    }
}

impl DualProfile for ClosedFormProfile {
    fn dim(&self) -> usize {
        self.density.n
    }
    fn alpha(&self) -> u32 {
        self.alpha
    }
    fn eval(&self, theta: &[f64], t: f64) -> Complex64 {
        self.exp_sum(theta).eval(t)
    }
    fn spectral(&self, theta: &[f64]) -> Option<ExpSum> {
        Some(self.exp_sum(theta))
    }
    fn decay_scale(&self) -> f64 {
        self.density.profile_decay_scale()
    }
    fn theta_independent(&self) -> bool {
        self.density.is_radial()
    }
}

/// `h^α(θ, t)` by the unified closed form with default radial options.
pub fn h_profile(density: &SourceDensity, alpha: u32, theta: &[f64], t: f64) -> Complex64 {
    ClosedFormProfile::new(*density, alpha, RadialOptions::default()).eval(theta, t)
}

/// Uniform grid `t_j = -T + j (2T/(count-1))`, symmetric and containing 0 for odd `count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TGrid {
    pub half_width: f64,
    pub count: usize,
}

impl TGrid {
    /// Default grid `T = 4 (1 + decay scale)` with 2049 points.
    pub fn for_profile<P: DualProfile + ?Sized>(profile: &P) -> Self {
        TGrid { half_width: 4.0 * (1.0 + profile.decay_scale()), count: 2049 }
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.count - 1) as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.step()
    }
}

/// Profile tabulated over sphere nodes and a `t`-grid.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    pub grid: TGrid,
    /// `max_j |h(θ_i, t_j)|` for each sphere node.
    pub sup_per_theta: Vec<f64>,
    /// `max_i max(|h(θ_i, -T)|, |h(θ_i, T)|)`, the edge magnitude.
    pub edge_max: f64,
    /// Row-major values `[node][t]`, when requested.
    pub values: Option<Vec<Complex64>>,
}

/// Tabulate `profile` over `rule` × `grid`.
pub fn tabulate<P: DualProfile + ?Sized>(
    profile: &P,
    rule: &SphereQuadrature,
    grid: TGrid,
    keep_values: bool,
    exec: Execution,
) -> ProfileTable {
    let distinct = if profile.theta_independent() { 1 } else { rule.len() };
    let mut rows = map_range(distinct, exec, |i| {
        let theta = rule.node(i);
        let row: Vec<Complex64> = match profile.spectral(theta) {
            Some(s) => s.eval_grid(-grid.half_width, grid.step(), grid.count),
            None => (0..grid.count).map(|j| profile.eval(theta, grid.point(j))).collect(),
        };
        let sup = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let edge = row[0].norm().max(row[grid.count - 1].norm());
        (sup, edge, if keep_values { row } else { Vec::new() })
    });
    if distinct < rule.len() {
        let first = rows[0].clone();
        rows.resize(rule.len(), first);
    }
    let sup_per_theta = rows.iter().map(|r| r.0).collect();
    let edge_max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let values = keep_values.then(|| rows.into_iter().flat_map(|r| r.2).collect());
    ProfileTable { grid, sup_per_theta, edge_max, values }
}

/// `‖h‖_{1,∞} ≈ Σ_i w_i max_t |h(θ_i, t)|` with the edge magnitude as tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub edge_max: f64,
}

pub fn norm_1_inf<P: DualProfile + ?Sized>(
    profile: &P,
    rule: &SphereQuadrature,
    grid: TGrid,
    exec: Execution,
) -> NormEstimate {
    let table = tabulate(profile, rule, grid, false, exec);
    norm_from_table(&table, rule)
}

pub fn norm_from_table(table: &ProfileTable, rule: &SphereQuadrature) -> NormEstimate {
    let value = table.sup_per_theta.iter().zip(&rule.weights).map(|(s, w)| s * w).sum();
    NormEstimate { value, edge_max: table.edge_max }
}
