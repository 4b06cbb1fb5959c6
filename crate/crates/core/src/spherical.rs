//! Quadrature on the unit sphere, zonal harmonics, Funk–Hecke, the Poisson
//! kernel and Abel summation.

use crate::error::{Error, Result};
use crate::specfun::{gauss_jacobi, gegenbauer, harmonic_dim, sphere_area, Quadrature1D};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Nodes and positive surface-measure weights on `S^(n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    /// Ambient dimension.
    pub n: usize,
    /// Unit vectors stored row-major, `n` coordinates per node.
    pub nodes: Vec<f64>,
    /// Surface-measure weights.
    pub weights: Vec<f64>,
    /// Highest spherical-harmonic degree integrated exactly.
    pub l_exact: usize,
}

impl SphereQuadrature {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The `i`-th node.
    #[inline]
    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.n..(i + 1) * self.n]
    }

    /// Iterator over `(node, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes.chunks_exact(self.n).zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(node_i)`.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&[f64]) -> Complex64,
    {
        self.iter().map(|(x, w)| f(x) * w).sum()
    }

    /// `Σ w_i f(node_i)` for real integrands.
    pub fn integrate_real<F>(&self, f: F) -> f64
    where
        F: Fn(&[f64]) -> f64,
    {
        self.iter().map(|(x, w)| f(x) * w).sum()
    }
}

fn circle(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(2 * points);
    for k in 0..points {
        let phi = 2.0 * PI * k as f64 / points as f64;
        nodes.push(phi.cos());
        nodes.push(phi.sin());
    }
    (nodes, vec![2.0 * PI / points as f64; points])
}

fn product_rule(n: usize, resolution: usize) -> (Vec<f64>, Vec<f64>) {
    if n == 2 {
        return circle(2 * resolution);
    }
    let polar = gauss_jacobi(resolution, (n as f64 - 3.0) / 2.0);
    let (sub_nodes, sub_weights) = product_rule(n - 1, resolution);
    let mut nodes = Vec::with_capacity(polar.len() * sub_weights.len() * n);
    let mut weights = Vec::with_capacity(polar.len() * sub_weights.len());
    for (&t, &wt) in polar.nodes.iter().zip(&polar.weights) {
        let s = (1.0 - t * t).max(0.0).sqrt();
        for (eta, &we) in sub_nodes.chunks_exact(n - 1).zip(&sub_weights) {
            nodes.push(t);
            nodes.extend(eta.iter().map(|&e| s * e));
            weights.push(wt * we);
        }
    }
    (nodes, weights)
}

/// Product quadrature on `S^(n-1)`.
///
/// `n = 2`: `resolution` equally spaced points, exact for trigonometric
/// degree below `resolution`. `n >= 3`: the first coordinate `t` carries a
/// Gauss–Jacobi rule with `resolution` nodes for the weight
/// `(1-t^2)^((n-3)/2)` and the remaining coordinates the rule on `S^(n-2)`
/// recursively, ending in a `2 resolution`-point circle; exact to degree
/// `2 resolution - 1`.
pub fn sphere_quadrature(n: usize, resolution: usize) -> SphereQuadrature {
    assert!(n >= 2, "sphere quadrature needs n >= 2");
    assert!(resolution >= 1, "resolution must be positive");
    let (nodes, weights, l_exact) = if n == 2 {
        let (nodes, weights) = circle(resolution);
        (nodes, weights, resolution - 1)
    } else {
        let (nodes, weights) = product_rule(n, resolution);
        (nodes, weights, 2 * resolution - 1)
    };
    SphereQuadrature { n, nodes, weights, l_exact }
}

/// Smallest rule whose exactness degree is at least `degree`.
pub fn sphere_quadrature_for_degree(n: usize, degree: usize) -> SphereQuadrature {
    if n == 2 {
        sphere_quadrature(2, degree + 1)
    } else {
        sphere_quadrature(n, degree / 2 + 1)
    }
}

/// Gegenbauer index `(n-2)/2` attached to `S^(n-1)`.
#[inline]
pub fn gegenbauer_index(n: usize) -> f64 {
    (n as f64 - 2.0) / 2.0
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Zonal harmonic `Z_l(theta, alpha) = N(l,n)/|S^(n-1)| C_l^((n-2)/2)(<theta, alpha>)`.
pub fn zonal(l: u32, n: usize, theta: &[f64], alpha: &[f64]) -> f64 {
    zonal_of_cosine(l, n, dot(theta, alpha))
}

/// Zonal harmonic as a function of the cosine `<theta, alpha>`.
#[inline]
pub fn zonal_of_cosine(l: u32, n: usize, c: f64) -> f64 {
    harmonic_dim(l, n as u32) as f64 / sphere_area(n as u32)
        * gegenbauer(l, gegenbauer_index(n), c)
}

/// Funk–Hecke multiplier `|S^(n-2)| ∫ h(v) C_l(v) (1-v^2)^((n-3)/2) dv`.
///
/// `rule` must be a Gauss–Jacobi rule for the exponent `(n-3)/2`.
pub fn funk_hecke_rhs<F>(profile: F, l: u32, n: usize, rule: &Quadrature1D) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let lam = gegenbauer_index(n);
    rule.integrate(|v| profile(v) * gegenbauer(l, lam, v)) * sphere_area(n as u32 - 1)
}

/// Result of the Poisson-kernel series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonValue {
    pub value: f64,
    /// Degree at which the series was truncated.
    pub l_max: u32,
    /// Rigorous bound on the discarded tail.
    pub tail_bound: f64,
}

/// Largest degree the Poisson series may use.
pub const POISSON_L_CAP: u32 = 10_000;

/// Poisson kernel `p = Σ R^l Z_l` as a function of `c = <theta, alpha>`.
///
/// The series is truncated once the tail, bounded through `|C_l| <= 1` and
/// the monotone ratio `N(l+1,n)/N(l,n)`, drops below `1e-10`.
pub fn poisson_kernel(n: usize, r: f64, c: f64) -> Result<PoissonValue> {
    if !(0.0..=0.9995).contains(&r) {
        return Err(Error::Domain(format!("Poisson radius {r} outside [0, 0.9995]")));
    }
    let area = sphere_area(n as u32);
    let lam = gegenbauer_index(n);
    let c = c.clamp(-1.0, 1.0);
    let dim = |l: u32| harmonic_dim(l, n as u32) as f64;
    // Normalised Gegenbauer recurrence inline to avoid O(l^2) work.
    let (mut prev, mut cur) = (1.0, c);
    let mut value = 1.0 / area;
    let mut rpow = 1.0;
    for l in 1..=POISSON_L_CAP {
        rpow *= r;
        if l >= 2 {
            let k = (l - 1) as f64;
            let next = (2.0 * (k + lam) * c * cur - k * prev) / (k + 2.0 * lam);
            prev = cur;
            cur = next;
        }
        value += rpow * dim(l) / area * cur;
        let ratio = r * dim(l + 2) / dim(l + 1);
        let tail = if ratio < 1.0 {
            rpow * r * dim(l + 1) / area / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        if tail < 1e-10 || r == 0.0 {
            return Ok(PoissonValue { value, l_max: l, tail_bound: tail.min(1e-10) });
        }
    }
    Err(Error::Schedule(format!(
        "Poisson series at R = {r}, n = {n} needs more than {POISSON_L_CAP} terms"
    )))
}

/// Closed form `(1-R^2) / (|S^(n-1)| (1 - 2Rc + R^2)^(n/2))` of the Poisson kernel.
pub fn poisson_kernel_closed(n: usize, r: f64, c: f64) -> f64 {
    let d = 1.0 - 2.0 * r * c + r * r;
    (1.0 - r * r) / (sphere_area(n as u32) * d.powf(n as f64 / 2.0))
}

/// Poisson mass outside the cap `|theta - alpha| <= delta`, from the closed form.
pub fn poisson_mass_outside(n: usize, r: f64, delta: f64, points: usize) -> f64 {
    // c = cos(phi), dc (1-c^2)^((n-3)/2) = sin^(n-2)(phi) dphi; |theta-alpha| > delta <=> c < 1 - delta^2/2
    let c0 = (1.0 - 0.5 * delta * delta).clamp(-1.0, 1.0);
    let phi0 = c0.acos();
    let panels = 64;
    let rule = Quadrature1D::composite_uniform(points, phi0, PI, panels);
    let s = rule.integrate(|phi| {
        poisson_kernel_closed(n, r, phi.cos()) * phi.sin().powi(n as i32 - 2)
    });
    s * sphere_area(n as u32 - 1)
}

/// Truncation and extrapolation settings for an Abel sum.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelSchedule {
    /// Increasing radii in (0, 1).
    pub r_values: Vec<f64>,
    /// Truncation degree.
    pub l_max: u32,
    /// Admissible truncation tail at the largest radius.
    pub tail_tolerance: f64,
    /// Exponent `g` of the growth model `|a_l| <= C l^g` (`n - 2` for zonal series).
    pub growth_exponent: f64,
}

impl AbelSchedule {
    /// Default schedule for zonal series on `S^(n-1)`.
    pub fn for_dimension(n: usize) -> Self {
        AbelSchedule {
            r_values: vec![0.9, 0.95, 0.99, 0.995, 0.999],
            l_max: 48,
            tail_tolerance: 1e-8,
            growth_exponent: n as f64 - 2.0,
        }
    }
}

/// Diagnostics attached to an Abel sum.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelDiagnostics {
    /// `(R, h_R)` along the schedule.
    pub partial_sums: Vec<(f64, Complex64)>,
    /// Change of the extrapolated value when the largest radius is added.
    pub last_increment: f64,
    /// Empirical `max |a_l| / l^g` over `1 <= l <= l_max`.
    pub growth_constant: f64,
    /// Estimated truncation tail at the largest radius.
    pub tail_estimate: f64,
}

/// Abel sum `lim_{R -> 1} Σ R^l a_l` with polynomial extrapolation in `1 - R`.
///
/// The partial sums `h_R` are evaluated on the schedule and extrapolated to
/// `R = 1` by Neville's scheme. The difference quotients of `h_R` in `1 - R`
/// must stay bounded; growth by more than a factor 10 is reported as
/// divergence.
pub fn abel_sum<F>(terms: F, schedule: &AbelSchedule) -> Result<(Complex64, AbelDiagnostics)>
where
    F: Fn(u32) -> Complex64,
{
    let a: Vec<Complex64> = (0..=schedule.l_max).map(&terms).collect();
    abel_sum_terms(&a, schedule)
}

/// [`abel_sum`] on precomputed terms `a_0..a_{l_max}`.
pub fn abel_sum_terms(a: &[Complex64], schedule: &AbelSchedule) -> Result<(Complex64, AbelDiagnostics)> {
    let rs = &schedule.r_values;
    if rs.is_empty() || rs.windows(2).any(|w| w[0] >= w[1]) || rs[0] <= 0.0 || rs[rs.len() - 1] >= 1.0 {
        return Err(Error::Domain("Abel radii must increase strictly inside (0, 1)".into()));
    }
    let g = schedule.growth_exponent;
    let l_max = a.len() - 1;
    let weight = |l: usize| if l == 0 { 1.0 } else { (l as f64).powf(g) };
    let growth_constant = (1..=l_max).map(|l| a[l].norm() / weight(l)).fold(0.0, f64::max);
    let last = (l_max.saturating_sub(3)..=l_max)
        .filter(|&l| l >= 1)
        .map(|l| a[l].norm() / weight(l))
        .fold(0.0, f64::max);
    let r_top = rs[rs.len() - 1];
    let mut tail = 0.0;
    let mut rp = r_top.powi(l_max as i32);
    for l in l_max + 1..l_max + 1 + 200_000 {
        rp *= r_top;
        let t = last * rp * weight(l);
        tail += t;
        if t < 1e-18 * (1.0 + tail) {
            break;
        }
    }
    if tail > schedule.tail_tolerance {
        return Err(Error::Schedule(format!(
            "Abel truncation tail {tail:e} exceeds tolerance {:e} at l_max = {l_max}",
            schedule.tail_tolerance
        )));
    }
    let partial: Vec<(f64, Complex64)> = rs
        .iter()
        .map(|&r| (r, a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &t| acc * r + t)))
        .collect();
    let eps: Vec<f64> = rs.iter().map(|r| 1.0 - r).collect();
    let neville = |count: usize| -> Complex64 {
        let mut p: Vec<Complex64> = partial[..count].iter().map(|&(_, h)| h).collect();
        for k in 1..count {
            for i in 0..count - k {
                // extrapolate to eps = 0
                p[i] = (p[i + 1] * eps[i] - p[i] * eps[i + k]) / (eps[i] - eps[i + k]);
            }
        }
        p[0]
    };
    let value = neville(partial.len());
    let last_increment = if partial.len() > 1 {
        (value - neville(partial.len() - 1)).norm()
    } else {
        f64::INFINITY
    };
    if partial.len() >= 3 {
        let q: Vec<f64> = partial
            .windows(2)
            .zip(eps.windows(2))
            .map(|(h, e)| (h[1].1 - h[0].1).norm() / (e[0] - e[1]))
            .collect();
        let first = q[0];
        let tail_q = q[q.len() - 1];
        if tail_q > 10.0 * first + 1e-12 * (1.0 + value.norm()) {
            return Err(Error::Divergence(format!(
                "difference quotients grow from {first:e} to {tail_q:e}"
            )));
        }
    }
    Ok((
        value,
        AbelDiagnostics { partial_sums: partial, last_increment, growth_constant, tail_estimate: tail },
    ))
}

/// `∫ |Z_l(theta, alpha)| d alpha` by the one-dimensional Funk–Hecke reduction.
pub fn zonal_l1_norm(l: u32, n: usize, rule: &Quadrature1D) -> f64 {
    let lam = gegenbauer_index(n);
    let s: f64 = rule.integrate(|v| gegenbauer(l, lam, v).abs());
    harmonic_dim(l, n as u32) as f64 / sphere_area(n as u32) * sphere_area(n as u32 - 1) * s
}
