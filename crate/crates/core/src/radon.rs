//! Dual Radon transform, `δ^(−α)` activations, the `N^α` reconstruction
//! integral and the truncated convolution `h°`.

use crate::barron::{DualProfile, ExpSum};
use crate::par::{map_range, sum_range, Execution};
use crate::specfun::gauss_legendre;
use crate::spherical::{dot, SphereQuadrature};
use num_complex::Complex64;

/// `δ^(−α)(b) = b₊^(α−1)/(α−1)!`, with `δ^(−1)(0) = 0`.
#[inline]
pub fn activation(alpha: u32, b: f64) -> f64 {
    assert!(alpha >= 1, "activation order must be positive");
    if b <= 0.0 {
        return 0.0;
    }
    let k = alpha - 1;
    let mut v = 1.0;
    for j in 1..=k {
        v *= b / j as f64;
    }
    v
}

/// `R*{h}(x) = ∫ h(w, <w,x>) dw` by the given sphere rule.
pub fn dual_radon<F>(h: F, x: &[f64], rule: &SphereQuadrature, exec: Execution) -> Complex64
where
    F: Fn(&[f64], f64) -> Complex64 + Sync,
{
    sum_range(rule.len(), exec, |i| {
        let w = rule.node(i);
        h(w, dot(w, x)) * rule.weights[i]
    })
}

/// How the `b`-integral of the reconstruction is carried out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BIntegration {
    /// Composite Gauss–Legendre on `[−r, <w,x>]`, the kink or jump at `<w,x>` as panel end.
    Gauss { points: usize, panel_width: f64 },
    /// Term-by-term exact convolution of an exponential-sum profile.
    Exact,
}

impl Default for BIntegration {
    fn default() -> Self {
        BIntegration::Gauss { points: 20, panel_width: 0.5 }
    }
}

/// `∫_0^L e^{−iρu} u^k/k! du`.
pub fn exp_moment(rho: f64, len: f64, k: u32) -> Complex64 {
    let z = rho * len;
    let mut kf = 1.0;
    for j in 1..=k {
        kf *= j as f64;
    }
    if z.abs() < 2.0 {
        // L^{k+1}/k! Σ_j (−iz)^j / (j! (k+j+1))
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..60u32 {
            if j > 0 {
                term *= Complex64::new(0.0, -z) / j as f64;
            }
            acc += term / (k + j + 1) as f64;
            if term.norm() < 1e-18 {
                break;
            }
        }
        return acc * (len.powi(k as i32 + 1) / kf);
    }
    let irho = Complex64::new(0.0, rho);
    let e = Complex64::cis(-z);
    let mut ik = (Complex64::new(1.0, 0.0) - e) / irho;
    let mut fact = 1.0;
    for j in 1..=k {
        fact *= j as f64;
        ik = (ik - e * (len.powi(j as i32) / fact)) / irho;
    }
    ik
}

/// `∫_{−r}^{s} h(b) (s−b)^{α−1}/(α−1)! db` for an exponential sum without tail.
pub fn exp_sum_convolution(h: &ExpSum, alpha: u32, r: f64, s: f64) -> Complex64 {
    assert!(h.tail.is_none(), "exact convolution needs a pure exponential sum");
    let len = s + r;
    if len <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = alpha - 1;
    h.basis
        .nodes()
        .zip(h.plus.iter().zip(&h.minus))
        .map(|((rho, _), (&a, &b))| {
            let m = exp_moment(rho, len, k);
            let e = Complex64::cis(rho * s);
            a * e * m + b * e.conj() * m.conj()
        })
        .sum()
}

/// `[t<=r] ∫_{−r}^{t} h(b) δ^(−α)(t−b) db` by Gauss–Legendre panels.
pub fn convolve_activation<F>(h: F, alpha: u32, r: f64, t: f64, points: usize, panel_width: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if t > r || t <= -r {
        return Complex64::new(0.0, 0.0);
    }
    let len = t + r;
    let panels = (len / panel_width).ceil().max(1.0) as usize;
    let width = len / panels as f64;
    let gl = gauss_legendre(points);
    (0..panels)
        .map(|p| {
            let a = -r + p as f64 * width;
            gl.integrate_on(a, a + width, |b| h(b) * activation_closed(alpha, t - b))
        })
        .sum()
}

// `(t−b)^{α−1}/(α−1)!` on the open panel, where `t − b > 0`.
#[inline]
fn activation_closed(alpha: u32, u: f64) -> f64 {
    if alpha == 1 {
        1.0
    } else {
        activation(alpha, u)
    }
}

/// `∬ h^α(w,b) δ^(−α)(<w,x>−b) [−r≤b≤r] db dw`.
pub fn nalpha_eval<P: DualProfile + ?Sized>(
    h_alpha: &P,
    alpha: u32,
    r: f64,
    x: &[f64],
    rule: &SphereQuadrature,
    method: BIntegration,
    exec: Execution,
) -> Complex64 {
    assert!(alpha >= 1);
    sum_range(rule.len(), exec, |i| {
        let w = rule.node(i);
        let s = dot(w, x).min(r);
        let v = match (method, h_alpha.spectral(w)) {
            (BIntegration::Exact, Some(es)) if es.tail.is_none() => exp_sum_convolution(&es, alpha, r, s),
            (BIntegration::Gauss { points, panel_width }, Some(es)) => {
                convolve_activation(|b| es.eval(b), alpha, r, s, points, panel_width)
            }
            (m, _) => {
                let (points, panel_width) = match m {
                    BIntegration::Gauss { points, panel_width } => (points, panel_width),
                    BIntegration::Exact => (20, 0.5),
                };
                convolve_activation(|b| h_alpha.eval(w, b), alpha, r, s, points, panel_width)
            }
        };
        v * rule.weights[i]
    })
}

/// Exponential sums of a profile at every node of a fixed sphere rule, shared
/// across evaluation points.
#[derive(Debug, Clone)]
pub struct SpectralCache {
    pub sums: Vec<ExpSum>,
}

impl SpectralCache {
    /// `None` when some node has no tail-free exponential-sum form.
    pub fn new<P: DualProfile + ?Sized>(h: &P, rule: &SphereQuadrature, exec: Execution) -> Option<Self> {
        let sums: Vec<Option<ExpSum>> = map_range(rule.len(), exec, |i| h.spectral(rule.node(i)));
        let sums: Option<Vec<ExpSum>> = sums.into_iter().collect();
        sums.filter(|s| s.iter().all(|e| e.tail.is_none())).map(|sums| SpectralCache { sums })
    }
}

/// [`dual_radon`] of a profile through its cached exponential sums.
pub fn dual_radon_cached(cache: &SpectralCache, x: &[f64], rule: &SphereQuadrature, exec: Execution) -> Complex64 {
    assert_eq!(cache.sums.len(), rule.len(), "cache built on another rule");
    sum_range(rule.len(), exec, |i| cache.sums[i].eval(dot(rule.node(i), x)) * rule.weights[i])
}

/// [`nalpha_eval`] with exact `b`-integration on cached exponential sums.
pub fn nalpha_eval_cached(
    cache: &SpectralCache,
    alpha: u32,
    r: f64,
    x: &[f64],
    rule: &SphereQuadrature,
    exec: Execution,
) -> Complex64 {
    assert!(alpha >= 1);
    assert_eq!(cache.sums.len(), rule.len(), "cache built on another rule");
    sum_range(rule.len(), exec, |i| {
        let s = dot(rule.node(i), x).min(r);
        exp_sum_convolution(&cache.sums[i], alpha, r, s) * rule.weights[i]
    })
}

/// Boundary terms `B(x) = Σ_{k<α} (1/k!) ∫ ∂^k h(w,−r) (<w,x>+r)^k dw` left by
/// integrating `∂^α h` against `δ^(−α)` over `[−r, <w,x>]`; the reconstruction
/// equals `R*{h}(x) − B(x)` for `|x| <= r`.
pub fn boundary_defect<P: DualProfile + ?Sized>(
    h: &P,
    alpha: u32,
    r: f64,
    x: &[f64],
    rule: &SphereQuadrature,
    exec: Execution,
) -> Complex64 {
    sum_range(rule.len(), exec, |i| {
        let w = rule.node(i);
        let es = h.spectral(w).expect("boundary defect needs an exponential-sum profile");
        boundary_terms(&es, alpha, r, dot(w, x)) * rule.weights[i]
    })
}

/// [`boundary_defect`] on cached exponential sums of `h`.
pub fn boundary_defect_cached(
    cache: &SpectralCache,
    alpha: u32,
    r: f64,
    x: &[f64],
    rule: &SphereQuadrature,
    exec: Execution,
) -> Complex64 {
    assert_eq!(cache.sums.len(), rule.len(), "cache built on another rule");
    sum_range(rule.len(), exec, |i| boundary_terms(&cache.sums[i], alpha, r, dot(rule.node(i), x)) * rule.weights[i])
}

// `Σ_{k<α} ∂^k h(−r) (s+r)^k / k!`
fn boundary_terms(es: &ExpSum, alpha: u32, r: f64, s: f64) -> Complex64 {
    let u = s + r;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pw = 1.0;
    for k in 0..alpha {
        if k > 0 {
            pw *= u / k as f64;
        }
        acc += es.derivative(k, -r) * pw;
    }
    acc
}
