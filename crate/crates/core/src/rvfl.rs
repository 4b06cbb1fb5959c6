//! Random-feature networks `f_m(x) = Σ a_j δ^(−α)(<w_j,x> − b_j)` with
//! features drawn from the law `|h| / ‖h‖₁` on `S^(n−1) × [−r, r]`.
//!
//! Sampling is by rejection against a tabulated envelope. Every trial owns a
//! ChaCha generator seeded by a counter-based hash of `(base seed, index)`, so
//! results do not depend on execution order or thread count.

use crate::barron::{
    eval_f, norm_1_inf, ClosedFormProfile, Discretization, DualProfile, RadialBasis, RadialOptions, SourceDensity,
    TGrid, tabulate,
};
use crate::bounds::{rnn_bound, Accuracy, RnnInputs};
use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use crate::radon::{activation, nalpha_eval, nalpha_eval_cached, BIntegration, SpectralCache};
use crate::specfun::gauss_legendre;
use crate::spherical::{dot, sphere_quadrature, SphereQuadrature};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use std::sync::Arc;
use std::time::Instant;

/// Relative margin of the rejection envelope over the tabulated maximum.
pub const ENVELOPE_MARGIN: f64 = 0.05;
/// Acceptance rate below which sampling aborts.
pub const MIN_ACCEPTANCE: f64 = 1e-4;

/// Counter-based seed derivation (SplitMix64 finaliser of `base ⊕ index`).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Quadrature used to build a [`FeatureDensity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOptions {
    /// Sphere rule resolution for `‖h‖₁` and the envelope table.
    pub sphere_resolution: usize,
    /// Gauss–Legendre panels in `b` on `[−r, r]`.
    pub b_panels: usize,
    pub b_points: usize,
    /// Envelope grid points in `b`.
    pub envelope_points: usize,
    pub exec: Execution,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions { sphere_resolution: 32, b_panels: 8, b_points: 16, envelope_points: 257, exec: Execution::default() }
    }
}

/// `h(w,b) = h^α(w,b)[−r≤b≤r]` with its mass and rejection envelope.
#[derive(Clone)]
pub struct FeatureDensity {
    pub alpha: u32,
    pub r: f64,
    pub h: Arc<dyn DualProfile>,
    pub norm_1: f64,
    pub envelope: f64,
}

impl std::fmt::Debug for FeatureDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FeatureDensity")
            .field("alpha", &self.alpha)
            .field("r", &self.r)
            .field("dim", &self.h.dim())
            .field("norm_1", &self.norm_1)
            .field("envelope", &self.envelope)
            .finish()
    }
}

impl FeatureDensity {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// `h(w, b)`, zero outside `[−r, r]`.
    pub fn eval(&self, w: &[f64], b: f64) -> Complex64 {
        if b.abs() > self.r {
            Complex64::new(0.0, 0.0)
        } else {
            self.h.eval(w, b)
        }
    }
}

/// `‖h‖₁` by product quadrature and the envelope `1.05 × grid max`.
pub fn build_density(h_alpha: Arc<dyn DualProfile>, alpha: u32, r: f64, opts: &DensityOptions) -> Result<FeatureDensity> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let n = h_alpha.dim();
    let rule = sphere_quadrature(n, opts.sphere_resolution);
    let gl = gauss_legendre(opts.b_points);
    let width = 2.0 * r / opts.b_panels as f64;
    let distinct = if h_alpha.theta_independent() { 1 } else { rule.len() };
    let masses = map_range(distinct, opts.exec, |i| {
        let w = rule.node(i);
        let es = h_alpha.spectral(w);
        let f = |b: f64| match &es {
            Some(es) => es.eval(b),
            None => h_alpha.eval(w, b),
        };
        let mass = |a: f64, b: f64| gl.integrate_on(a, b, |t| Complex64::new(f(t).norm(), 0.0)).re;
        (0..opts.b_panels)
            .map(|p| {
                let a = -r + p as f64 * width;
                let b = a + width;
                // A sign change of a real profile is a kink of |h|; split there.
                let (fa, fb) = (f(a), f(b));
                if (fa * fb.conj()).re < 0.0 {
                    let (mut lo, mut hi) = (a, b);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if (fa * f(mid).conj()).re < 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    let c = 0.5 * (lo + hi);
                    mass(a, c) + mass(c, b)
                } else {
                    mass(a, b)
                }
            })
            .sum::<f64>()
    });
    let norm_1 = if distinct == 1 {
        masses[0] * rule.weights.iter().sum::<f64>()
    } else {
        masses.iter().zip(&rule.weights).map(|(m, w)| m * w).sum()
    };
    if !(norm_1 > 1e-12) {
        return Err(Error::ZeroNorm(norm_1));
    }
    let grid = TGrid { half_width: r, count: opts.envelope_points };
    let table = tabulate(h_alpha.as_ref(), &rule, grid, false, opts.exec);
    let grid_max = table.sup_per_theta.iter().copied().fold(0.0, f64::max);
    Ok(FeatureDensity { alpha, r, h: h_alpha, norm_1, envelope: (1.0 + ENVELOPE_MARGIN) * grid_max })
}

/// A closed-form profile on a single-panel radial basis.
///
/// Only `|b| ≤ r` is ever evaluated, so the oscillation `e^{iρb}` stays mild
/// and one wide Gauss–Legendre panel suffices.
pub fn sampling_profile(density: SourceDensity, alpha: u32, points: usize) -> ClosedFormProfile {
    let start = density.support_start();
    let end = density.decay_radius(alpha);
    let basis = RadialBasis::new(start, end, RadialOptions { panel_width: end - start, points });
    ClosedFormProfile::with_basis(density, alpha, Arc::new(basis))
}

/// One drawn feature.
#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub w: Vec<f64>,
    pub b: f64,
    /// `h(w, b)` at the accepted point.
    pub value: Complex64,
}

/// Counters of one rejection-sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SamplingStats {
    pub proposals: u64,
    pub accepted: u64,
    /// Proposals with `|h| > envelope` (the envelope was too low there).
    pub envelope_violations: u64,
}

impl SamplingStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }
}

fn uniform_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let s = dot(&v, &v).sqrt();
        if s > 1e-12 {
            return v.into_iter().map(|x| x / s).collect();
        }
    }
}

/// `count` uniform directions on `S^(n−1)`, deterministic given `seed`.
pub fn random_directions(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count).map(|_| uniform_direction(&mut rng, n)).collect()
}

/// Draw `m` features from `|h|/‖h‖₁`, deterministic given `seed`.
pub fn sample_features(density: &FeatureDensity, m: usize, seed: u64) -> Result<(Vec<Feature>, SamplingStats)> {
    if m == 0 {
        return Err(Error::Domain("at least one feature is required".into()));
    }
    let n = density.dim();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut stats = SamplingStats::default();
    let mut out = Vec::with_capacity(m);
    let check_every = 1u64 << 16;
    while out.len() < m {
        let w = uniform_direction(&mut rng, n);
        let b = rng.random_range(-density.r..=density.r);
        let u: f64 = rng.random();
        stats.proposals += 1;
        let value = density.eval(&w, b);
        let p = value.norm() / density.envelope;
        if p > 1.0 {
            stats.envelope_violations += 1;
        }
        if u < p {
            stats.accepted += 1;
            out.push(Feature { w, b, value });
        }
        if stats.proposals % check_every == 0 && stats.acceptance_rate() < MIN_ACCEPTANCE {
            return Err(Error::EnvelopeQuality { rate: stats.acceptance_rate() });
        }
    }
    Ok((out, stats))
}

/// `a δ^(−α)(<w,x> − b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub a: Complex64,
    pub w: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomFeatureNetwork {
    pub alpha: u32,
    pub r: f64,
    pub atoms: Vec<Atom>,
    pub seed: u64,
}

/// Atoms `a_j = ‖h‖₁ φ(w_j,b_j)/m` with the phase `φ = h/|h|`.
pub fn build_network(density: &FeatureDensity, m: usize, seed: u64) -> Result<RandomFeatureNetwork> {
    let (features, _) = sample_features(density, m, seed)?;
    let scale = density.norm_1 / m as f64;
    let atoms = features
        .into_iter()
        .map(|f| {
            let phase = f.value / f.value.norm();
            Atom { a: phase * scale, w: f.w, b: f.b }
        })
        .collect();
    Ok(RandomFeatureNetwork { alpha: density.alpha, r: density.r, atoms, seed })
}

/// `Σ_j a_j δ^(−α)(<w_j,x> − b_j)`.
pub fn eval_network(net: &RandomFeatureNetwork, x: &[f64]) -> Complex64 {
    net.atoms.iter().map(|at| at.a * activation(net.alpha, dot(&at.w, x) - at.b)).sum()
}

/// Grid on `K(r)`: the cubic lattice of spacing `r/resolution` inside the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallGrid {
    pub n: usize,
    pub r: f64,
    pub spacing: f64,
    pub points: Vec<Vec<f64>>,
}

impl BallGrid {
    pub fn new(n: usize, r: f64, resolution: usize) -> Self {
        assert!(resolution >= 1);
        let spacing = r / resolution as f64;
        let k = resolution as i64;
        let mut points = Vec::new();
        let mut idx = vec![-k; n];
        loop {
            let p: Vec<f64> = idx.iter().map(|&i| i as f64 * spacing).collect();
            if dot(&p, &p) <= r * r * (1.0 + 1e-12) {
                points.push(p);
            }
            let mut d = 0;
            loop {
                if d == n {
                    return BallGrid { n, r, spacing, points };
                }
                idx[d] += 1;
                if idx[d] <= k {
                    break;
                }
                idx[d] = -k;
                d += 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest distance from a point of `K(r)` to the lattice, `spacing·√n/2`.
    pub fn covering_radius(&self) -> f64 {
        self.spacing * (self.n as f64).sqrt() / 2.0
    }
}

/// Grid sup-norm error with an optional Lipschitz-slack bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupError {
    pub grid_max: f64,
    /// `grid_max + (Lip f + Lip f_m)·covering radius`.
    pub slack_bound: Option<f64>,
}

/// `max_grid |f − f_m|` against target values tabulated on `grid`.
///
/// `lipschitz` is a bound on `Lip(f) + Lip(f_m)`; pass `None` when no such
/// bound exists (α = 1, where `f_m` is piecewise constant).
pub fn sup_error(net: &RandomFeatureNetwork, target: &[Complex64], grid: &BallGrid, lipschitz: Option<f64>) -> SupError {
    assert_eq!(target.len(), grid.len());
    let grid_max =
        grid.points.iter().zip(target).map(|(x, f)| (f - eval_network(net, x)).norm()).fold(0.0, f64::max);
    SupError { grid_max, slack_bound: lipschitz.map(|l| grid_max + l * grid.covering_radius()) }
}

/// `Lip(f_m) ≤ ‖h‖₁ δ^(1−α)(2r)` on `K(r)`; the same bound holds for `f = E f_m`.
pub fn network_lipschitz(density: &FeatureDensity) -> Option<f64> {
    (density.alpha >= 2).then(|| density.norm_1 * activation(density.alpha - 1, 2.0 * density.r))
}

/// Wilson score interval at 95% for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = Z * Z;
    if k == 0 {
        return (0.0, z2 / (nf + z2));
    }
    if k == n {
        return (nf / (nf + z2), 1.0);
    }
    let centre = (p + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let half = Z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Linear-interpolation quantile of sorted data at level `q ∈ [0, 1]`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Parameters of a Monte-Carlo campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub density: SourceDensity,
    pub alpha: u32,
    pub r: f64,
    pub m_values: Vec<usize>,
    pub eps_values: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    /// Error grid spacing is `r / grid_resolution` (doubled for α = 1).
    pub grid_resolution: usize,
    /// Sphere rule for the tabulated target `E f_m`.
    pub target_sphere_resolution: usize,
    /// Gauss–Legendre points of the single-panel sampling profile.
    pub profile_points: usize,
    pub quantile_levels: Vec<f64>,
    pub density_options: DensityOptions,
    /// Also measure errors against the Fourier-side `f` itself.
    pub compare_with_f: bool,
    pub exec: Execution,
}

impl CampaignConfig {
    pub fn new(density: SourceDensity, alpha: u32, r: f64) -> Self {
        CampaignConfig {
            density,
            alpha,
            r,
            m_values: (8..=14).map(|k| 1usize << k).collect(),
            eps_values: vec![0.05, 0.1, 0.2, 0.5, 1.0, 2.0],
            trials: 200,
            base_seed: 1,
            grid_resolution: 6,
            target_sphere_resolution: 24,
            profile_points: 40,
            quantile_levels: vec![0.05, 0.25, 0.5, 0.75, 0.95],
            density_options: DensityOptions::default(),
            compare_with_f: false,
            exec: Execution::default(),
        }
    }
}

/// Density, error grid and target prepared once per campaign.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub config: CampaignConfig,
    pub density: FeatureDensity,
    pub grid: BallGrid,
    /// `E f_m` on the grid (the reconstruction from `h^α` on `[−r, r]`).
    pub target: Vec<Complex64>,
    /// `f = F{φ}` on the grid, when requested.
    pub f_values: Option<Vec<Complex64>>,
    /// `‖h^α‖_{1,∞}`, the norm entering `Λ` and the bound.
    pub profile_norm: f64,
    pub lipschitz: Option<f64>,
}

impl Campaign {
    pub fn prepare(config: CampaignConfig) -> Result<Self> {
        if config.trials < 30 {
            return Err(Error::Domain(format!("a campaign needs at least 30 trials, got {}", config.trials)));
        }
        if config.alpha == 0 {
            return Err(Error::Domain("network activations need alpha >= 1".into()));
        }
        if !config.density.supports_alpha(config.alpha) {
            return Err(Error::Domain(format!("{} has no moment of order {}", config.density.catalog_id(), config.alpha)));
        }
        let n = config.density.n;
        let profile = Arc::new(sampling_profile(config.density, config.alpha, config.profile_points));
        let density = build_density(profile.clone(), config.alpha, config.r, &config.density_options)?;
        let rule = sphere_quadrature(n, config.density_options.sphere_resolution);
        // The norm is a sup over all of R, where the single-panel basis is not accurate.
        let full = ClosedFormProfile::new(config.density, config.alpha, RadialOptions::default());
        let profile_norm = norm_1_inf(&full, &rule, TGrid::for_profile(&full), config.exec).value;
        let resolution = if config.alpha == 1 { 2 * config.grid_resolution } else { config.grid_resolution };
        let grid = BallGrid::new(n, config.r, resolution);
        let target = expected_network(profile.as_ref(), config.alpha, config.r, &grid, config.target_sphere_resolution, config.exec);
        let lipschitz = network_lipschitz(&density).map(|l| 2.0 * l);
        let f_values = config.compare_with_f.then(|| {
            let disc = Discretization { exec: Execution::Sequential, ..Discretization::for_dimension(n) };
            map_range(grid.len(), config.exec, |i| eval_f(&config.density, &grid.points[i], &disc))
        });
        Ok(Campaign { config, density, grid, target, f_values, profile_norm, lipschitz })
    }
}

/// `E f_m(x) = ∬ h(w,b) δ^(−α)(<w,x> − b) db dw` on every grid point.
pub fn expected_network<P: DualProfile + ?Sized>(
    h: &P,
    alpha: u32,
    r: f64,
    grid: &BallGrid,
    sphere_resolution: usize,
    exec: Execution,
) -> Vec<Complex64> {
    let rule: SphereQuadrature = sphere_quadrature(grid.n, sphere_resolution);
    if let Some(cache) = SpectralCache::new(h, &rule, exec) {
        return map_range(grid.len(), exec, |i| {
            nalpha_eval_cached(&cache, alpha, r, &grid.points[i], &rule, Execution::Sequential)
        });
    }
    map_range(grid.len(), exec, |i| {
        nalpha_eval(h, alpha, r, &grid.points[i], &rule, BIntegration::Exact, Execution::Sequential)
    })
}

/// Outcome for one `(m, ε)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceedanceRow {
    pub m: usize,
    pub eps: f64,
    pub exceed: u64,
    pub trials: u64,
    pub frequency: f64,
    pub wilson: (f64, f64),
    /// The exact Chernoff-covering bound, when `α ≥ 2` and the sample count is feasible.
    pub bound: Option<f64>,
    /// The printed simplified form, when `α ≥ 2`.
    pub bound_simplified: Option<f64>,
}

/// Per-`m` error statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub m: usize,
    /// `(level, value)` pairs of the grid sup error.
    pub quantiles: Vec<(f64, f64)>,
    pub median: f64,
    /// Largest `|f_m|` seen on the grid, over all trials.
    pub max_abs_network: f64,
    /// Median of the Lipschitz-slack bound, when one applies.
    pub median_slack_bound: Option<f64>,
    /// Median of `max_grid |f − f_m|`, when `f` was tabulated.
    pub median_vs_f: Option<f64>,
    pub envelope_violations: u64,
    pub acceptance_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub m_values: Vec<usize>,
    pub eps_values: Vec<f64>,
    pub exceedance: Vec<ExceedanceRow>,
    pub errors: Vec<ErrorRow>,
    /// `seeds[k][j]` seeds trial `j` at `m_values[k]`.
    pub seeds: Vec<Vec<u64>>,
    /// `sup_error` per `[k][j]`.
    pub sup_errors: Vec<Vec<f64>>,
    pub slope: f64,
    /// Slope of the median error against `f` itself, when measured.
    pub slope_vs_f: Option<f64>,
    pub norm_1: f64,
    pub profile_norm: f64,
    pub big_lambda: f64,
    pub envelope: f64,
    pub runtime_s: f64,
}

struct TrialOutcome {
    err: SupError,
    err_vs_f: Option<f64>,
    max_abs: f64,
    stats: SamplingStats,
}

fn run_one(c: &Campaign, m: usize, seed: u64) -> Result<TrialOutcome> {
    let (features, stats) = sample_features(&c.density, m, seed)?;
    let scale = c.density.norm_1 / m as f64;
    let atoms = features
        .into_iter()
        .map(|f| Atom { a: f.value / f.value.norm() * scale, w: f.w, b: f.b })
        .collect();
    let net = RandomFeatureNetwork { alpha: c.density.alpha, r: c.density.r, atoms, seed };
    let values: Vec<Complex64> = c.grid.points.iter().map(|x| eval_network(&net, x)).collect();
    let max_abs = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let grid_max = values.iter().zip(&c.target).map(|(v, f)| (f - v).norm()).fold(0.0, f64::max);
    let err = SupError { grid_max, slack_bound: c.lipschitz.map(|l| grid_max + l * c.grid.covering_radius()) };
    let err_vs_f =
        c.f_values.as_ref().map(|f| values.iter().zip(f).map(|(v, f)| (f - v).norm()).fold(0.0, f64::max));
    Ok(TrialOutcome { err, err_vs_f, max_abs, stats })
}

/// Seed of trial `j` at the `k`-th sample count.
pub fn trial_seed(base: u64, k: usize, j: usize) -> u64 {
    derive_seed(derive_seed(base, k as u64), j as u64)
}

/// Run `trials` independent networks for every `m` and tabulate exceedances.
pub fn run_trials(c: &Campaign) -> Result<TrialReport> {
    let start = Instant::now();
    let cfg = &c.config;
    let n = cfg.density.n;
    let two_r = 2.0 * cfg.r;
    let big_lambda = two_r * c.profile_norm * activation(cfg.alpha, two_r);
    let mut exceedance = Vec::new();
    let mut errors = Vec::new();
    let mut seeds = Vec::new();
    let mut sup_errors = Vec::new();
    for (k, &m) in cfg.m_values.iter().enumerate() {
        let trial_seeds: Vec<u64> = (0..cfg.trials).map(|j| trial_seed(cfg.base_seed, k, j)).collect();
        let outcomes = map_range(cfg.trials, cfg.exec, |j| run_one(c, m, trial_seeds[j]));
        let outcomes: Vec<TrialOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
        let errs: Vec<f64> = outcomes.iter().map(|o| o.err.grid_max).collect();
        let mut sorted = errs.clone();
        sorted.sort_by(f64::total_cmp);
        let mut slack: Vec<f64> = outcomes.iter().filter_map(|o| o.err.slack_bound).collect();
        slack.sort_by(f64::total_cmp);
        let mut vs_f: Vec<f64> = outcomes.iter().filter_map(|o| o.err_vs_f).collect();
        vs_f.sort_by(f64::total_cmp);
        let (prop, acc) = outcomes.iter().fold((0u64, 0u64), |(p, a), o| (p + o.stats.proposals, a + o.stats.accepted));
        errors.push(ErrorRow {
            m,
            quantiles: cfg.quantile_levels.iter().map(|&q| (q, quantile_sorted(&sorted, q))).collect(),
            median: quantile_sorted(&sorted, 0.5),
            max_abs_network: outcomes.iter().map(|o| o.max_abs).fold(0.0, f64::max),
            median_slack_bound: (!slack.is_empty()).then(|| quantile_sorted(&slack, 0.5)),
            median_vs_f: (!vs_f.is_empty()).then(|| quantile_sorted(&vs_f, 0.5)),
            envelope_violations: outcomes.iter().map(|o| o.stats.envelope_violations).sum(),
            acceptance_rate: acc as f64 / prop as f64,
        });
        for &eps in &cfg.eps_values {
            let exceed = errs.iter().filter(|&&e| e > eps).count() as u64;
            let t = cfg.trials as u64;
            let (bound, bound_simplified) = if cfg.alpha >= 2 {
                let inp = RnnInputs { norm: c.profile_norm, r: cfg.r, alpha: cfg.alpha, dim: n as u32, m: m as u64 };
                match rnn_bound(&inp, Accuracy::Eps(eps)) {
                    Ok(b) => (b.exact, Some(b.simplified)),
                    Err(e) if e.is_precondition() => (None, None),
                    Err(e) => return Err(e),
                }
            } else {
                (None, None)
            };
            exceedance.push(ExceedanceRow {
                m,
                eps,
                exceed,
                trials: t,
                frequency: exceed as f64 / t as f64,
                wilson: wilson_interval(exceed, t),
                bound,
                bound_simplified,
            });
        }
        seeds.push(trial_seeds);
        sup_errors.push(errs);
    }
    let ms: Vec<f64> = cfg.m_values.iter().map(|&m| m as f64).collect();
    let medians: Vec<f64> = errors.iter().map(|e| e.median).collect();
    let slope = if ms.len() >= 2 { log_log_slope(&ms, &medians) } else { f64::NAN };
    let vs_f: Option<Vec<f64>> = errors.iter().map(|e| e.median_vs_f).collect();
    let slope_vs_f = vs_f.filter(|v| v.len() >= 2).map(|v| log_log_slope(&ms, &v));
    Ok(TrialReport {
        m_values: cfg.m_values.clone(),
        eps_values: cfg.eps_values.clone(),
        exceedance,
        errors,
        seeds,
        sup_errors,
        slope,
        slope_vs_f,
        norm_1: c.density.norm_1,
        profile_norm: c.profile_norm,
        big_lambda,
        envelope: c.density.envelope,
        runtime_s: start.elapsed().as_secs_f64(),
    })
}
