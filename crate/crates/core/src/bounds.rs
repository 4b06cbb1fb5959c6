//! Covering numbers, the `(ζ, δ)` pair, the Chernoff-covering bound and the
//! random-network bound.

use crate::error::{Error, Result};
use crate::radon::activation;
use crate::specfun::ball_volume;
use std::collections::BinaryHeap;

/// `(θ_λ, Θ_λ)` with `θ_λ = λ ln λ + λ ln ln λ + 5λ` for `λ >= 3`, `5λ` below,
/// and `Θ_λ = θ_λ √π (λ³ + λ² + λ/2 + 1/30)^(1/6)`.
pub fn theta_constants(lambda: u32) -> (f64, f64) {
    assert!(lambda >= 1);
    let l = lambda as f64;
    let theta = if lambda >= 3 { l * l.ln() + l * l.ln().ln() + 5.0 * l } else { 5.0 * l };
    let big = theta * std::f64::consts::PI.sqrt() * (l * l * l + l * l + 0.5 * l + 1.0 / 30.0).powf(1.0 / 6.0);
    (theta, big)
}

/// Parameters of the Chernoff-covering bound: `λ` dimension, summand bound `b`,
/// Lipschitz constant `k`, accuracy `ε`, sample count `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffParams {
    pub lambda: u32,
    pub b: f64,
    pub k: f64,
    pub eps: f64,
    pub n: f64,
}

/// `ζ = (εn/b²)(1 + √(1 − 4λ(b/ε)²/n))` and `δ = λ/(kζ)`.
pub fn zeta_delta(p: &ChernoffParams) -> Result<(f64, f64)> {
    let l = p.lambda as f64;
    let need = 4.0 * l * (p.b / p.eps).powi(2);
    if p.n < need {
        return Err(Error::Infeasible(format!("sample count {} below 4λ(b/ε)² = {need}", p.n)));
    }
    let disc = (1.0 - need / p.n).max(0.0);
    let zeta = p.eps * p.n / (p.b * p.b) * (1.0 + disc.sqrt());
    Ok((zeta, l / (p.k * zeta)))
}

/// `(kδ)^{−λ} exp(−2(n/b²)(ε/2 − kδ)²)`, minimised locally at `δ = λ/(kζ)`.
pub fn kdelta_objective(p: &ChernoffParams, delta: f64) -> f64 {
    let kd = p.k * delta;
    (-(p.lambda as f64) * kd.ln() - 2.0 * (p.n / (p.b * p.b)) * (0.5 * p.eps - kd).powi(2)).exp()
}

/// A convex body for covering numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ball { lambda: u32, radius: f64 },
    Box { half_widths: Vec<f64> },
}

impl Shape {
    pub fn lambda(&self) -> u32 {
        match self {
            Shape::Ball { lambda, .. } => *lambda,
            Shape::Box { half_widths } => half_widths.len() as u32,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Shape::Ball { lambda, radius } => ball_volume(*lambda, *radius),
            Shape::Box { half_widths } => half_widths.iter().map(|h| 2.0 * h).product(),
        }
    }

    /// Radius of the largest inscribed ball.
    pub fn inradius(&self) -> f64 {
        match self {
            Shape::Ball { radius, .. } => *radius,
            Shape::Box { half_widths } => half_widths.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        match self {
            Shape::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>() <= radius * radius * (1.0 + 1e-12),
            Shape::Box { half_widths } => x.iter().zip(half_widths).all(|(v, h)| v.abs() <= h * (1.0 + 1e-12)),
        }
    }

    fn half_extent(&self, i: usize) -> f64 {
        match self {
            Shape::Ball { radius, .. } => *radius,
            Shape::Box { half_widths } => half_widths[i],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Formula,
    Greedy,
}

/// Two-sided covering-number bounds and, in greedy mode, a constructive count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveringNumber {
    /// `|S|(1−δ/ρ)^λ/|K(δ)|`: any covering has density at least one.
    pub lower: f64,
    /// `θ_λ|S|(1+δ/ρ)^λ/|K(δ)|`.
    pub upper: f64,
    /// The lower side with `θ_λ` in place of the covering density.
    pub lower_with_theta: f64,
    pub exact: Option<u64>,
}

impl CoveringNumber {
    pub fn greedy_in_sandwich(&self) -> Option<bool> {
        self.exact.map(|e| (e as f64) >= self.lower && (e as f64) <= self.upper)
    }
}

pub fn covering_number(shape: &Shape, delta: f64, mode: CoverMode) -> Result<CoveringNumber> {
    let lambda = shape.lambda();
    let rho = shape.inradius();
    if delta <= 0.0 {
        return Err(Error::Domain(format!("covering radius must be positive, got {delta}")));
    }
    let far = match shape {
        Shape::Ball { radius, .. } => *radius,
        Shape::Box { half_widths } => half_widths.iter().map(|h| h * h).sum::<f64>().sqrt(),
    };
    if delta >= far {
        return Ok(CoveringNumber { lower: 1.0, upper: 1.0, lower_with_theta: 1.0, exact: Some(1) });
    }
    let (theta, _) = theta_constants(lambda);
    let ratio = shape.volume() / ball_volume(lambda, delta);
    let l = lambda as f64;
    let (lower, lower_with_theta, upper) = if delta < rho {
        let lo = ratio * (1.0 - delta / rho).powf(l);
        (lo.max(1.0), (theta * lo).max(1.0), theta * ratio * (1.0 + delta / rho).powf(l))
    } else {
        (ratio.max(1.0), ratio.max(1.0), f64::INFINITY)
    };
    let exact = match mode {
        CoverMode::Formula => None,
        CoverMode::Greedy => {
            if lambda > 3 {
                return Err(Error::Domain("greedy covering supports λ <= 3".into()));
            }
            Some(greedy_cover(shape, delta))
        }
    };
    Ok(CoveringNumber { lower, upper, lower_with_theta, exact })
}

/// Number of centres of a greedy `δ`-net.
///
/// In one dimension the interval is covered exactly by `⌈L/(2δ)⌉` balls.
/// Otherwise `K` is sampled by a lattice of step `h` and lattice points are
/// covered with the reduced radius `δ − h√λ/2`, so every point of `K` lies
/// within `δ` of a centre and the count is a valid upper bound. Centres are
/// picked by lazy max-coverage greedy among lattice points; small planar
/// nets are then thinned by minimax re-centring.
pub fn greedy_cover(shape: &Shape, delta: f64) -> u64 {
    let lambda = shape.lambda() as usize;
    if lambda == 1 {
        let len = 2.0 * shape.half_extent(0);
        return ((len / (2.0 * delta)) * (1.0 - 1e-12)).ceil().max(1.0) as u64;
    }
    // Finer lattices where few centres make the reduced radius matter most.
    let few = shape.inradius() / delta <= 2.0;
    let h = delta
        / match (lambda, few) {
            (2, true) => 32.0,
            (2, false) => 12.0,
            (_, true) => 8.0,
            _ => 4.0,
        };
    let slack = h * (lambda as f64).sqrt() / 2.0;
    let reduced = delta - slack;
    let half: Vec<i64> =
        (0..lambda).map(|i| ((shape.half_extent(i) + slack + reduced) / h).ceil() as i64).collect();
    let dims: Vec<usize> = half.iter().map(|m| (2 * m + 1) as usize).collect();
    let reach = (reduced / h).floor() as i64;
    let lat = Lattice::new(dims, half, h, reach, reduced);
    let total = lat.len();
    let mut x = vec![0.0; lambda];
    let mut target = vec![false; total];
    let mut cand = vec![false; total];
    for c in 0..total {
        lat.coord(c, &mut x);
        target[c] = near_shape(shape, &x, slack);
        cand[c] = near_shape(shape, &x, slack + reduced);
    }
    let mut covered = vec![false; total];
    let mut buf = Vec::new();
    let gain_of = |c: usize, covered: &[bool], buf: &mut Vec<usize>| {
        lat.neighbours(c, buf);
        buf.iter().filter(|&&p| target[p] && !covered[p]).count()
    };
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> = BinaryHeap::new();
    for c in (0..total).filter(|&c| cand[c]) {
        let g = gain_of(c, &covered, &mut buf);
        if g > 0 {
            heap.push((g, std::cmp::Reverse(c)));
        }
    }
    let mut remaining = target.iter().filter(|&&t| t).count();
    let mut chosen: Vec<usize> = Vec::new();
    while remaining > 0 {
        let (g, std::cmp::Reverse(c)) = heap.pop().expect("candidates cover every lattice point");
        let now = gain_of(c, &covered, &mut buf);
        if now < g {
            if now > 0 {
                heap.push((now, std::cmp::Reverse(c)));
            }
            continue;
        }
        chosen.push(c);
        for &p in &buf {
            if target[p] && !covered[p] {
                covered[p] = true;
                remaining -= 1;
            }
        }
    }
    let coord = |c: usize| {
        let mut v = vec![0.0; lambda];
        lat.coord(c, &mut v);
        v
    };
    if lambda == 2 && chosen.len() <= REFINE_LIMIT {
        let points: Vec<Vec<f64>> = (0..total).filter(|&c| target[c]).map(coord).collect();
        let centres: Vec<Vec<f64>> = chosen.iter().map(|&c| coord(c)).collect();
        return refine(&points, centres, reduced).len() as u64;
    }
    chosen.len() as u64
}

/// Full rectangular lattice with a ball stencil of integer offsets.
struct Lattice {
    dims: Vec<usize>,
    half: Vec<i64>,
    h: f64,
    stencil: Vec<Vec<i64>>,
}

impl Lattice {
    fn new(dims: Vec<usize>, half: Vec<i64>, h: f64, reach: i64, radius: f64) -> Self {
        let lambda = dims.len();
        let side = (2 * reach + 1) as usize;
        let mut stencil = Vec::new();
        for code in 0..side.pow(lambda as u32) {
            let mut c = code;
            let o: Vec<i64> = (0..lambda)
                .map(|_| {
                    let v = (c % side) as i64 - reach;
                    c /= side;
                    v
                })
                .collect();
            if o.iter().map(|v| (v * v) as f64).sum::<f64>() * h * h <= radius * radius {
                stencil.push(o);
            }
        }
        Lattice { dims, half, h, stencil }
    }

    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn coord(&self, mut code: usize, out: &mut [f64]) {
        for i in 0..self.dims.len() {
            out[i] = ((code % self.dims[i]) as i64 - self.half[i]) as f64 * self.h;
            code /= self.dims[i];
        }
    }

    fn neighbours(&self, code: usize, out: &mut Vec<usize>) {
        out.clear();
        let mut base = [0i64; 3];
        let mut c = code;
        for (i, b) in base.iter_mut().enumerate().take(self.dims.len()) {
            *b = (c % self.dims[i]) as i64;
            c /= self.dims[i];
        }
        'next: for o in &self.stencil {
            let mut lin = 0usize;
            let mut mul = 1usize;
            for i in 0..o.len() {
                let v = base[i] + o[i];
                if v < 0 || v >= self.dims[i] as i64 {
                    continue 'next;
                }
                lin += v as usize * mul;
                mul *= self.dims[i];
            }
            out.push(lin);
        }
    }
}

const REFINE_LIMIT: usize = 40;

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centre index for each point, and the largest nearest distance.
fn assign(points: &[Vec<f64>], centres: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut worst = 0.0f64;
    let owner = points
        .iter()
        .map(|p| {
            let (i, d) = centres
                .iter()
                .enumerate()
                .map(|(i, c)| (i, dist2(p, c)))
                .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
            worst = worst.max(d);
            i
        })
        .collect();
    (owner, worst.sqrt())
}

/// Approximate minimax centre of a point cloud (Bădoiu–Clarkson iterations).
fn minimax_centre(points: &[&Vec<f64>], start: &[f64]) -> Vec<f64> {
    let mut c = start.to_vec();
    for it in 1..=40 {
        let far = points
            .iter()
            .max_by(|a, b| dist2(a, &c).total_cmp(&dist2(b, &c)))
            .expect("non-empty cell");
        let step = 1.0 / (it as f64 + 1.0);
        for (ci, fi) in c.iter_mut().zip(far.iter()) {
            *ci += (fi - *ci) * step;
        }
    }
    c
}

/// Drop centres one at a time while minimax re-centring keeps every lattice
/// point within `radius`.
fn refine(points: &[Vec<f64>], mut centres: Vec<Vec<f64>>, radius: f64) -> Vec<Vec<f64>> {
    'outer: while centres.len() > 1 {
        let (owner, _) = assign(points, &centres);
        let mut load = vec![0usize; centres.len()];
        for &o in &owner {
            load[o] += 1;
        }
        let mut order: Vec<usize> = (0..centres.len()).collect();
        order.sort_by_key(|&i| (load[i], i));
        for &drop in order.iter().take(4) {
            let mut trial: Vec<Vec<f64>> =
                centres.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, c)| c.clone()).collect();
            for _ in 0..30 {
                let (owner, worst) = assign(points, &trial);
                if worst <= radius {
                    centres = trial;
                    continue 'outer;
                }
                let mut cells: Vec<Vec<&Vec<f64>>> = vec![Vec::new(); trial.len()];
                for (p, &o) in points.iter().zip(&owner) {
                    cells[o].push(p);
                }
                for (c, cell) in trial.iter_mut().zip(&cells) {
                    if !cell.is_empty() {
                        *c = minimax_centre(cell, c);
                    }
                }
            }
        }
        break;
    }
    centres
}

fn near_shape(shape: &Shape, x: &[f64], slack: f64) -> bool {
    let near = match shape {
        Shape::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>().sqrt() <= radius + slack,
        Shape::Box { half_widths } => x.iter().zip(half_widths).all(|(v, h)| v.abs() <= h + slack),
    };
    near || shape.contains(x)
}

/// Chernoff-covering bound on `P{‖E f − mean‖_∞ > ε}` over `shape`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBound {
    pub zeta: f64,
    pub delta: f64,
    /// Natural log of `2 N δ^λ (k√e/λ)^λ ζ^λ e^{−εζ/4}` before clamping.
    pub log_value: f64,
    /// `min(1, exp(log_value))`.
    pub value: f64,
}

pub fn chernoff_cover_bound(p: &ChernoffParams, shape: &Shape) -> Result<ChernoffBound> {
    let (zeta, delta) = zeta_delta(p)?;
    let cover = covering_number(shape, delta, CoverMode::Formula)?;
    let l = p.lambda as f64;
    let log_value = std::f64::consts::LN_2 + cover.upper.ln() + l * delta.ln()
        + l * (p.k * 0.5f64.exp() / l).ln()
        + l * zeta.ln()
        - 0.25 * p.eps * zeta;
    Ok(ChernoffBound { zeta, delta, log_value, value: log_value.exp().min(1.0) })
}

/// Log of the simplified large-`n` form,
/// `2|K|Θ_λ(2πλ)^{−λ/2}(εkn/b²)^λ e^{−(n/2)(ε/b)²}`.
pub fn log_asymptotic_printed(p: &ChernoffParams, volume: f64) -> f64 {
    let l = p.lambda as f64;
    let (_, big) = theta_constants(p.lambda);
    std::f64::consts::LN_2 + volume.ln() + big.ln() - 0.5 * l * (2.0 * std::f64::consts::PI * l).ln()
        + l * (p.eps * p.k * p.n / (p.b * p.b)).ln()
        - 0.5 * p.n * (p.eps / p.b).powi(2)
}

/// The printed factor lost in the simplification: `ζ ≈ 2εn/b² − 2λ/ε` contributes `2^λ e^{λ/2}`.
pub fn asymptotic_correction(lambda: u32) -> f64 {
    let l = lambda as f64;
    l * (std::f64::consts::LN_2 + 0.5)
}

/// Log of the simplified form with the `2^λ e^{λ/2}` factor restored.
pub fn log_asymptotic_corrected(p: &ChernoffParams, volume: f64) -> f64 {
    log_asymptotic_printed(p, volume) + asymptotic_correction(p.lambda)
}

/// Inputs of the random-network bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RnnInputs {
    /// `‖f | N^α‖ = ‖h^α‖_{1,∞}`.
    pub norm: f64,
    pub r: f64,
    pub alpha: u32,
    /// Ambient dimension.
    pub dim: u32,
    /// Number of atoms.
    pub m: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Accuracy {
    Eps(f64),
    /// `ε = Λ √(k_rate · dim · ln m / m)`.
    Rate(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RnnBound {
    /// `Λ = 2r‖f|N^α‖ δ^{(−α)}(2r)`.
    pub big_lambda: f64,
    /// `2r‖f|N^α‖ δ^{(1−α)}(2r)`.
    pub lipschitz: f64,
    pub eps: f64,
    /// The exact bound on `K(r)`, or `None` when the sample count is infeasible.
    pub exact: Option<f64>,
    /// The printed simplified form, clamped to `[0, 1]`.
    pub simplified: f64,
    /// The simplified form with the `2^λ e^{λ/2}` factor restored, clamped.
    pub simplified_corrected: f64,
}

pub fn rnn_bound(inp: &RnnInputs, acc: Accuracy) -> Result<RnnBound> {
    if inp.alpha < 2 {
        return Err(Error::Domain("random-network bound needs alpha >= 2".into()));
    }
    let two_r = 2.0 * inp.r;
    let big_lambda = two_r * inp.norm * activation(inp.alpha, two_r);
    let lipschitz = two_r * inp.norm * activation(inp.alpha - 1, two_r);
    let m = inp.m as f64;
    let d = inp.dim as f64;
    let eps = match acc {
        Accuracy::Eps(e) => e,
        Accuracy::Rate(k) => {
            if k * m.ln() < 4.0 {
                return Err(Error::Infeasible(format!("k_rate ln m = {} < 4", k * m.ln())));
            }
            big_lambda * (k * d * m.ln() / m).sqrt()
        }
    };
    if big_lambda <= 0.0 {
        return Err(Error::ZeroNorm(inp.norm));
    }
    let p = ChernoffParams { lambda: inp.dim, b: big_lambda, k: lipschitz, eps, n: m };
    let shape = Shape::Ball { lambda: inp.dim, radius: inp.r };
    let exact = match chernoff_cover_bound(&p, &shape) {
        Ok(b) => Some(b.value),
        Err(Error::Infeasible(_)) => None,
        Err(e) => return Err(e),
    };
    let vol = shape.volume();
    let simplified = log_asymptotic_printed(&p, vol).exp().min(1.0);
    let simplified_corrected = log_asymptotic_corrected(&p, vol).exp().min(1.0);
    Ok(RnnBound { big_lambda, lipschitz, eps, exact, simplified, simplified_corrected })
}

/// `2|K((α−1)/2)| Θ_n (k ln m/(2π m^{k−1}))^{n/2}` for `ε` given by the rate form.
pub fn rnn_rate_form(alpha: u32, dim: u32, k_rate: f64, m: f64) -> f64 {
    let (_, big) = theta_constants(dim);
    let d = dim as f64;
    let log = std::f64::consts::LN_2 + ball_volume(dim, (alpha as f64 - 1.0) / 2.0).ln() + big.ln()
        + 0.5 * d * ((k_rate * m.ln()).ln() - (2.0 * std::f64::consts::PI).ln() - (k_rate - 1.0) * m.ln());
    log.exp()
}
