//! Experiment configuration files: one JSON object per subcommand.
//!
//! Every struct rejects unknown keys, and every optional key has a default
//! that is written back into the output preamble.

use crate::output::Format;
use adz_core::barron::SourceDensity;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Failure modes of a CLI run, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("self-check failed: {}", .0.join("; "))]
    Tolerance(Vec<String>),
    #[error("infeasible precondition: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Tolerance(_) | CliError::Numeric(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<adz_core::Error> for CliError {
    fn from(e: adz_core::Error) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parse `text` as the config of one subcommand, reporting line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Config(format!("line {} column {}: {e}", e.line(), e.column()))
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub(crate) fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("field `{field}`: {msg}"))
}

/// A catalog density, optionally rescaled.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DensityConfig {
    pub id: String,
    #[serde(default = "one")]
    pub scale: f64,
}

impl DensityConfig {
    pub fn resolve(&self, n: usize) -> CliResult<SourceDensity> {
        let d = SourceDensity::by_name(&self.id, n).ok_or_else(|| {
            invalid(
                "density.id",
                format!(
                    "unknown density `{}` (expected radial_gaussian, shifted_gaussian, harmonic_gaussian, radial_shell or sigma)",
                    self.id
                ),
            )
        })?;
        if !(self.scale.is_finite() && self.scale != 0.0) {
            return Err(invalid("density.scale", "must be finite and nonzero"));
        }
        Ok(d.scaled(self.scale))
    }
}

fn one() -> f64 {
    1.0
}

pub(crate) fn check_dim(n: usize, allowed: &[usize]) -> CliResult<()> {
    if allowed.contains(&n) {
        Ok(())
    } else {
        Err(invalid("n", format!("dimension {n} not supported here (allowed: {allowed:?})")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DecomposeConfig {
    pub density: DensityConfig,
    pub n: usize,
    pub l_values: Vec<u32>,
    /// Explicit axes; when absent, `directions` random axes are drawn from the seed.
    pub theta: Option<Vec<Vec<f64>>>,
    pub directions: usize,
    pub t_values: Vec<f64>,
    pub sphere_resolution: Option<usize>,
    pub inversion_points: usize,
    pub abel: bool,
    pub inversion_tolerance: f64,
    pub abel_tolerance: f64,
    pub seed: Option<u64>,
    pub format: Format,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            density: DensityConfig { id: "shifted_gaussian".into(), scale: 1.0 },
            n: 3,
            l_values: (0..=6).collect(),
            theta: None,
            directions: 2,
            t_values: vec![0.5, 1.0, 2.0],
            sphere_resolution: None,
            inversion_points: 40,
            abel: true,
            inversion_tolerance: 1e-5,
            abel_tolerance: 1e-6,
            seed: None,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Exact,
    Gauss,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RepresentConfig {
    pub density: DensityConfig,
    pub n: usize,
    pub alpha: u32,
    /// Radius of the evaluation ball `K(r)`; for `alpha >= 1` also the `b`-cut.
    pub r: f64,
    /// Lattice resolution of the evaluation grid (spacing `r/grid_resolution`).
    pub grid_resolution: usize,
    /// Explicit points, replacing the grid.
    pub points: Option<Vec<Vec<f64>>>,
    pub sphere_resolution: Option<usize>,
    pub method: Method,
    pub error_tolerance: f64,
    pub ratio_tolerance: f64,
    pub seed: Option<u64>,
    pub format: Format,
}

impl Default for RepresentConfig {
    fn default() -> Self {
        RepresentConfig {
            density: DensityConfig { id: "shifted_gaussian".into(), scale: 1.0 },
            n: 3,
            alpha: 0,
            r: 1.0,
            grid_resolution: 2,
            points: None,
            sphere_resolution: None,
            method: Method::Exact,
            error_tolerance: 1e-4,
            ratio_tolerance: 1e-6,
            seed: None,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RvflConfig {
    pub density: DensityConfig,
    pub n: usize,
    pub alpha: u32,
    pub r: f64,
    pub m_values: Vec<usize>,
    pub eps_values: Vec<f64>,
    pub trials: usize,
    pub grid_resolution: usize,
    pub target_sphere_resolution: usize,
    pub density_sphere_resolution: usize,
    pub profile_points: usize,
    pub quantiles: Vec<f64>,
    pub compare_with_f: bool,
    /// Accepted range of the log-log slope of the median error; `null` disables the check.
    pub slope_range: Option<[f64; 2]>,
    pub seed: Option<u64>,
    pub format: Format,
}

impl Default for RvflConfig {
    fn default() -> Self {
        RvflConfig {
            density: DensityConfig { id: "shifted_gaussian".into(), scale: 1.0 },
            n: 3,
            alpha: 2,
            r: 1.0,
            m_values: (8..=14).map(|k| 1usize << k).collect(),
            eps_values: vec![0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0],
            trials: 200,
            grid_resolution: 6,
            target_sphere_resolution: 24,
            density_sphere_resolution: 32,
            profile_points: 40,
            quantiles: vec![0.05, 0.25, 0.5, 0.75, 0.95],
            compare_with_f: false,
            slope_range: Some([-0.65, -0.35]),
            seed: None,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SigmaConfig {
    pub n: usize,
    pub s_max: f64,
    pub s_step: f64,
    /// Finite-difference step of the Laplacian column.
    pub fd_step: f64,
    pub ratio_tolerance: f64,
    pub origin_tolerance: f64,
    pub format: Format,
}

impl Default for SigmaConfig {
    fn default() -> Self {
        SigmaConfig { n: 3, s_max: 10.0, s_step: 0.25, fd_step: 1e-2, ratio_tolerance: 1e-3, origin_tolerance: 1e-6, format: Format::Csv }
    }
}

/// Cartesian grid of Chernoff-bound parameters.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ChernoffGrid {
    pub lambda: Vec<u32>,
    pub b: Vec<f64>,
    pub k: Vec<f64>,
    pub eps: Vec<f64>,
    pub n: Vec<f64>,
    /// Radius of the ball `K` in the covering factor.
    pub radius: f64,
}

impl Default for ChernoffGrid {
    fn default() -> Self {
        ChernoffGrid { lambda: vec![1], b: vec![1.0], k: vec![1.0], eps: vec![1.0], n: vec![16.0, 100.0, 1e4], radius: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoverCase {
    pub lambda: u32,
    #[serde(default = "one")]
    pub radius: f64,
    pub delta: f64,
    #[serde(default = "yes")]
    pub greedy: bool,
}

fn yes() -> bool {
    true
}

/// `(m, ε)` grid of the random-network bound.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RnnGrid {
    pub norm: f64,
    pub r: f64,
    pub alpha: u32,
    pub dim: u32,
    pub m: Vec<u64>,
    pub eps: Vec<f64>,
    pub k_rate: Vec<f64>,
}

impl Default for RnnGrid {
    fn default() -> Self {
        RnnGrid { norm: 1.0, r: 1.0, alpha: 2, dim: 3, m: vec![1 << 10, 1 << 14, 1 << 20], eps: vec![], k_rate: vec![2.0] }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsConfig {
    pub chernoff: Option<ChernoffGrid>,
    pub covering: Vec<CoverCase>,
    pub rnn: Option<RnnGrid>,
    pub format: Format,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            chernoff: Some(ChernoffGrid::default()),
            covering: [1u32, 2, 3]
                .iter()
                .flat_map(|&lambda| {
                    [0.1, 0.25, 0.5].map(|delta| CoverCase { lambda, radius: 1.0, delta, greedy: true })
                })
                .collect(),
            rnn: Some(RnnGrid::default()),
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct MellinConfig {
    pub l_max: u32,
    pub n_values: Vec<u32>,
    pub y_values: Vec<f64>,
    pub alpha_max: u32,
    pub k_max: u32,
    pub asymptotic_y: f64,
    pub asymptotic_l_max: u32,
    pub asymptotic_alpha: Vec<u32>,
    pub identity_tolerance: f64,
    pub asymptotic_tolerance: f64,
    pub format: Format,
}

impl Default for MellinConfig {
    fn default() -> Self {
        MellinConfig {
            l_max: 6,
            n_values: vec![2, 3],
            y_values: vec![0.5, 2.0],
            alpha_max: 6,
            k_max: 8,
            asymptotic_y: 1e4,
            asymptotic_l_max: 4,
            asymptotic_alpha: vec![1, 2, 3],
            identity_tolerance: 1e-8,
            asymptotic_tolerance: 0.02,
            format: Format::Csv,
        }
    }
}
