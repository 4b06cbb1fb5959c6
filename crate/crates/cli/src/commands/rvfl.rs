//! Random-feature campaigns: exceedance frequencies, error quantiles and bounds.

use super::Outcome;
use crate::config::{check_dim, invalid, CliResult, RvflConfig};
use crate::output::{format_f64, Cell, Report};
use adz_core::par::Execution;
use adz_core::rvfl::{run_trials, Campaign, CampaignConfig, DensityOptions, TrialReport};

pub fn columns(quantiles: &[f64]) -> Vec<String> {
    let mut c: Vec<String> = [
        "m", "eps", "trials", "exceed", "frequency", "wilson_lo", "wilson_hi", "bound", "bound_simplified", "median_error",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    c.extend(quantiles.iter().map(|q| format!("q{}", format_f64(*q))));
    c.extend(
        ["median_slack_bound", "median_error_vs_f", "max_abs_network", "acceptance_rate", "envelope_violations"]
            .iter()
            .map(|s| s.to_string()),
    );
    c
}

pub fn campaign_config(cfg: &RvflConfig, seed: u64) -> CliResult<CampaignConfig> {
    check_dim(cfg.n, &[2, 3])?;
    let density = cfg.density.resolve(cfg.n)?;
    if cfg.alpha == 0 {
        return Err(invalid("alpha", "networks need alpha >= 1"));
    }
    if cfg.trials < 30 {
        return Err(invalid("trials", "at least 30 trials are required"));
    }
    if cfg.m_values.is_empty() || cfg.m_values.contains(&0) {
        return Err(invalid("m_values", "need at least one positive width"));
    }
    if cfg.quantiles.iter().any(|q| !(0.0..=1.0).contains(q)) {
        return Err(invalid("quantiles", "levels must lie in [0, 1]"));
    }
    let mut c = CampaignConfig::new(density, cfg.alpha, cfg.r);
    c.m_values = cfg.m_values.clone();
    c.eps_values = cfg.eps_values.clone();
    c.trials = cfg.trials;
    c.base_seed = seed;
    c.grid_resolution = cfg.grid_resolution;
    c.target_sphere_resolution = cfg.target_sphere_resolution;
    c.profile_points = cfg.profile_points;
    c.quantile_levels = cfg.quantiles.clone();
    c.compare_with_f = cfg.compare_with_f;
    c.density_options = DensityOptions { sphere_resolution: cfg.density_sphere_resolution, ..DensityOptions::default() };
    c.exec = Execution::default();
    Ok(c)
}

pub fn run(cfg: &RvflConfig, seed: u64) -> CliResult<Outcome> {
    let campaign = Campaign::prepare(campaign_config(cfg, seed)?)?;
    let rep = run_trials(&campaign)?;
    Ok(tabulate(cfg, &rep))
}

fn tabulate(cfg: &RvflConfig, rep: &TrialReport) -> Outcome {
    let cols = columns(&cfg.quantiles);
    let names: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut out = Outcome::new(Report::new("rvfl", &names));
    for row in &rep.exceedance {
        let e = rep.errors.iter().find(|e| e.m == row.m).expect("error row per width");
        let mut cells: Vec<Cell> = vec![
            row.m.into(),
            row.eps.into(),
            row.trials.into(),
            row.exceed.into(),
            row.frequency.into(),
            row.wilson.0.into(),
            row.wilson.1.into(),
            row.bound.into(),
            row.bound_simplified.into(),
            e.median.into(),
        ];
        cells.extend(e.quantiles.iter().map(|(_, v)| Cell::from(*v)));
        cells.extend([
            Cell::from(e.median_slack_bound),
            Cell::from(e.median_vs_f),
            e.max_abs_network.into(),
            e.acceptance_rate.into(),
            e.envelope_violations.into(),
        ]);
        out.report.push(cells);
    }
    let r = &mut out.report;
    r.summarize("slope", rep.slope);
    if let Some(s) = rep.slope_vs_f {
        r.summarize("slope_vs_f", s);
    }
    r.summarize("norm_1", rep.norm_1);
    r.summarize("profile_norm", rep.profile_norm);
    r.summarize("big_lambda", rep.big_lambda);
    r.summarize("envelope", rep.envelope);
    r.note("errors are measured against E f_m, the reconstruction from h^alpha cut to [-r, r]");
    if cfg.alpha == 1 {
        r.note("alpha = 1: no theoretical bound applies, the bound columns are empty; grid resolution doubled");
    } else {
        r.note("bound is the exact covering-Chernoff value, empty where the sample count is infeasible");
    }
    let half = |row: &adz_core::rvfl::ExceedanceRow| 0.5 * (row.wilson.1 - row.wilson.0);
    for row in &rep.exceedance {
        if let Some(b) = row.bound.filter(|b| *b < 1.0) {
            out.check(row.frequency <= b + half(row), || {
                format!("m={} eps={}: frequency {} above bound {b}", row.m, row.eps, row.frequency)
            });
        }
    }
    for e in &rep.errors {
        out.check(e.max_abs_network <= rep.big_lambda, || {
            format!("m={}: |f_m| reached {} > Lambda {}", e.m, e.max_abs_network, rep.big_lambda)
        });
        out.check(e.envelope_violations == 0, || format!("m={}: {} envelope violations", e.m, e.envelope_violations));
    }
    if let Some([lo, hi]) = cfg.slope_range {
        if rep.m_values.len() >= 2 {
            out.check((lo..=hi).contains(&rep.slope), || format!("slope {} outside [{lo}, {hi}]", rep.slope));
        }
    }
    out
}
