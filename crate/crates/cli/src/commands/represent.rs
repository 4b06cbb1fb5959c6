//! Dual-Radon (`α = 0`) and `N^α` (`α ≥ 1`) reconstructions against `f`.

use super::{max_of, Outcome};
use crate::config::{check_dim, invalid, CliResult, Method, RepresentConfig};
use crate::output::{format_f64, Cell, Report};
use adz_core::barron::{barron_norm, eval_f, norm_1_inf, ClosedFormProfile, Discretization, DualProfile, RadialOptions, TGrid};
use adz_core::par::Execution;
use adz_core::radon::{
    boundary_defect, boundary_defect_cached, dual_radon, dual_radon_cached, nalpha_eval, nalpha_eval_cached,
    BIntegration, SpectralCache,
};
use adz_core::rvfl::BallGrid;
use adz_core::spherical::sphere_quadrature;
use adz_core::Complex64;

pub const COLUMNS: [&str; 13] = [
    "kind",
    "x",
    "re_f",
    "im_f",
    "re_rec",
    "im_rec",
    "abs_error",
    "re_boundary",
    "im_boundary",
    "corrected_error",
    "barron_norm",
    "profile_norm",
    "norm_ratio",
];

/// Sphere resolution of the norm comparison; both sides share it.
const NORM_SPHERE: usize = 16;

pub fn run(cfg: &RepresentConfig, _seed: u64) -> CliResult<Outcome> {
    check_dim(cfg.n, &[2, 3])?;
    let density = cfg.density.resolve(cfg.n)?;
    if !density.supports_alpha(cfg.alpha) {
        return Err(invalid("alpha", format!("{} has no moment of order {}", density.catalog_id(), cfg.alpha)));
    }
    if !(cfg.r > 0.0) {
        return Err(invalid("r", "must be positive"));
    }
    let points = match &cfg.points {
        Some(p) => {
            if p.iter().any(|x| x.len() != cfg.n) {
                return Err(invalid("points", format!("each point needs {} coordinates", cfg.n)));
            }
            p.clone()
        }
        None => BallGrid::new(cfg.n, cfg.r, cfg.grid_resolution.max(1)).points,
    };
    let mut disc = Discretization::for_dimension(cfg.n);
    if let Some(res) = cfg.sphere_resolution {
        disc.sphere_resolution = res;
    }
    let rule = disc.sphere(cfg.n);
    let exec = Execution::default();
    let h0 = ClosedFormProfile::new(density, 0, RadialOptions::default());
    let ha = ClosedFormProfile::new(density, cfg.alpha, RadialOptions::default());
    let method = match cfg.method {
        Method::Exact => BIntegration::Exact,
        Method::Gauss => BIntegration::default(),
    };
    // Per-node exponential sums, reused across points when the profile has them.
    let c0 = SpectralCache::new(&h0, &rule, exec);
    let ca = match cfg.method {
        Method::Exact if cfg.alpha >= 1 => SpectralCache::new(&ha, &rule, exec),
        _ => None,
    };
    let mut out = Outcome::new(Report::new("represent", &COLUMNS));
    let (mut errs, mut corrected) = (Vec::new(), Vec::new());
    for x in &points {
        let f = eval_f(&density, x, &disc);
        let (rec, boundary) = match (cfg.alpha, &c0, &ca) {
            (0, Some(c), _) => (dual_radon_cached(c, x, &rule, exec), Complex64::new(0.0, 0.0)),
            (0, None, _) => (dual_radon(|w, t| h0.eval(w, t), x, &rule, exec), Complex64::new(0.0, 0.0)),
            (a, Some(c), Some(cc)) => (
                nalpha_eval_cached(cc, a, cfg.r, x, &rule, exec),
                boundary_defect_cached(c, a, cfg.r, x, &rule, exec),
            ),
            (a, _, _) => (
                nalpha_eval(&ha, a, cfg.r, x, &rule, method, exec),
                boundary_defect(&h0, a, cfg.r, x, &rule, exec),
            ),
        };
        let err = (rec - f).norm();
        let corr = (rec + boundary - f).norm();
        errs.push(err);
        corrected.push(corr);
        let xs = x.iter().map(|v| format_f64(*v)).collect::<Vec<_>>().join(" ");
        out.report.push(vec![
            "point".into(),
            xs.into(),
            f.re.into(),
            f.im.into(),
            rec.re.into(),
            rec.im.into(),
            err.into(),
            boundary.re.into(),
            boundary.im.into(),
            corr.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    let norm_rule = sphere_quadrature(cfg.n, NORM_SPHERE);
    let norm_disc = Discretization { sphere_resolution: NORM_SPHERE, ..disc };
    let b = barron_norm(&density, cfg.alpha, &norm_disc);
    let h = norm_1_inf(&ha, &norm_rule, TGrid::for_profile(&ha), exec).value;
    let ratio = h / b;
    let mut summary = vec![Cell::from("summary")];
    summary.extend(std::iter::repeat_n(Cell::Empty, 9));
    summary.extend([b.into(), h.into(), ratio.into()]);
    out.report.push(summary);
    let err_max = max_of(errs);
    let corr_max = max_of(corrected);
    out.report.summarize("barron_norm", b);
    out.report.summarize("profile_norm", h);
    out.report.summarize("norm_ratio", ratio);
    out.report.summarize("max_abs_error", err_max);
    out.report.summarize("max_corrected_error", corr_max);
    if cfg.alpha >= 1 {
        out.report.note(
            "corrected_error adds back the boundary terms of the b-cut at -r, which the truncated representation omits",
        );
    }
    out.check(ratio <= 1.0 + cfg.ratio_tolerance, || format!("norm ratio {ratio} exceeds 1 + {:e}", cfg.ratio_tolerance));
    out.check(err_max <= cfg.error_tolerance, || {
        format!("reconstruction error {err_max:e} above {:e}", cfg.error_tolerance)
    });
    Ok(out)
}
