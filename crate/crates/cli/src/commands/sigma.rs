//! The example `σ(u) = |u|^{−n−1}[|u| ≥ 1]`: direct transform against the closed form.

use super::{max_of, Outcome};
use crate::config::{check_dim, invalid, CliResult, SigmaConfig};
use crate::output::{Cell, Report};
use adz_core::barron::{
    calibrate_kappa, printed_kappa, radial_kappa, sigma_closed_form, sigma_fourier, sigma_g_laplacian, SourceDensity,
};
use adz_core::specfun::sphere_area;

pub const COLUMNS: [&str; 7] = ["s", "direct", "closed", "linear", "g", "laplacian_g", "ratio"];

pub fn run(cfg: &SigmaConfig, _seed: u64) -> CliResult<Outcome> {
    check_dim(cfg.n, &[2, 3, 4])?;
    if !(cfg.s_step > 0.0 && cfg.s_max > 0.0) {
        return Err(invalid("s_step", "grid step and s_max must be positive"));
    }
    if !(cfg.fd_step > 0.0) {
        return Err(invalid("fd_step", "must be positive"));
    }
    let n = cfg.n;
    let d = SourceDensity::sigma(n);
    let kappa = calibrate_kappa(&d);
    let mut out = Outcome::new(Report::new("sigma", &COLUMNS));
    let count = (cfg.s_max / cfg.s_step).round() as usize;
    let mut ratios = Vec::new();
    let mut lap = Vec::new();
    for i in 0..=count {
        let s = i as f64 * cfg.s_step;
        let direct = sigma_fourier(&d, s);
        let c = sigma_closed_form(n, s, kappa);
        let ratio = c.total() / direct;
        let l = (s > 0.0).then(|| sigma_g_laplacian(n, s, kappa, cfg.fd_step));
        if s > 0.0 {
            ratios.push(ratio);
        }
        lap.extend(l);
        out.report.push(vec![s.into(), direct.into(), c.total().into(), c.linear.into(), c.g.into(), Cell::from(l), ratio.into()]);
    }
    let at_zero = sigma_fourier(&d, 0.0);
    let area = sphere_area(n as u32);
    let spread = max_of(ratios.iter().map(|r| (r - 1.0).abs()));
    let r = &mut out.report;
    r.summarize("kappa_fitted", kappa);
    r.summarize("kappa_printed", printed_kappa(n));
    r.summarize("kappa_radial", radial_kappa(n));
    r.summarize("kappa_matches_printed", ((kappa / printed_kappa(n)) - 1.0).abs() < 1e-6);
    r.summarize("direct_at_zero", at_zero);
    r.summarize("max_ratio_deviation", spread);
    r.summarize("max_abs_laplacian_g", max_of(lap.iter().map(|v| v.abs())));
    // Second difference of the full transform at 0; it grows like 1/h from the |x| term.
    for h in [1e-1, 1e-2, 1e-3] {
        let sd = 2.0 * (sigma_fourier(&d, h) - at_zero) / (h * h);
        r.summarize(&format!("second_difference_at_0_h{}", crate::output::format_f64(h)), sd);
    }
    r.note("closed = kappa_fitted * G-integral plus the linear part; the linear part carries a minus sign");
    out.check(spread <= cfg.ratio_tolerance, || format!("closed/direct ratio deviates by {spread:e}"));
    out.check((at_zero - area).abs() <= cfg.origin_tolerance, || {
        format!("F(sigma)(0) = {at_zero} differs from |S^(n-1)| = {area}")
    });
    out.check(lap.iter().all(|v| v.is_finite()), || "Laplacian of G not finite".into());
    Ok(out)
}
