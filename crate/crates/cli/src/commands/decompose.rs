//! Zonal pieces `f_l`, profiles `G_l`, the inversion identity and the Abel sum.

use super::{max_of, random_directions, Outcome};
use crate::config::{check_dim, invalid, CliResult, DecomposeConfig};
use crate::output::{Cell, Report};
use adz_core::barron::{eval_f, Discretization, RadialOptions, ZonalExpansion};
use adz_core::spherical::{abel_sum_terms, AbelSchedule};

pub const COLUMNS: [&str; 10] =
    ["l", "theta_id", "theta", "t", "re_f", "im_f", "re_g", "im_g", "inversion_residual", "abel_residual"];

pub fn run(cfg: &DecomposeConfig, seed: u64) -> CliResult<Outcome> {
    check_dim(cfg.n, &[2, 3])?;
    let density = cfg.density.resolve(cfg.n)?;
    if cfg.t_values.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(invalid("t_values", "entries must be positive"));
    }
    let thetas = match &cfg.theta {
        Some(list) => list
            .iter()
            .map(|v| {
                let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if v.len() != cfg.n || !(s > 0.0) {
                    Err(invalid("theta", format!("each axis needs {} nonzero coordinates", cfg.n)))
                } else {
                    Ok(v.iter().map(|x| x / s).collect::<Vec<f64>>())
                }
            })
            .collect::<CliResult<Vec<_>>>()?,
        None => random_directions(cfg.n, cfg.directions, seed),
    };
    let mut disc = Discretization::for_dimension(cfg.n);
    if let Some(res) = cfg.sphere_resolution {
        disc.sphere_resolution = res;
    }
    let sphere = disc.sphere(cfg.n);
    let sched = AbelSchedule::for_dimension(cfg.n);
    let l_top = cfg.l_values.iter().copied().max();
    let mut out = Outcome::new(Report::new("decompose", &COLUMNS));
    let mut inversion = Vec::new();
    let mut abel = Vec::new();
    for (id, theta) in thetas.iter().enumerate() {
        let Some(l_top) = l_top else { break };
        let l_max = if cfg.abel { l_top.max(sched.l_max) } else { l_top };
        let z = ZonalExpansion::new(density, theta, l_max, 0, &sphere, RadialOptions::default());
        let theta_text = theta.iter().map(|v| crate::output::format_f64(*v)).collect::<Vec<_>>().join(" ");
        for &t in &cfg.t_values {
            let abel_res = if cfg.abel {
                let terms: Vec<_> = (0..=sched.l_max).map(|l| z.f_piece(l, t)).collect();
                let (v, _) = abel_sum_terms(&terms, &sched)?;
                let x: Vec<f64> = theta.iter().map(|c| c * t).collect();
                let r = (v - eval_f(&density, &x, &disc)).norm();
                abel.push(r);
                Some(r)
            } else {
                None
            };
            for &l in &cfg.l_values {
                let f = z.f_piece(l, t);
                let g = z.g_piece(l, 0, t);
                let res = (z.inversion_rhs(l, t, cfg.inversion_points) - f).norm();
                inversion.push(res);
                out.report.push(vec![
                    l.into(),
                    id.into(),
                    theta_text.clone().into(),
                    t.into(),
                    f.re.into(),
                    f.im.into(),
                    g.re.into(),
                    g.im.into(),
                    res.into(),
                    Cell::from(abel_res),
                ]);
            }
        }
    }
    let inv_max = max_of(inversion.iter().copied());
    let abel_max = max_of(abel.iter().copied());
    out.report.summarize("max_inversion_residual", inv_max);
    out.check(inv_max <= cfg.inversion_tolerance, || {
        format!("inversion residual {inv_max:e} above {:e}", cfg.inversion_tolerance)
    });
    if cfg.abel && !abel.is_empty() {
        out.report.summarize("max_abel_residual", abel_max);
        out.check(abel_max <= cfg.abel_tolerance, || {
            format!("Abel residual {abel_max:e} above {:e}", cfg.abel_tolerance)
        });
    }
    Ok(out)
}
