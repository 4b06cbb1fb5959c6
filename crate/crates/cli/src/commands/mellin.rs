//! Inverse-multiplier identities, asymptotic ratios and operator identities.

use super::{max_of, Outcome};
use crate::config::{invalid, CliResult, MellinConfig};
use crate::output::{Cell, Report};
use adz_core::mellin::*;

pub const COLUMNS: [&str; 9] = ["kind", "l", "alpha", "n", "k", "y", "case", "residual", "ratio"];

pub fn run(cfg: &MellinConfig, _seed: u64) -> CliResult<Outcome> {
    if cfg.n_values.iter().any(|&n| n < 2) {
        return Err(invalid("n_values", "dimensions must be at least 2"));
    }
    if cfg.alpha_max > 6 {
        return Err(invalid("alpha_max", "operator identities are checked for alpha <= 6"));
    }
    let mut out = Outcome::new(Report::new("mellin-check", &COLUMNS));
    let mut inverse = Vec::new();
    for &n in &cfg.n_values {
        for l in 0..=cfg.l_max {
            let case = if l >= 2 && l % 2 == 0 { InverseCase::Even } else { InverseCase::Standard };
            for &y in &cfg.y_values {
                let id = multiplier_inverse_identity(l, n, y, case)?;
                inverse.push(id.residual);
                let case_name = match case {
                    InverseCase::Standard => "standard",
                    InverseCase::Even => "even",
                };
                let alpha = MultiplierSpec::base(l, n).alpha;
                out.report.push(vec![
                    "inverse".into(),
                    l.into(),
                    alpha.into(),
                    n.into(),
                    Cell::Empty,
                    y.into(),
                    case_name.into(),
                    id.residual.into(),
                    Cell::Empty,
                ]);
            }
        }
    }
    let mut ratios = Vec::new();
    for &n in &cfg.n_values {
        for l in 0..=cfg.asymptotic_l_max {
            for &alpha in &cfg.asymptotic_alpha {
                let spec = MultiplierSpec { l, alpha, n };
                if !spec.admissible() {
                    continue;
                }
                for y in [cfg.asymptotic_y, -cfg.asymptotic_y] {
                    let ratio = n_multiplier(spec, y)?.norm() / n_asymptotic(spec, y);
                    ratios.push(ratio);
                    out.report.push(vec![
                        "asymptotic".into(),
                        l.into(),
                        alpha.into(),
                        n.into(),
                        Cell::Empty,
                        y.into(),
                        Cell::Empty,
                        Cell::Empty,
                        ratio.into(),
                    ]);
                }
            }
        }
    }
    let mut operator = 0u128;
    for alpha in 1..=cfg.alpha_max {
        for k in 0..=cfg.k_max {
            let r = operator_identity_check(alpha, k)?;
            operator = operator.max(r.max());
            out.report.push(vec![
                "operator".into(),
                Cell::Empty,
                alpha.into(),
                Cell::Empty,
                k.into(),
                Cell::Empty,
                Cell::Empty,
                Cell::Int(r.max() as i64),
                Cell::Empty,
            ]);
        }
    }
    let inv_max = max_of(inverse);
    let ratio_dev = max_of(ratios.iter().map(|r| (r - 1.0).abs()));
    out.report.summarize("max_inverse_residual", inv_max);
    out.report.summarize("max_asymptotic_deviation", ratio_dev);
    out.report.summarize("max_operator_residual", Cell::Int(operator as i64));
    out.report.note("even-degree inverse identities use the Mellin argument -iy");
    out.check(inv_max < cfg.identity_tolerance, || format!("inverse identity residual {inv_max:e}"));
    out.check(ratio_dev <= cfg.asymptotic_tolerance, || format!("asymptotic ratio off by {ratio_dev}"));
    out.check(operator == 0, || format!("operator identity residual {operator}"));
    Ok(out)
}
