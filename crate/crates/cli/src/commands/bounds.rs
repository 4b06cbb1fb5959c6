//! Covering numbers, the Chernoff-covering bound and the random-network bound.

use super::Outcome;
use crate::config::{invalid, BoundsConfig, CliResult};
use crate::output::{Cell, Report};
use adz_core::bounds::*;
use adz_core::Error;

pub const COLUMNS: [&str; 27] = [
    "kind",
    "lambda",
    "b",
    "k",
    "eps",
    "n",
    "radius",
    "feasible",
    "zeta",
    "delta",
    "cover_lower",
    "cover_lower_theta",
    "cover_upper",
    "greedy",
    "greedy_in_sandwich",
    "bound",
    "log_bound",
    "asymptotic_printed",
    "asymptotic_corrected",
    "m",
    "alpha",
    "k_rate",
    "big_lambda",
    "lipschitz",
    "bound_simplified",
    "bound_simplified_corrected",
    "rate_form",
];

/// Largest greedy net attempted inside a Chernoff row.
const GREEDY_LIMIT: f64 = 2e4;

struct Row(Vec<Cell>);

impl Row {
    fn new(kind: &str) -> Self {
        let mut v = vec![Cell::Empty; COLUMNS.len()];
        v[0] = kind.into();
        Row(v)
    }

    fn set(&mut self, col: &str, value: impl Into<Cell>) -> &mut Self {
        let i = COLUMNS.iter().position(|c| *c == col).expect("known column");
        self.0[i] = value.into();
        self
    }
}

fn cover_cells(row: &mut Row, c: &CoveringNumber) {
    row.set("cover_lower", c.lower).set("cover_lower_theta", c.lower_with_theta).set("cover_upper", c.upper);
    if let Some(e) = c.exact {
        row.set("greedy", e).set("greedy_in_sandwich", c.greedy_in_sandwich().unwrap_or(false));
    }
}

pub fn run(cfg: &BoundsConfig, _seed: u64) -> CliResult<Outcome> {
    let mut out = Outcome::new(Report::new("bounds", &COLUMNS));
    let mut probabilities = Vec::new();
    if let Some(g) = &cfg.chernoff {
        if g.lambda.contains(&0) {
            return Err(invalid("chernoff.lambda", "dimensions must be positive"));
        }
        for &lambda in &g.lambda {
            for &b in &g.b {
                for &k in &g.k {
                    for &eps in &g.eps {
                        for &n in &g.n {
                            let p = ChernoffParams { lambda, b, k, eps, n };
                            let mut row = Row::new("chernoff");
                            row.set("lambda", lambda).set("b", b).set("k", k).set("eps", eps).set("n", n);
                            row.set("radius", g.radius);
                            let shape = Shape::Ball { lambda, radius: g.radius };
                            match chernoff_cover_bound(&p, &shape) {
                                Ok(cb) => {
                                    row.set("feasible", true).set("zeta", cb.zeta).set("delta", cb.delta);
                                    let formula = covering_number(&shape, cb.delta, CoverMode::Formula)?;
                                    let mode = if lambda <= 3 && formula.upper <= GREEDY_LIMIT {
                                        CoverMode::Greedy
                                    } else {
                                        CoverMode::Formula
                                    };
                                    cover_cells(&mut row, &covering_number(&shape, cb.delta, mode)?);
                                    row.set("bound", cb.value).set("log_bound", cb.log_value);
                                    probabilities.push(cb.value);
                                }
                                Err(Error::Infeasible(_)) => {
                                    row.set("feasible", false);
                                }
                                Err(e) => return Err(e.into()),
                            }
                            let vol = shape.volume();
                            let ap = log_asymptotic_printed(&p, vol).exp().min(1.0);
                            let ac = log_asymptotic_corrected(&p, vol).exp().min(1.0);
                            row.set("asymptotic_printed", ap).set("asymptotic_corrected", ac);
                            probabilities.extend([ap, ac]);
                            out.report.push(row.0);
                        }
                    }
                }
            }
        }
    }
    for (i, c) in cfg.covering.iter().enumerate() {
        if c.lambda == 0 || !(c.radius > 0.0) || !(c.delta > 0.0) {
            return Err(invalid(&format!("covering[{i}]"), "lambda, radius and delta must be positive"));
        }
        if c.greedy && c.lambda > 3 {
            return Err(invalid(&format!("covering[{i}].greedy"), "greedy nets support lambda <= 3"));
        }
        let shape = Shape::Ball { lambda: c.lambda, radius: c.radius };
        let mode = if c.greedy { CoverMode::Greedy } else { CoverMode::Formula };
        let cn = covering_number(&shape, c.delta, mode)?;
        let mut row = Row::new("covering");
        row.set("lambda", c.lambda).set("radius", c.radius).set("delta", c.delta);
        cover_cells(&mut row, &cn);
        if let Some(ok) = cn.greedy_in_sandwich() {
            out.check(ok, || format!("greedy count {} outside the sandwich at lambda={} delta={}", cn.exact.unwrap_or(0), c.lambda, c.delta));
        }
        out.report.push(row.0);
    }
    if let Some(g) = &cfg.rnn {
        let accs = g.eps.iter().map(|&e| Accuracy::Eps(e)).chain(g.k_rate.iter().map(|&k| Accuracy::Rate(k)));
        let accs: Vec<Accuracy> = accs.collect();
        for &m in &g.m {
            for &acc in &accs {
                let inp = RnnInputs { norm: g.norm, r: g.r, alpha: g.alpha, dim: g.dim, m };
                let mut row = Row::new("rnn");
                row.set("lambda", g.dim).set("radius", g.r).set("m", m).set("alpha", g.alpha);
                if let Accuracy::Rate(k) = acc {
                    row.set("k_rate", k);
                }
                match rnn_bound(&inp, acc) {
                    Ok(rb) => {
                        row.set("feasible", rb.exact.is_some()).set("eps", rb.eps);
                        row.set("big_lambda", rb.big_lambda).set("lipschitz", rb.lipschitz);
                        row.set("bound", Cell::from(rb.exact));
                        row.set("bound_simplified", rb.simplified).set("bound_simplified_corrected", rb.simplified_corrected);
                        probabilities.extend(rb.exact);
                        probabilities.extend([rb.simplified, rb.simplified_corrected]);
                        if let Accuracy::Rate(k) = acc {
                            row.set("rate_form", rnn_rate_form(g.alpha, g.dim, k, m as f64));
                        }
                    }
                    Err(e) if e.is_precondition() => {
                        row.set("feasible", false);
                    }
                    Err(e) => return Err(e.into()),
                }
                out.report.push(row.0);
            }
        }
    }
    let in_range = probabilities.iter().all(|p| (0.0..=1.0).contains(p));
    out.check(in_range, || "a probability column left [0, 1]".into());
    Ok(out)
}
