//! One module per subcommand; each turns a config into a [`Report`].

pub mod bounds;
pub mod decompose;
pub mod mellin;
pub mod represent;
pub mod rvfl;
pub mod sigma;

use crate::output::Report;

/// A finished table plus the self-checks it failed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn new(report: Report) -> Self {
        Outcome { report, failures: Vec::new() }
    }

    /// Record a failure unless `ok`.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

pub use adz_core::rvfl::random_directions;

pub(crate) fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}
