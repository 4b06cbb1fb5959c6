use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma evaluated at (or numerically at) a nonpositive integer.
    #[error("gamma function pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },
    /// An argument lies outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A multiplier specification violates the admissibility rule.
    #[error("inadmissible multiplier: {0}")]
    Inadmissible(String),
    /// A truncation schedule cannot meet its tail tolerance.
    #[error("schedule error: {0}")]
    Schedule(String),
    /// An Abel extrapolation did not settle.
    #[error("divergence: {0}")]
    Divergence(String),
    /// A truncated or adaptive integral failed to converge.
    #[error("integration failure: {0}")]
    Integration(String),
    /// The feature density has vanishing total mass.
    #[error("degenerate profile: the l1 norm {0:e} is numerically zero")]
    ZeroNorm(f64),
    /// Rejection sampling accepted too rarely.
    #[error("envelope quality: acceptance rate {rate:e} below 1e-4")]
    EnvelopeQuality { rate: f64 },
    /// A sample-count or parameter precondition of a bound fails.
    #[error("infeasible precondition: {0}")]
    Infeasible(String),
}

impl Error {
    /// True for precondition failures (as opposed to numerical failures).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Infeasible(_) | Error::ZeroNorm(_) | Error::Inadmissible(_) | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
