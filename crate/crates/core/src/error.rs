use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(
        "dispersive regime violated at t = {t:.6} ns: rho_ee / rho11(0) = {ratio:.4} exceeds {limit}"
    )]
    DispersiveRegimeViolation { t: f64, ratio: f64, limit: f64 },

    #[error("step size underflow at t = {t:.9} ns (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t:.6} ns")]
    TooManySteps { t: f64, max_steps: usize },

    #[error("final field amplitude is zero; phase undefined")]
    ZeroAmplitude,

    #[error("squeezed-state overlap exponent {exponent:.3} too large; semiclassical ansatz broken")]
    AnsatzBreakdown { exponent: f64 },

    #[error("target phase {target:e} not bracketed: approx phase is {lo:e} at g_lo and {hi:e} at g_hi")]
    NoBracket { target: f64, lo: f64, hi: f64 },

    #[error("phase shift is not monotone in g over the bracket near g = {g:e} rad/ns")]
    NonMonotone { g: f64 },

    #[error("root finding did not converge after {steps} steps (last relative error {rel_err:e})")]
    NonConvergence { steps: usize, rel_err: f64 },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    /// Integration or root-finding failure, as opposed to bad input or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DispersiveRegimeViolation { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::TooManySteps { .. }
                | Error::ZeroAmplitude
                | Error::AnsatzBreakdown { .. }
                | Error::NoBracket { .. }
                | Error::NonMonotone { .. }
                | Error::NonConvergence { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Csv { .. })
    }
}
