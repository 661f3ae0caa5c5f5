//! Error type shared by all analysis and simulation modules.

use thiserror::Error;

/// Errors produced by the analysis pipeline and the PDE simulator.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input left its admissible range. Out-of-range values are reported,
    /// never clamped.
    #[error("{quantity} = {value} outside {expected}")]
    Domain {
        quantity: &'static str,
        value: f64,
        expected: String,
    },

    /// A bisection bracket did not straddle a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    BadBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A normal-form denominator is (numerically) resonant, or an eigenpair
    /// failed its normalization check.
    #[error("degenerate Hopf data at lambda = {lambda}: {what}")]
    Degenerate { lambda: f64, what: String },

    /// The requested operation needs mode-1 Hopf points but none exist.
    #[error("no mode-1 Hopf points for these parameters")]
    NoHopfPoints,

    /// The simulated prey density reached the singular range of the
    /// v^2/u kinetics.
    #[error("simulation blow-up at t = {t}: {what}")]
    Blowup { t: f64, what: String },

    /// A simulation configuration violates its stability or layout
    /// constraints.
    #[error("invalid simulation config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(quantity: &'static str, value: f64, expected: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            value,
            expected: expected.into(),
        }
    }
}
