use thiserror::Error;

/// Errors raised by the distribution, series, sampling and scenario layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// `ln p_n(A+B)` is not finite or lies below the configured floor, so the
    /// conditional split law is undefined along the generic path.
    #[error("degenerate denominator: ln p_{n}(A+B) = {log_prob} is below the floor {log_floor}")]
    DegenerateDenominator {
        n: u64,
        log_prob: f64,
        log_floor: f64,
    },

    #[error(
        "draw budget exhausted: {accepted} of {target} samples accepted after {draws} draws \
         (acceptance rate {acceptance_rate:.3e})"
    )]
    BudgetExhausted {
        accepted: u64,
        target: u64,
        draws: u64,
        acceptance_rate: f64,
    },

    #[error("degenerate comparison: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
