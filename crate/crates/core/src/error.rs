use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The budget sits exactly on the boundary between the small- and
    /// large-budget equilibrium structures, where no construction is defined.
    #[error("budget v = {v} lies on the regime boundary (1+a)/(2+a) - 1/2 for alpha = {alpha}")]
    RegimeBoundary { alpha: f64, v: f64 },

    #[error("malformed literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("grid too large for {mode} enumeration: {detail}")]
    Capacity { mode: &'static str, detail: String },

    #[error("strategy is not aligned with the grid: {0}")]
    Alignment(String),

    /// A numerical cross-check failed; indicates a formula defect.
    #[error("oracle error: {0}")]
    Oracle(String),
}
