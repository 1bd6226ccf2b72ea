use thiserror::Error;

use crate::rootfind::Branch;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Constraint data outside the feasible region; `condition` names the
    /// inequality that failed.
    #[error("infeasible: {condition}")]
    Infeasible { condition: String },

    /// A theorem hypothesis does not hold for the supplied data.
    #[error("hypothesis violated: {condition}")]
    HypothesisViolated { condition: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested branch of the alpha-equation has no root.
    #[error("no {branch:?} root: {condition}")]
    BranchMissing { branch: Branch, condition: String },

    /// All points coincide; the alpha-equation degenerates at alpha = 0.
    #[error("degenerate all-equal configuration (ratio {ratio} <= n = {n})")]
    DegenerateAllEqual { n: usize, ratio: f64 },

    #[error("solver did not converge: residual {residual:e} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("degree {degree} outside supported range {supported}")]
    UnsupportedDegree { degree: usize, supported: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn infeasible(condition: impl Into<String>) -> Self {
        Error::Infeasible { condition: condition.into() }
    }

    pub(crate) fn hypothesis(condition: impl Into<String>) -> Self {
        Error::HypothesisViolated { condition: condition.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Data problems (as opposed to malformed requests).
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Infeasible { .. }
                | Error::HypothesisViolated { .. }
                | Error::BranchMissing { .. }
                | Error::DegenerateAllEqual { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
