//! Error types shared across the crate.

use thiserror::Error;

/// A single violated (or advisory) constraint found by presentation validation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    /// The constraint formula, e.g. `2r+1 = ad`.
    pub constraint: String,
    /// What was actually seen.
    pub detail: String,
    /// Advisory violations do not invalidate the presentation.
    pub severity: Severity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Violation {
    pub fn error(constraint: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            constraint: constraint.into(),
            detail: detail.into(),
            severity: Severity::Error,
        }
    }

    pub fn warning(constraint: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            constraint: constraint.into(),
            detail: detail.into(),
            severity: Severity::Warning,
        }
    }
}

#[derive(Debug, Error)]
pub enum CtError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty series support defines no divisor")]
    EmptySupport,

    #[error("series is not semi-invariant: residues {first} and {second} both occur")]
    NotSemiInvariant { first: u32, second: u32 },

    #[error("invalid presentation: {}", format_violations(.0))]
    InvalidPresentation(Vec<Violation>),

    #[error("weight is not admissible over the quotient")]
    NotAdmissible,

    #[error("domination hypothesis fails at coordinate {coordinate}: w'[{coordinate}] < c*w[{coordinate}]")]
    DominationFails { coordinate: usize },

    #[error("weighted multiplicity not certified by the truncation bound (raise complete_up_to)")]
    UncertifiedMultiplicity,

    #[error("cap {got} too small: {requirement}")]
    CapTooSmall { requirement: String, got: u32 },

    #[error("{what} must be nonempty")]
    Empty { what: String },

    #[error("{what} must be positive")]
    NonPositive { what: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("[{}] {}", v.constraint, v.detail))
        .collect::<Vec<_>>()
        .join("; ")
}
