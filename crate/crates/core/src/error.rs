use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report.
///
/// Variants are grouped by the module that raises them; [`Error::code`] gives
/// a stable, module-qualified identifier and [`Error::exit_code`] maps the
/// error onto the CLI contract: 1 when the input data is at fault, 2 for
/// output and internal failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid TFN ({a}, {b}, {c}): {reason}")]
    TfnConstruction {
        a: f64,
        b: f64,
        c: f64,
        reason: String,
    },

    #[error("fuzzy domain error in {op}: {reason}")]
    FuzzyDomain { op: &'static str, reason: String },

    #[error("invalid Z-number reliability ({a}, {b}, {c}): components must lie in [0, 1]")]
    Reliability { a: f64, b: f64, c: f64 },

    #[error("unknown {scale} term {term:?}; valid codes: {valid}")]
    UnknownTerm {
        scale: &'static str,
        term: String,
        valid: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("missing judgments for (expert, alternative, criterion): {}", format_triples(.0))]
    IncompleteGrid(Vec<(String, String, String)>),

    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    Dimension {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("degenerate input in {op}: {reason}")]
    Degenerate { op: &'static str, reason: String },

    #[error("rank-deficient design matrix: column {column:?} is collinear with {with:?}")]
    Singular { column: String, with: Vec<String> },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: u64,
        reason: String,
    },

    #[error("cannot read {}: {source}", .path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {}: {source}", .path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

fn format_triples(triples: &[(String, String, String)]) -> String {
    triples
        .iter()
        .map(|(e, a, c)| format!("({e}, {a}, {c})"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::FuzzyDomain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn degenerate(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Degenerate {
            op,
            reason: reason.into(),
        }
    }

    /// Stable module-qualified error code, e.g. `fuzzy.construction`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::TfnConstruction { .. } => "fuzzy.construction",
            Error::FuzzyDomain { .. } => "fuzzy.domain",
            Error::Reliability { .. } => "fuzzy.reliability",
            Error::UnknownTerm { .. } => "scales.unknown_term",
            Error::Validation(_) => "input.validation",
            Error::IncompleteGrid(_) => "input.incomplete_grid",
            Error::Dimension { .. } => "compute.dimension",
            Error::Degenerate { .. } => "compute.degenerate",
            Error::Singular { .. } => "stats.singular",
            Error::Parse { .. } => "io.parse",
            Error::Read { .. } => "io.read",
            Error::Write { .. } => "io.write",
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TfnConstruction { .. }
            | Error::Reliability { .. }
            | Error::UnknownTerm { .. }
            | Error::Validation(_)
            | Error::IncompleteGrid(_)
            | Error::Parse { .. }
            | Error::Read { .. }
            | Error::Singular { .. }
            | Error::Dimension { .. }
            | Error::FuzzyDomain { .. }
            | Error::Degenerate { .. } => 1,
            Error::Write { .. } | Error::Internal(_) => 2,
        }
    }
}
