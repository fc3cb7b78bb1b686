use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violates the invariant of the type it was meant to build.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// A textual spec (grid, axis, fiducial, exponent, ...) failed to parse.
    #[error("cannot parse {what} at token `{token}`: {reason}")]
    Parse {
        what: &'static str,
        token: String,
        reason: String,
    },

    #[error("signal dimension mismatch: {0}")]
    Dimension(String),

    #[error("too few samples: {needed} needed, {got} given")]
    TooFewSamples { needed: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// The admissibility integral of the vacuum grows under frequency refinement.
    #[error("inadmissible vacuum: admissibility integral diverges ({coarse:.6e} -> {fine:.6e} under bin refinement)")]
    InadmissibleVacuum { coarse: f64, fine: f64 },

    #[error("vacuum not resolved at a = {a_min}: dilated step {step:.3} exceeds {limit}")]
    UnresolvedVacuum { a_min: f64, step: f64, limit: f64 },

    #[error("spectral radius {radius} is not below 1")]
    NotContraction { radius: f64 },

    #[error("matrix is numerically singular (condition number {condition:.3e})")]
    Singular { condition: f64 },

    #[error("eigensolver failed to converge")]
    Eigensolver,

    #[error("numerical range certificate failed: excess {excess:.3e} at sample {index}")]
    NumericalRange { index: usize, excess: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed {what}: {reason}")]
    Format { what: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(what: &'static str, token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn format(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Format {
            what,
            reason: reason.into(),
        }
    }
}
