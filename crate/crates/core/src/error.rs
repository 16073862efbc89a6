use thiserror::Error;

/// Errors produced by the special functions, the distribution families and
/// the divergence routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain: {0}")]
    Domain(String),

    /// A request would exceed a configured resource cap.
    #[error("resource limit: requested {requested}, cap is {cap}")]
    ResourceLimit { requested: usize, cap: usize },

    /// The sample mean of the sufficient statistic sits on the boundary of
    /// the moment space, so the likelihood has no maximiser.
    #[error("degenerate sample: MLE diverges ({0})")]
    DegenerateSample(String),

    /// A root search or bracket expansion gave up.
    #[error("convergence: {0}")]
    Convergence(String),

    /// A sample file line could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects shapes at or below the pole of the zeta function.
pub(crate) fn check_shape(name: &str, s: f64) -> Result<()> {
    if s.is_finite() && s > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must exceed 1")))
    }
}
