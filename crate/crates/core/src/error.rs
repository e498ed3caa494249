use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("empty domain [{lo}, {hi}]")]
    EmptyDomain { lo: f64, hi: f64 },

    #[error("position {value} outside [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    #[error("under-resolved grid: {0}")]
    UnderResolved(String),

    #[error("non-finite potential sample at x = {x}")]
    NonFinitePotential { x: f64 },

    #[error("{0} waveform does not vanish at contact")]
    UnsupportedSymmetry(&'static str),

    #[error("no convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of an iterative numeric procedure, as opposed to bad input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NonConvergence(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
