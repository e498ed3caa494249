use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("numeric failure: {0}")]
    NonConvergence(String),

    #[error("selftest failed: {0}")]
    SelftestFailed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidConfig(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::SelftestFailed(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<hcpair::Error> for CliError {
    fn from(e: hcpair::Error) -> Self {
        if e.is_numeric_failure() {
            CliError::NonConvergence(e.to_string())
        } else {
            CliError::InvalidConfig(e.to_string())
        }
    }
}
