use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("enumeration limit exceeded while {what}: size {size} > cap {cap}")]
    EnumerationLimit { what: String, size: u128, cap: u128 },

    #[error("conditioning on a zero-probability event: {0}")]
    NullEvidence(String),

    #[error("graph error: {0}")]
    Graph(String),

    #[error("experiment is Blackwell-dominated (garbling residual {residual:.3e}); no separating loss exists")]
    DominanceDetected { residual: f64 },

    #[error("no separating loss with margin >= {min_margin:e} found (best margin {best:.3e})")]
    NoSeparation { min_margin: f64, best: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
