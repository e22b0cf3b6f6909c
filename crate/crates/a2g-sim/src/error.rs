use thiserror::Error;

/// Error type shared by every layer of the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested constraint cannot be met by any geometry.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// A generated device population exceeded the configured hard cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Malformed or inconsistent configuration.
    #[error("config error: {0}")]
    Config(String),
    /// A scenario could not be evaluated end to end.
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 invalid input, 2 infeasible scenario, 3 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Capacity(_) | Error::Config(_) => 1,
            Error::Infeasible(_) | Error::Scenario(_) => 2,
            Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
