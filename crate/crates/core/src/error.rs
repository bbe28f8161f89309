use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{problem} is {actual}; use {hint} instead")]
    WrongArity {
        problem: String,
        actual: &'static str,
        hint: &'static str,
    },

    #[error("point outside the domain of {problem}: {detail}")]
    Domain { problem: String, detail: String },

    #[error("no feasible point found in region centered at {center:?} with radius {radius}")]
    InfeasibleRegion { center: Vec<f64>, radius: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for the errors the CLI reports with the configuration exit code.
    pub fn is_config(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}
