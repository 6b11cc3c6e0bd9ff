use thiserror::Error;

/// Exit codes: 0 decided positive, 1 decided negative, 2 usage/parse/validation error,
/// 3 numerically undecidable.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse { field: String, line: usize, column: usize, message: String },
    #[error("invalid `{path}`: {message}")]
    Validation { path: String, message: String },
    #[error("numerically undecidable: {0}")]
    Ambiguous(String),
    #[error("{0}")]
    Core(qlogic::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Ambiguous(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Io { .. } => "io",
            Self::Parse { .. } => "parse",
            Self::Validation { .. } => "validation",
            Self::Ambiguous(_) => "ambiguous",
            Self::Core(_) => "error",
        }
    }

    pub fn validation(path: impl Into<String>, message: impl ToString) -> Self {
        Self::Validation { path: path.into(), message: message.to_string() }
    }

    /// Attaches `path` to a core error, keeping spectral ambiguity distinct.
    pub fn at(path: impl Into<String>) -> impl FnOnce(qlogic::Error) -> Self {
        let path = path.into();
        move |e| match e {
            qlogic::Error::AmbiguousSpectrum { .. } => Self::Ambiguous(format!("{path}: {e}")),
            e => Self::Validation { path, message: e.to_string() },
        }
    }
}

impl From<qlogic::Error> for CliError {
    fn from(e: qlogic::Error) -> Self {
        match e {
            qlogic::Error::AmbiguousSpectrum { .. } => Self::Ambiguous(e.to_string()),
            e => Self::Core(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
