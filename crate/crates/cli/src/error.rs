use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Model(#[from] emdetect_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("no configuration given; pass --config PATH or --preset NAME")]
    MissingConfig,
    #[error("invalid --zeta `{0}`, expected RE or RE,IM")]
    InvalidZeta(String),
    #[error("quantum check supports at most {max} emitters, got {got}")]
    TooManyEmitters { got: usize, max: usize },
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Stable machine-readable tag for the error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Schema { .. } => "schema",
            CliError::Model(_) => "model",
            CliError::Io { .. } => "io",
            CliError::UnknownPreset(_) => "unknown_preset",
            CliError::MissingConfig => "missing_config",
            CliError::InvalidZeta(_) => "invalid_argument",
            CliError::TooManyEmitters { .. } => "oracle_limit",
            CliError::Serialize(_) => "serialize",
        }
    }

    /// Field path, for schema errors.
    pub fn path(&self) -> Option<&str> {
        match self {
            CliError::Schema { path, .. } => Some(path),
            _ => None,
        }
    }
}
