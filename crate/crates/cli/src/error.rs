use std::path::PathBuf;

/// Failure of a command, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {field}: {message}")]
    Validation {
        field: &'static str,
        message: String,
    },
    #[error("numerical failure: {0}")]
    Numerical(ddhilbert::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn validation(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Validation {
            field,
            message: message.into(),
        }
    }

    /// 2 for validation, 3 for numerical, 4 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<ddhilbert::Error> for CliError {
    fn from(e: ddhilbert::Error) -> Self {
        use ddhilbert::Error as E;
        let field = match &e {
            E::InvalidMesh(_) | E::MeshIncompatible { .. } | E::Size(_) => "N",
            E::UnstableParameter { .. } => "lambda",
            E::InvalidParameter { name, .. } => name,
            E::Domain { .. } => "interior",
            E::Dimension { .. } => "size",
            _ => return CliError::Numerical(e),
        };
        CliError::Validation {
            field,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
