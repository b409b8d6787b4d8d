//! File formats and helpers backing the `dualbar` binary: images (dense
//! text and plain PGM), diagrams (JSON), abstract complexes, and vector
//! fields. Everything here is plain text so fixtures stay diffable.

pub mod complex_io;
pub mod diagram_io;
pub mod field_io;
pub mod image_io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input content; carries the 1-based line of the offence.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Well-formed input that violates a semantic precondition.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl std::fmt::Display) -> Self {
        CliError::Invalid(message.to_string())
    }

    /// 1 for semantic failures, 2 for I/O and parse failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Invalid(_) => 1,
        }
    }
}

pub fn read_to_string(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write_output(path: Option<&str>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
