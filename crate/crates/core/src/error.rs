use std::io;

use thiserror::Error;

/// Errors produced by graph, complex, homology and survey operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A configured work cap was exceeded. `partial` carries the best
    /// result verified before the cap was hit, when one exists.
    #[error("{what} exceeded the cap of {limit}{}", partial_suffix(.partial))]
    Resource {
        what: String,
        limit: u64,
        partial: Option<i64>,
    },

    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn partial_suffix(partial: &Option<i64>) -> String {
    match partial {
        Some(p) => format!(" (best verified value {p})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
            partial: None,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
