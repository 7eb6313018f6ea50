// SPDX-License-Identifier: Apache-2.0

use std::io;

/// Failures of the harness, backends and file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad input from the user or a file.
    #[error("{0}")]
    Validation(String),
    /// Domain error from the solver core.
    #[error(transparent)]
    Core(#[from] tspbench_core::Error),
    /// A worker thread or process failed.
    #[error("{0}")]
    Execution(String),
    /// A worker or coordinator broke the wire protocol.
    #[error("protocol violation: {0}")]
    Protocol(String),
    /// A backend disagreed with the serial reference.
    #[error("correctness failure: {0}")]
    Correctness(String),
    /// Filesystem or stream failure.
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 1 for bad input, 2 for execution or correctness failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Core(_) => 1,
            Error::Execution(_) | Error::Protocol(_) | Error::Correctness(_) | Error::Io { .. } => {
                2
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
