//! Command-line front end and file formats for `spinpair-core`.
//!
//! * [`format`]: 12-significant-digit number rendering shared by all CSV output.
//! * [`record`]: single-point, ground-state, threshold and chain records (CSV or JSON).
//! * [`sweep`]: two-axis parameter grids and their CSV serialization.
//! * [`cli`]: argument parsing, dispatch and exit codes.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub mod cli;
pub mod format;
pub mod record;
pub mod sweep;

pub use spinpair_core as core;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Numeric(#[from] spinpair_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn stdout(source: io::Error) -> Self {
        CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }
    }

    /// 2 usage, 3 numeric domain, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}
