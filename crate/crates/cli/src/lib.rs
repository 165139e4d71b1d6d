//! `pois` command-line tool: single runs, grid sweeps, EDPOIS analysis,
//! SVG figures and the infeasibility-probability table.

pub mod args;
pub mod commands;
pub mod svg;

use std::fmt;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage = 1,
    Data = 2,
    Numeric = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Usage,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Data,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Numeric,
            message: message.into(),
        }
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<pois_core::Error> for CliError {
    fn from(e: pois_core::Error) -> Self {
        use pois_core::Error as E;
        let kind = match &e {
            E::Config(_) | E::Argument(_) => ExitKind::Usage,
            E::Numeric(_) => ExitKind::Numeric,
            E::Dimension { .. } | E::Parse { .. } | E::Io(_) => ExitKind::Data,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::data(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
