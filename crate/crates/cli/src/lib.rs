//! Command implementations behind the `prunetm` binary.
//!
//! Errors carry one of three exit codes so scripts can tell them apart:
//! 2 for configuration problems, 3 for data problems, 4 for file-format
//! problems (bad model containers, vocabulary fingerprint mismatches).

pub mod commands;
pub mod config;

use std::fmt;

use prunetm_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Data(String),
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Format(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(error: CoreError) -> CliError {
        match &error {
            CoreError::InvalidConfig(_) | CoreError::InvalidFraction(_) => {
                CliError::Config(error.to_string())
            }
            CoreError::ModelFormat(_)
            | CoreError::FingerprintMismatch { .. }
            | CoreError::DimensionMismatch { .. } => CliError::Format(error.to_string()),
            _ => CliError::Data(error.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(error: std::io::Error) -> CliError {
        CliError::Data(error.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
