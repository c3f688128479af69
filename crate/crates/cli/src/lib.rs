//! Library side of the `biosc` binary: configuration, presets, table output,
//! data commands and verification suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod presets;
pub mod verify;

/// Failure classes, each mapped to a fixed process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration, parameters or environment (exit 2).
    #[error("{0}")]
    Config(String),
    /// A computation failed or a check came out over tolerance (exit 1).
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}
