//! File formats and subcommands behind the `qtop` binary.
//!
//! Links come in as braid text (`"2: 1 1 1"`), a built-in knot name, or the
//! JSON form `{"strands", "word", "colors", "framings", "cut"}`. Results go
//! out as JSON with complex numbers written `[re, im]` to 17 significant
//! digits.

pub mod cli;
pub mod color;
pub mod commands;
pub mod input;
pub mod output;

use qtop_core::Error;

pub use cli::Cli;
pub use commands::{run, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// Environment variable replacing the default comparison tolerance.
pub const TOL_ENV: &str = "QTOP_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_parse() => EXIT_PARSE,
            CliError::Core(e) if e.is_numeric() => EXIT_NUMERIC,
            CliError::Core(_) | CliError::Contract(_) | CliError::Io(_) => EXIT_CONTRACT,
            CliError::Parse(_) | CliError::Json(_) => EXIT_PARSE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

/// The tolerance from [`TOL_ENV`], or `default` when unset.
pub fn tolerance(default: f64) -> Result<f64, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(CliError::Parse(format!("{TOL_ENV}={s:?} is not a positive number"))),
        },
        Err(_) => Ok(default),
    }
}
