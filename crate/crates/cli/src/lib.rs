//! Command-line front end for `seedwalk`: benchmark sweeps, detection on
//! real networks, generation and scoring.

pub mod config;
pub mod detect;
pub mod experiment;
pub mod score;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input or settings; exit status 1.
    #[error("configuration error: {0}")]
    Config(String),
    /// Failure while running; exit status 2.
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    /// Wraps a library error raised during the named pipeline stage.
    pub fn stage(stage: &str, err: seedwalk::Error) -> Self {
        match Self::from(err) {
            CliError::Config(m) => CliError::Config(format!("{stage}: {m}")),
            CliError::Runtime(m) => CliError::Runtime(format!("{stage}: {m}")),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

fn is_input_error(err: &seedwalk::Error) -> bool {
    use seedwalk::Error as E;
    match err {
        E::Parse { .. }
        | E::SelfLoop { .. }
        | E::IndexOutOfRange { .. }
        | E::Argument(_)
        | E::Config(_)
        | E::Format(_)
        | E::Io(_) => true,
        E::Community { source, .. } | E::Iteration { source, .. } => is_input_error(source),
        _ => false,
    }
}

impl From<seedwalk::Error> for CliError {
    fn from(err: seedwalk::Error) -> Self {
        if is_input_error(&err) {
            CliError::Config(err.to_string())
        } else {
            CliError::Runtime(err.to_string())
        }
    }
}
