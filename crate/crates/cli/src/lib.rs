//! Command implementations behind the `framescale` binary.

pub mod commands;
pub mod io;
pub mod report;

use framescale::corpus::CorpusError;
use framescale::linalg::LinalgError;
use framescale::scaler::ScalerError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scaler(#[from] ScalerError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

fn linalg_code(e: &LinalgError) -> i32 {
    match e {
        LinalgError::NotConverged { .. } | LinalgError::DegenerateDraw(_) => 3,
        _ => 2,
    }
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Linalg(e) => linalg_code(e),
            CliError::Scaler(ScalerError::Linalg(e)) => linalg_code(e),
            CliError::Scaler(ScalerError::IterationLimit(_) | ScalerError::Unbounded) => 3,
            CliError::Scaler(_) => 2,
            CliError::Corpus(CorpusError::Linalg(e)) => linalg_code(e),
            CliError::Corpus(_) => 2,
        }
    }
}
