use std::io;
use std::path::{Path, PathBuf};

use phs::compile::CompileError;
use phs::corpus::CorpusError;
use phs::procedures::ProcError;
use phs::rewrite::RewriteError;
use phs::semantics::EvalError;
use thiserror::Error;

pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_FILE: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },
    #[error("{origin}: {msg}")]
    Input { origin: String, msg: String },
    #[error("undecided: resource ({0})")]
    Resource(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::File { .. } => EXIT_FILE,
            CliError::Input { .. } => EXIT_DATA,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::File { .. } => "file",
            CliError::Input { .. } => "input",
            CliError::Resource(_) => "resource",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn file(path: &Path, source: io::Error) -> Self {
        CliError::File { path: path.to_path_buf(), source }
    }

    pub fn input(origin: impl Into<String>, msg: impl ToString) -> Self {
        CliError::Input { origin: origin.into(), msg: msg.to_string() }
    }
}

impl From<ProcError> for CliError {
    fn from(e: ProcError) -> Self {
        match e {
            ProcError::Resource(m) => CliError::Resource(m),
            ProcError::Compile(c) => c.into(),
            ProcError::Automata(a) => CliError::Internal(a.to_string()),
            ProcError::WitnessRejected(_) => CliError::Internal(e.to_string()),
            e @ (ProcError::Rewrite(_) | ProcError::Eval(_) | ProcError::AtomMismatch(_)) => CliError::input("formula", e),
        }
    }
}

impl From<CompileError> for CliError {
    fn from(e: CompileError) -> Self {
        match ProcError::from(e.clone()) {
            ProcError::Resource(m) => CliError::Resource(m),
            _ => CliError::input("formula", e),
        }
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        CliError::input("formula", e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::input("evaluation", e)
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Budget { .. } | CorpusError::TooLarge(_) => CliError::Resource(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}
