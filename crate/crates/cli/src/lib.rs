//! Command implementations behind the `milnorkit` binary: input loading,
//! JSON/text rendering, the corpus runner and its content-addressed cache.

pub mod cache;
pub mod corpus;

use std::fs;
use std::path::Path;

use milnorkit_core::basing::{self, BasingReport};
use milnorkit_core::diagram::{parse_braid, parse_pd};
use milnorkit_core::{Error, LinkDiagram, MilnorTable};
use thiserror::Error as ThisError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::Index(_) => 2,
                Error::InvalidDiagram(_) => 3,
                Error::DegreeOverflow { .. } | Error::LengthOverflow { .. } => 4,
                Error::ComponentMismatch(..) => 5,
                Error::HypothesisUnmet { .. } => 6,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Where a diagram comes from.
#[derive(Debug, Clone)]
pub enum Input {
    Pd(std::path::PathBuf),
    Braid { word: String, strands: usize },
}

pub fn read_diagram_file(path: &Path) -> CliResult<LinkDiagram> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_pd(&text)?)
}

pub fn load(input: &Input) -> CliResult<LinkDiagram> {
    match input {
        Input::Pd(path) => read_diagram_file(path),
        Input::Braid { word, strands } => Ok(parse_braid(word, *strands)?),
    }
}

pub fn compute(input: &Input, degree: usize, format: Format) -> CliResult<String> {
    let d = load(input)?;
    let t = MilnorTable::compute(&d, degree)?;
    Ok(match format {
        Format::Json => t.to_json() + "\n",
        Format::Text => t.to_text(),
    })
}

pub fn basing_report(input: &Input, cap: usize, relative: Option<&Input>) -> CliResult<BasingReport> {
    let d = load(input)?;
    Ok(match relative {
        Some(other) => basing::relative_max_basing(&d, &load(other)?, cap)?,
        None => basing::max_basing_rel_unlink(&d, cap)?,
    })
}

pub fn compare(a: &Input, b: &Input, n: usize) -> CliResult<String> {
    let equal = basing::mu_n_equal(&load(a)?, &load(b)?, n)?;
    Ok(serde_json::json!({ "equal": equal, "n": n }).to_string() + "\n")
}
