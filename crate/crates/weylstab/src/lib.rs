//! Command-line front end for `weylstab-core`: an expression parser,
//! JSON problem files and reports, a content-addressed result cache and the
//! command dispatcher behind the `weylstab` binary.

pub mod cache;
pub mod parse;
pub mod problem;
pub mod report;
pub mod run;

use thiserror::Error;
use weylstab_core::Error as CoreError;

pub use parse::{parse_expression, parse_symbol_poly, ParseError};
pub use problem::ProblemFile;
pub use run::{execute, Command, Invocation, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid problem file: {0}")]
    Problem(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_UNSUPPORTED_RADICAL: i32 = 5;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(ParseError::Algebra {
                source: CoreError::ResourceExceeded { .. },
                ..
            }) => EXIT_RESOURCE,
            CliError::Parse(_) | CliError::Problem(_) => EXIT_PARSE,
            CliError::Core(e) => match e {
                CoreError::DegenerateLattice { .. } => EXIT_DEGENERATE,
                CoreError::ResourceExceeded { .. } => EXIT_RESOURCE,
                CoreError::UnsupportedRadical => EXIT_UNSUPPORTED_RADICAL,
                _ => EXIT_OTHER,
            },
            CliError::Usage(_) => EXIT_OTHER,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Problem(_) => "problem",
            CliError::Core(e) => match e {
                CoreError::DegenerateLattice { .. } => "degenerate_lattice",
                CoreError::ResourceExceeded { .. } => "resource_exceeded",
                CoreError::UnsupportedRadical => "unsupported_radical",
                CoreError::NotPrime(_) => "not_prime",
                _ => "computation",
            },
            CliError::Usage(_) => "usage",
        }
    }
}
