//! `superalg` command-line frontend: argument parsing, dispatch to the core
//! operations and text or JSON output.

pub mod commands;
pub mod parse;

pub use commands::{run, Outcome};
pub use parse::{parse_element, parse_pairs, parse_partition, parse_weight, ParsedElement};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] superalg_core::Error),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator {generator} does not belong to {signature}")]
    GeneratorMismatch {
        generator: String,
        signature: String,
    },
    #[error("infinite rank: pass --trunc N")]
    NeedsTruncation,
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Stable name used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Syntax { .. } => "syntax",
            CliError::GeneratorMismatch { .. } => "generator_mismatch",
            CliError::NeedsTruncation => "needs_truncation",
            CliError::Io(_) => "io",
        }
    }

    /// Every error that reaches a command is a domain error; usage errors are
    /// caught by the argument parser.
    pub fn exit_code(&self) -> i32 {
        1
    }
}
