//! Library surface of the CLI: file format, report assembly, and command
//! implementations. The binary in `main.rs` is a thin argument-parsing
//! wrapper around this.

pub mod commands;
pub mod file;
pub mod report;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unrealizable specs, IO problems: exit 2.
    Usage(String),
    /// Unparseable input file: exit 2.
    Parse(String),
    /// Generators do not span a subalgebra: exit 3.
    Closure(String),
    /// Invariant violation inside the library: exit 2.
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Internal(_) => 2,
            CliError::Closure(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::Closure(m)
            | CliError::Internal(m) => m,
        }
    }
}
