//! Library surface of the `qgenus` command-line tool: instance input,
//! report schemas, and the error-to-exit-code classes. The binary in
//! `main.rs` is a thin clap wrapper over this.

pub mod instance;
pub mod report;

use std::fmt;

use qgenus_core::Error as CoreError;

/// Command-line error classes; each maps to one exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed files, inline strings, bounds, or parameters (exit 2).
    Input(String),
    /// Structurally valid input violating an operation's precondition (exit 3).
    Precondition(String),
    /// Numeric quadrature failed its self-consistency check (exit 4).
    Convergence(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition error: {m}"),
            CliError::Convergence(m) => write!(f, "convergence failure: {m}"),
        }
    }
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Convergence(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegenerateInstance(_) | CoreError::InvalidParameter(_) => {
                CliError::Input(e.to_string())
            }
            CoreError::ConvergenceFailure(m) => CliError::Convergence(m),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
