use std::fmt;

use pricetunnel::format::{fmt_sig, SIG_DIGITS};

pub mod scan;
pub mod tables;
pub mod tc;
pub mod validate;
pub mod wavefunction;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values; exit code 2.
    Usage(String),
    /// I/O, parse or numerical failure; exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

/// What a command produced. `success = false` maps to exit code 1 after the
/// output has been printed.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub success: bool,
}

impl Output {
    pub fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), success: true }
    }
}

pub fn num(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

impl From<crate::cli::EvalPoint> for pricetunnel::ThinWallPoint {
    fn from(p: crate::cli::EvalPoint) -> Self {
        match p {
            crate::cli::EvalPoint::Entry => Self::Entry,
            crate::cli::EvalPoint::Midpoint => Self::Midpoint,
        }
    }
}

impl From<crate::cli::PrefactorVariant> for pricetunnel::PrefactorForm {
    fn from(v: crate::cli::PrefactorVariant) -> Self {
        match v {
            crate::cli::PrefactorVariant::Numerator => Self::Numerator,
            crate::cli::PrefactorVariant::Denominator => Self::Denominator,
        }
    }
}
