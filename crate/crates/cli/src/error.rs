use std::fmt;
use std::process::ExitCode;

/// Exit statuses shared by every subcommand.
pub const EXIT_OK: u8 = 0;
pub const EXIT_STATISTICAL_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or argument values.
    Usage(String),
    /// Unreadable or unwritable files, malformed input data.
    Input(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Argument-value problems map to usage errors; problems with the data
/// itself map to input errors.
impl From<gaussdist::Error> for CliError {
    fn from(e: gaussdist::Error) -> Self {
        use gaussdist::Error as E;
        match e {
            E::Domain { .. } | E::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
