use std::fmt;

use omc_core::Error;

#[derive(Debug)]
pub enum CliError {
    /// Missing or malformed arguments after config merging.
    Usage(String),
    /// Unreadable config file or conflicting options.
    Config(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "UsageError: {m}"),
            CliError::Config(m) => write!(f, "ConfigError: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub const EXIT_USAGE: u8 = 2;

impl CliError {
    /// Process exit status; see the README table.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(_) => 3,
            CliError::Core(e) => match e {
                Error::Io { .. } => 4,
                Error::Parse { .. } | Error::ParseField { .. } => 5,
                Error::NonPositiveValue(_) => 6,
                Error::NotFinite(_) | Error::InvalidMantissa(_) => 7,
                Error::InvalidSpan { .. } => 8,
                Error::TooManyBands { .. } => 9,
                Error::InvalidHues(_) | Error::InvalidColormap(_) | Error::InvalidDomain { .. } => {
                    10
                }
                Error::NoValidRows(_) => 11,
                Error::EmptyPlot => 12,
                Error::DomainMismatch(_) => 13,
                Error::Schema(_) => 14,
                Error::UnsupportedFormat(_) => 15,
                Error::InvalidRange { .. } => 16,
                Error::InvalidRenderSpec(_) | Error::InvalidImage(_) | Error::Image(_) => 17,
            },
        }
    }
}
