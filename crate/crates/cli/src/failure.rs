use std::fmt;

use hypocomp::Error;

/// Why a command stopped, and the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad flags, unparseable symbols, maps that are not self-maps: exit 2.
    Input(String),
    /// The theory has nothing to say for these symbols: exit 3.
    Unavailable(String),
    /// An iteration stalled or a tail bound was too loose: exit 4.
    Numeric(String),
    /// A worked example did not reproduce: exit 1.
    Mismatch(String),
}

impl Failure {
    pub fn input(e: Error) -> Self {
        Failure::Input(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unavailable(_) => 3,
            Failure::Numeric(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Unavailable(_) | Error::HypothesisMismatch(_) | Error::NoDenjoyWolff(_) | Error::IdentityMap => {
                Failure::Unavailable(msg)
            }
            Error::ConvergenceFailure { .. } | Error::PrecisionLoss { .. } | Error::Indeterminate { .. } => {
                Failure::Numeric(msg)
            }
            _ => Failure::Input(msg),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Unavailable(m) => write!(f, "unavailable: {m}"),
            Failure::Numeric(m) => write!(f, "numeric failure: {m}"),
            Failure::Mismatch(m) => write!(f, "{m}"),
        }
    }
}
