use std::fmt;
use std::path::Path;

/// A failed run: what to print and which exit code to use.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

/// Exit code for invariant violations: bad config values, inconsistent
/// inputs, empty corpora.
pub const INVARIANT: u8 = 1;
/// Exit code for unreadable or malformed inputs and failed writes.
pub const IO_FORMAT: u8 = 2;

impl Failure {
    pub fn invariant(message: impl Into<String>) -> Self {
        Self {
            code: INVARIANT,
            message: message.into(),
        }
    }

    pub fn format(message: impl Into<String>) -> Self {
        Self {
            code: IO_FORMAT,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::format(format!("{}: {err}", path.display()))
    }

    pub fn at(path: &Path, err: cantomine::Error) -> Self {
        let mut f = Failure::from(err);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<cantomine::Error> for Failure {
    fn from(err: cantomine::Error) -> Self {
        use cantomine::Error as E;
        let code = match err {
            E::Io(_) | E::Xml { .. } | E::Format { .. } | E::Json(_) => IO_FORMAT,
            _ => INVARIANT,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;
