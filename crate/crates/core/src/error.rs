use thiserror::Error;

/// Default bound on the number of tuples any single enumeration may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Upper bound on tuple enumeration (powers, joins, tuple contexts).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(pub usize);

impl Default for Cap {
    fn default() -> Self {
        Cap(DEFAULT_CAP)
    }
}

impl Cap {
    pub fn check(self, needed: usize, what: &str) -> Result<(), Error> {
        if needed > self.0 {
            Err(Error::Capacity {
                what: what.to_string(),
                needed,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("{what} needs {needed} tuples, over the enumeration cap of {cap}")]
    Capacity {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("{0}")]
    Input(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Multiplies sizes, saturating at `usize::MAX` so cap checks stay meaningful.
pub(crate) fn product_size(sizes: impl IntoIterator<Item = usize>) -> usize {
    sizes
        .into_iter()
        .fold(1usize, |acc, s| acc.saturating_mul(s))
}
