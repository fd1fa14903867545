use std::fmt;

use extalg_core::AlgebraError;

/// A malformed instance file, located by line/column when the JSON itself is
/// at fault and by field path otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub origin: String,
    pub line: usize,
    pub column: usize,
    /// Dotted field path, e.g. `ideals[2].generators[0]`; empty at top level.
    pub path: String,
    pub message: String,
}

impl ParseError {
    pub fn at(origin: &str, path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self { origin: origin.into(), line: 0, column: 0, path: path.into(), message: message.to_string() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if self.line > 0 {
            write!(f, ":{}:{}", self.line, self.column)?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, ": at `{}`", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
