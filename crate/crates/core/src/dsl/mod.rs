//! Text formats for systems and controls, with located diagnostics.

mod controls;
mod expr;
mod lexer;
mod system;

use std::fmt;

pub use controls::{parse_controls, parse_upoly, ControlsDisplay};
pub use system::{parse_system, parse_system_with, FieldLine, SystemDocument, MAX_DIM};

/// A diagnostic at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
    pub hint: Option<String>,
}

impl DslError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> DslError {
        DslError { line, col, message: message.into(), expected: Vec::new(), hint: None }
    }

    pub fn expecting(mut self, expected: &[&str]) -> DslError {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> DslError {
        self.hint = Some(hint.into());
        self
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        if let Some(h) = &self.hint {
            write!(f, "; {h}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DslError {}
