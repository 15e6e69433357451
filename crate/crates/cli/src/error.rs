use std::fmt;

use thiserror::Error;

/// One configuration problem, located by its `section.key` path or by the
/// line of a syntax error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl Issue {
    pub fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), line: None, message: message.into() }
    }

    pub fn syntax(line: usize, message: impl Into<String>) -> Self {
        Self { path: String::new(), line: Some(line), message: message.into() }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "syntax error at line {l}: {}", self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

fn list(issues: &[Issue]) -> String {
    issues.iter().map(|i| format!("\n  {i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("invalid configuration:{}", list(.0))]
    Validation(Vec<Issue>),
    #[error("numerical convergence failure: {0}")]
    Convergence(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn invalid(path: &str, message: impl Into<String>) -> Self {
        Self::Validation(vec![Issue::at(path, message)])
    }

    /// Process exit code: 2 for validation failures, 3 for convergence
    /// failures and 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 2,
            Self::Convergence(_) => 3,
            Self::Io(_) => 1,
        }
    }
}
