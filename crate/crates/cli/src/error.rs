use std::path::PathBuf;

use ahp_core::io::ProjectError;
use ahp_core::AhpError;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ProjectError },
    #[error("RI table {path}: {message}")]
    RiTable { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Project { path: PathBuf, source: ProjectError },
    #[error(transparent)]
    Kernel(#[from] AhpError),
    #[error("consistency check failed for {}", .0.join(", "))]
    Inconsistent(Vec<String>),
    #[error("server: {0}")]
    Serve(#[from] ahp_service::ServeError),
}

impl CliError {
    /// 0 ok, 1 consistency failure, 2 usage, 3 file or parse, 4 validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Read { .. }
            | CliError::Write { .. }
            | CliError::Parse { .. }
            | CliError::RiTable { .. }
            | CliError::Serve(_) => 3,
            CliError::Invalid(_) | CliError::Project { .. } | CliError::Kernel(_) => 4,
        }
    }

    pub fn code(&self) -> &'static str {
        match self.exit_code() {
            1 => "consistency_failure",
            2 => "usage_error",
            3 => "file_error",
            _ => "validation_error",
        }
    }

    fn line(&self) -> Option<usize> {
        match self {
            CliError::Parse { source, .. } | CliError::Project { source, .. } => source.line(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut value = json!({
            "code": self.code(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let Some(line) = self.line() {
            value["line"] = json!(line);
        }
        if let CliError::Inconsistent(nodes) = self {
            value["nodes"] = json!(nodes);
        }
        value.to_string()
    }
}
