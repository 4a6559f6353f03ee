use std::io;
use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] bicov::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    /// The command ran but its verdict is a failure.
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Model(_) | Self::Rejected(_) => 1,
            Self::Io { .. } | Self::Parse { .. } => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Model(bicov::Error::Bound { .. }) => "bound",
            Self::Model(_) => "domain",
            Self::Io { .. } => "io",
            Self::Parse { .. } => "parse",
            Self::Rejected(_) => "rejected",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            error: &'a str,
            exit_code: i32,
            message: String,
        }
        let rec = Record { error: self.kind(), exit_code: self.exit_code(), message: self.to_string() };
        serde_json::to_string(&rec).expect("error record serializes")
    }
}
