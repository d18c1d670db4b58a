//! Reading instance files.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    /// The message carries serde's line and column.
    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
}

/// Parses a UTF-8 JSON file against the schema of `T`.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Read { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Parse { path: shown, source })
}
