use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use crate::CliError;

/// Everything needed to rerun a command. `started_at` is the only field
/// that varies between identical runs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub parameters: serde_json::Value,
    pub tool_version: &'static str,
    pub started_at: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &'static str, parameters: impl Serialize) -> Result<Self, CliError> {
        Ok(Self {
            subcommand,
            parameters: serde_json::to_value(parameters)?,
            tool_version: env!("CARGO_PKG_VERSION"),
            started_at: OffsetDateTime::now_utc()
                .format(&Rfc3339)
                .unwrap_or_else(|_| String::from("unknown")),
            outputs: Vec::new(),
        })
    }

    pub fn with_output(mut self, path: Option<&PathBuf>) -> Self {
        if let Some(p) = path {
            self.outputs.push(p.display().to_string());
        }
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Document<'a, P> {
    pub manifest: &'a RunManifest,
    pub payload: &'a P,
}

pub fn to_json<P: Serialize>(manifest: &RunManifest, payload: &P) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(&Document { manifest, payload })?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
}
