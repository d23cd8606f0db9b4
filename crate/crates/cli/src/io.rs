use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub const DATA_ENV: &str = "DEFSPACE_DATA";

/// Default data directory: `$DEFSPACE_DATA`, else `./data`.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

/// Resolves a path as given, then relative to the data directory.
pub fn resolve(path: &str) -> anyhow::Result<PathBuf> {
    let direct = Path::new(path);
    if direct.exists() {
        return Ok(direct.to_path_buf());
    }
    let in_data = data_dir().join(path);
    if direct.is_relative() && in_data.exists() {
        return Ok(in_data);
    }
    bail!(
        "no such file: {path} (also looked in {})",
        data_dir().display()
    )
}

pub fn read_text(path: &str) -> anyhow::Result<String> {
    let p = resolve(path)?;
    std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))
}

/// Parses a JSON argument given either inline or as a file path.
pub fn json_arg<T: DeserializeOwned>(arg: &str, what: &str) -> anyhow::Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        read_text(arg)?
    };
    serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("{what}: line {}, column {}: {e}", e.line(), e.column()))
}

pub struct Printer {
    pub json: bool,
}

impl Printer {
    /// Prints `value` as pretty JSON in machine mode, else the human rendering.
    pub fn emit<T: Serialize>(
        &self,
        value: &T,
        human: impl FnOnce() -> String,
    ) -> anyhow::Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            println!("{}", human());
        }
        Ok(())
    }
}

/// `(6)`, `(2, 2)`, or `()` for the trivial group.
pub fn factors(f: &[i64]) -> String {
    let parts: Vec<String> = f.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}
