//! `key = value` configuration, overridden by command-line flags.
//!
//! ```text
//! # atlas.conf
//! catalog = /data/links.jsonl
//! budget = 1000000000
//! threads = 8
//! ```

use std::path::{Path, PathBuf};

use crate::error::{AtlasError, Result};

/// Environment variable naming the configuration file.
pub const CONFIG_ENV: &str = "ATLAS_CONFIG";

/// Default cost budget in elementary steps.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub catalog: Option<PathBuf>,
    pub budget: u128,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            catalog: None,
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                AtlasError::InvalidInput(format!(
                    "config line {}: expected key = value",
                    lineno + 1
                ))
            })?;
            let value = value.trim();
            let bad = |what: &str| {
                AtlasError::InvalidInput(format!(
                    "config line {}: bad {what} {value:?}",
                    lineno + 1
                ))
            };
            match key.trim() {
                "catalog" => cfg.catalog = Some(PathBuf::from(value)),
                "budget" => cfg.budget = value.parse().map_err(|_| bad("budget"))?,
                "threads" => cfg.threads = Some(value.parse().map_err(|_| bad("thread count"))?),
                other => {
                    return Err(AtlasError::InvalidInput(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AtlasError::io(path, e))?;
        Self::parse(&text)
    }

    /// Reads the file named by `explicit`, else by `ATLAS_CONFIG`, else
    /// returns the defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        if let Some(p) = explicit {
            return Self::load(p);
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}
