//! Append-only JSON Lines catalog keyed by canonical link identifier.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use linkatlas_core::links::SignClass;
use linkatlas_core::spheres::SphereKind;
use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::record::InvariantRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorruptLine {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct Loaded {
    pub records: Vec<InvariantRecord>,
    pub corrupt: Vec<CorruptLine>,
}

/// Reads every well-formed record; malformed lines are collected, not fatal.
/// A missing file reads as empty.
pub fn load(path: &Path) -> Result<Loaded> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Loaded::default()),
        Err(e) => return Err(AtlasError::io(path, e)),
    };
    let mut out = Loaded::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| AtlasError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<InvariantRecord>(&line) {
            Ok(r) => out.records.push(r),
            Err(e) => out.corrupt.push(CorruptLine {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    Ok(out)
}

#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct AppendReport {
    pub written: usize,
    pub skipped: usize,
    pub corrupt: Vec<CorruptLine>,
}

/// The single writer of a catalog file.
pub struct Catalog {
    path: PathBuf,
    keys: HashSet<String>,
    corrupt: Vec<CorruptLine>,
}

impl Catalog {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let loaded = load(&path)?;
        Ok(Self {
            keys: loaded.records.into_iter().map(|r| r.key).collect(),
            corrupt: loaded.corrupt,
            path,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.keys.contains(key)
    }

    /// Writes records whose key is new; existing keys are counted as skipped.
    pub fn append<'a>(
        &mut self,
        records: impl IntoIterator<Item = &'a InvariantRecord>,
    ) -> Result<AppendReport> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| AtlasError::io(&self.path, e))?;
        let mut w = BufWriter::new(file);
        let mut report = AppendReport {
            corrupt: self.corrupt.clone(),
            ..AppendReport::default()
        };
        for r in records {
            if !self.keys.insert(r.key.clone()) {
                report.skipped += 1;
                continue;
            }
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")
                .map_err(|e| AtlasError::io(&self.path, e))?;
            report.written += 1;
        }
        w.flush().map_err(|e| AtlasError::io(&self.path, e))?;
        Ok(report)
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Filter {
    pub sign: Option<SignClass>,
    pub betti: Option<u128>,
    pub sphere: Option<SphereKind>,
    pub nvars: Option<usize>,
}

impl Filter {
    pub fn accepts(&self, r: &InvariantRecord) -> bool {
        self.sign.is_none_or(|s| r.sign == s)
            && self.betti.is_none_or(|b| r.middle_betti == b)
            && self.sphere.is_none_or(|k| r.sphere.verdict == k)
            && self.nvars.is_none_or(|n| r.nvars() == Some(n))
    }
}

pub fn query(path: &Path, filter: &Filter) -> Result<Loaded> {
    let mut loaded = load(path)?;
    loaded.records.retain(|r| filter.accepts(r));
    Ok(loaded)
}
