//! CSV and JSON writers. Numbers are written with 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{LabError, LabResult};

pub const DEFAULT_OUT_DIR: &str = "fkpp-out";

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn ensure_dir(dir: &Path) -> LabResult<()> {
    fs::create_dir_all(dir).map_err(|source| LabError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Builds a CSV document in memory.
pub struct CsvTable {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> LabResult<Self> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Self { writer })
    }

    pub fn row(&mut self, values: &[f64]) -> LabResult<()> {
        self.writer.write_record(values.iter().map(|&v| num(v)))?;
        Ok(())
    }

    pub fn into_bytes(self) -> LabResult<Vec<u8>> {
        self.writer
            .into_inner()
            .map_err(|e| LabError::Csv(e.into_error().into()))
    }
}

pub fn json_string(value: &impl Serialize) -> LabResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Files produced by a command, written together once all work has finished.
#[derive(Default)]
pub struct Artifacts {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Artifacts {
    pub fn add(&mut self, path: PathBuf, contents: impl Into<Vec<u8>>) {
        self.files.push((path, contents.into()));
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.files.iter().map(|(p, _)| p.as_path())
    }

    pub fn write(self) -> LabResult<Vec<PathBuf>> {
        let mut written = Vec::with_capacity(self.files.len());
        for (path, contents) in self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                ensure_dir(dir)?;
            }
            fs::write(&path, contents).map_err(|source| LabError::Io {
                path: path.clone(),
                source,
            })?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Thread pool capped by `FKPP_WORKERS` when it is set to a positive integer.
pub fn worker_pool() -> LabResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(crate::WORKERS_ENV) {
        let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            LabError::Validation(format!(
                "{}={raw:?} is not a positive integer",
                crate::WORKERS_ENV
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| LabError::Numerical(e.to_string()))
}
