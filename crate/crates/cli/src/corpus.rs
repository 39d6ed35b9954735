//! Batch runner over a directory of PD JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use milnorkit_core::MilnorTable;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{cache_key, write_atomic, Cache};
use crate::{read_diagram_file, CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub error: String,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cached: usize,
    pub computed: usize,
    pub failures: Vec<Failure>,
}

enum Outcome {
    Computed,
    Cached,
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// PD inputs directly inside `dir`, sorted by name.
pub fn inputs(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn output_name(input: &Path) -> String {
    let stem = input.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default();
    format!("{stem}.table.json")
}

fn process(path: &Path, degree: usize, cache: Option<&Cache>, out: &Path) -> CliResult<Outcome> {
    let d = read_diagram_file(path)?;
    let key = cache_key(&d.to_canonical_json(), degree);
    let (json, outcome) = match cache.and_then(|c| c.get(&key)) {
        Some(entry) => (entry.table, Outcome::Cached),
        None => {
            let json = MilnorTable::compute(&d, degree)?.to_json();
            if let Some(c) = cache {
                c.put(&key, &json).map_err(|e| io_err(path, e))?;
            }
            (json, Outcome::Computed)
        }
    };
    let target = out.join(output_name(path));
    write_atomic(&target, format!("{json}\n").as_bytes()).map_err(|e| io_err(&target, e))?;
    Ok(outcome)
}

pub fn run(dir: &Path, degree: usize, cache_dir: Option<&Path>, out: &Path) -> CliResult<Summary> {
    let files = inputs(dir)?;
    let cache = cache_dir
        .map(Cache::open)
        .transpose()
        .map_err(|e| io_err(cache_dir.unwrap_or(dir), e))?;
    fs::create_dir_all(out).map_err(|e| io_err(out, e))?;

    let results: Vec<(PathBuf, CliResult<Outcome>)> = files
        .par_iter()
        .map(|p| (p.clone(), process(p, degree, cache.as_ref(), out)))
        .collect();

    let mut summary = Summary { cached: 0, computed: 0, failures: Vec::new() };
    for (path, r) in results {
        match r {
            Ok(Outcome::Computed) => summary.computed += 1,
            Ok(Outcome::Cached) => summary.cached += 1,
            Err(e) => summary.failures.push(Failure {
                error: e.to_string(),
                file: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
            }),
        }
    }
    Ok(summary)
}
