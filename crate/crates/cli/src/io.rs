use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliResult, Failure};

pub fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::io(path, e))
}

pub fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::io(path, e))
}

pub fn finish(mut w: BufWriter<File>, path: &Path) -> CliResult<()> {
    w.flush().map_err(|e| Failure::io(path, e))
}

/// Reads one JSON value per nonblank line.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| Failure::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line)
            .map_err(|e| Failure::format(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(value);
    }
    Ok(out)
}

pub fn write_jsonl_line<T: Serialize, W: Write>(
    out: &mut W,
    value: &T,
    path: &Path,
) -> CliResult<()> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::format(e.to_string()))?;
    out.write_all(b"\n").map_err(|e| Failure::io(path, e))
}

pub fn read_lines(path: &Path) -> CliResult<Vec<String>> {
    open(path)?
        .lines()
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::io(path, e))
}
