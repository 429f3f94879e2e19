use std::collections::HashSet;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{read_corpus, split_811, split_fixed, CorpusFormat, DatasetSplit, ParallelDataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SplitSpec {
    #[serde(rename = "811")]
    EightOneOne,
    #[serde(rename = "fixed")]
    Fixed { n_valid: usize, n_test: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub path: PathBuf,
    #[serde(default)]
    pub format: CorpusFormat,
    pub split: SplitSpec,
    #[serde(default)]
    pub exclude_from_merged_valid: bool,
    /// Overrides the run-wide split seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Dataset list in declaration order. Relative paths resolve against the
/// manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    pub base_dir: PathBuf,
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let entries: Vec<ManifestEntry> = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    let mut names = HashSet::new();
    for e in &entries {
        if !names.insert(e.name.as_str()) {
            return Err(Error::DuplicateDataset(e.name.clone()));
        }
    }
    Ok(Manifest {
        entries,
        base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
    })
}

impl Manifest {
    pub fn resolve(&self, entry: &ManifestEntry) -> PathBuf {
        if entry.path.is_absolute() {
            entry.path.clone()
        } else {
            self.base_dir.join(&entry.path)
        }
    }

    pub fn load_dataset(&self, entry: &ManifestEntry) -> Result<ParallelDataset> {
        let path = self.resolve(entry);
        let pairs = read_corpus(BufReader::new(File::open(&path)?), entry.format)?;
        ParallelDataset::new(entry.name.clone(), pairs, path.display().to_string())
    }

    /// Loads and splits every dataset in declaration order.
    pub fn split_all(&self, default_seed: u64) -> Result<Vec<DatasetSplit>> {
        self.entries
            .iter()
            .map(|entry| {
                let dataset = self.load_dataset(entry)?;
                let seed = entry.seed.unwrap_or(default_seed);
                match entry.split {
                    SplitSpec::EightOneOne => split_811(&dataset, seed),
                    SplitSpec::Fixed { n_valid, n_test } => {
                        split_fixed(&dataset, n_valid, n_test, seed)
                    }
                }
            })
            .collect()
    }

    pub fn excluded_from_merged_valid(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.exclude_from_merged_valid)
            .map(|e| e.name.as_str())
            .collect()
    }
}
