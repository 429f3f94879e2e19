//! Datasets, train/validation/test splits and corpus files.

mod io;
mod manifest;
mod split;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::normalize;

pub use io::{escape_cell, read_corpus, unescape_cell, write_corpus, CorpusFormat};
pub use manifest::{load_manifest, Manifest, ManifestEntry, SplitSpec};
pub use split::{merge_validation, permutation, sizes_811, split_811, split_fixed, DatasetSplit};

/// A source/target sentence pair.
pub type Pair = (String, String);

/// A named corpus of sentence pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelDataset {
    pub name: String,
    pub pairs: Vec<Pair>,
    pub provenance: String,
}

impl ParallelDataset {
    /// Normalizes both sides of every pair; a side that ends up empty is an
    /// error.
    pub fn new(
        name: impl Into<String>,
        pairs: Vec<Pair>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        let pairs = pairs
            .into_iter()
            .enumerate()
            .map(|(index, (s, t))| {
                let (s, t) = (normalize(&s), normalize(&t));
                if s.is_empty() || t.is_empty() {
                    Err(Error::EmptyPair {
                        dataset: name.clone(),
                        index,
                    })
                } else {
                    Ok((s, t))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name,
            pairs,
            provenance: provenance.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}
