//! Sentence embeddings and cosine similarity.
//!
//! The built-in embedder hashes character n-grams into a fixed number of
//! buckets. Precomputed vectors from an external encoder can be loaded instead;
//! they are looked up by normalized sentence text.

mod external;
mod hashing;
mod vector;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use external::{load_external_embeddings, ExternalEmbeddings};
pub use hashing::{bucket_of, embed_hashngram, fnv1a64, HashNgram};
pub use vector::{cosine, raw_cosine, EmbeddingVector};

pub const DEFAULT_N_MIN: usize = 1;
pub const DEFAULT_N_MAX: usize = 3;
pub const DEFAULT_DIM: usize = 1 << 18;

/// How external vectors are matched to sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyingRule {
    #[default]
    NormalizedText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EmbedderSpec {
    HashNgram {
        n_min: usize,
        n_max: usize,
        dim: usize,
    },
    ExternalFile {
        path: PathBuf,
        #[serde(default)]
        key: KeyingRule,
    },
}

impl Default for EmbedderSpec {
    fn default() -> Self {
        EmbedderSpec::HashNgram {
            n_min: DEFAULT_N_MIN,
            n_max: DEFAULT_N_MAX,
            dim: DEFAULT_DIM,
        }
    }
}

impl EmbedderSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EmbedderSpec::HashNgram { n_min, n_max, dim } => {
                HashNgram::new(n_min, n_max, dim).map(|_| ())
            }
            EmbedderSpec::ExternalFile { .. } => Ok(()),
        }
    }

    /// Builds the embedder, reading the vector file for `external-file`.
    pub fn build<T: Scalar>(&self) -> Result<Embedder<T>> {
        match self {
            EmbedderSpec::HashNgram { n_min, n_max, dim } => {
                Ok(Embedder::HashNgram(HashNgram::new(*n_min, *n_max, *dim)?))
            }
            EmbedderSpec::ExternalFile { path, .. } => {
                let file = std::fs::File::open(path)?;
                let table = load_external_embeddings(std::io::BufReader::new(file))?;
                Ok(Embedder::External(table))
            }
        }
    }
}

/// A constructed embedder. Immutable, so it can be shared across threads.
#[derive(Debug, Clone)]
pub enum Embedder<T> {
    HashNgram(HashNgram),
    External(ExternalEmbeddings<T>),
}

impl<T: Scalar> Embedder<T> {
    /// Embeds one sentence. Sentences the embedder cannot represent (empty
    /// text, or missing from an external table) come back as the zero vector.
    pub fn embed(&self, sentence: &str) -> EmbeddingVector<T> {
        match self {
            Embedder::HashNgram(h) => h.embed(sentence),
            Embedder::External(table) => table.get_or_zero(sentence),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Embedder::HashNgram(h) => h.dim(),
            Embedder::External(table) => table.dim(),
        }
    }
}

impl From<HashNgram> for EmbedderSpec {
    fn from(h: HashNgram) -> Self {
        EmbedderSpec::HashNgram {
            n_min: h.n_min(),
            n_max: h.n_max(),
            dim: h.dim(),
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidEmbedder(msg.into())
}
