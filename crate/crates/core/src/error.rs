use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed XML at byte offset {offset}: {message}")]
    Xml { offset: u64, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,

    #[error("invalid embedder: {0}")]
    InvalidEmbedder(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot split dataset `{name}`: {reason}")]
    InvalidSplit { name: String, reason: String },

    #[error("dataset `{dataset}`: pair {index} has an empty side after normalization")]
    EmptyPair { dataset: String, index: usize },

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("duplicate dataset name `{0}`")]
    DuplicateDataset(String),

    #[error("system `{system}` produced {got} hypotheses for test set `{set}` with {expected} sentences")]
    LengthMismatch {
        system: String,
        set: String,
        expected: usize,
        got: usize,
    },

    #[error("hypothesis and reference counts differ: {hyps} vs {refs}")]
    CorpusMismatch { hyps: usize, refs: usize },

    #[error("BLEU is undefined for an empty corpus")]
    EmptyCorpus,
}
