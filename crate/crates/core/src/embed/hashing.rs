use std::collections::BTreeMap;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::text::normalize;

use super::{invalid, EmbeddingVector};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

/// Bucket for an n-gram: FNV-1a of its UTF-8 bytes modulo `dim`.
pub fn bucket_of(ngram: &str, dim: usize) -> usize {
    (fnv1a64(ngram.as_bytes()) % dim as u64) as usize
}

/// Character n-gram hashing embedder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashNgram {
    n_min: usize,
    n_max: usize,
    dim: usize,
}

impl Default for HashNgram {
    fn default() -> Self {
        Self {
            n_min: super::DEFAULT_N_MIN,
            n_max: super::DEFAULT_N_MAX,
            dim: super::DEFAULT_DIM,
        }
    }
}

impl HashNgram {
    pub fn new(n_min: usize, n_max: usize, dim: usize) -> Result<Self> {
        if n_min == 0 {
            return Err(invalid("n_min must be positive"));
        }
        if n_min > n_max {
            return Err(invalid(format!("n_min {n_min} exceeds n_max {n_max}")));
        }
        if dim < 2 || !dim.is_power_of_two() {
            return Err(invalid(format!("dim {dim} is not a power of two >= 2")));
        }
        if dim > u32::MAX as usize {
            return Err(invalid(format!("dim {dim} is too large")));
        }
        Ok(Self { n_min, n_max, dim })
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Raw bucket counts of the normalized sentence, keyed by bucket index.
    pub fn counts(&self, sentence: &str) -> BTreeMap<u32, u32> {
        let text = normalize(sentence);
        let boundaries: Vec<usize> = text
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(text.len()))
            .collect();
        let n_chars = boundaries.len() - 1;
        let mut counts = BTreeMap::new();
        for n in self.n_min..=self.n_max.min(n_chars) {
            for start in 0..=(n_chars - n) {
                let gram = &text[boundaries[start]..boundaries[start + n]];
                *counts.entry(bucket_of(gram, self.dim) as u32).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn embed<T: Scalar>(&self, sentence: &str) -> EmbeddingVector<T> {
        let entries = self
            .counts(sentence)
            .into_iter()
            .map(|(i, c)| (i, T::from_u32(c).expect("count fits a float")));
        EmbeddingVector::from_sorted_entries(self.dim, entries.collect())
    }
}

/// Embeds `sentence` with a hash n-gram embedder.
pub fn embed_hashngram<T: Scalar>(sentence: &str, embedder: &HashNgram) -> EmbeddingVector<T> {
    embedder.embed(sentence)
}
