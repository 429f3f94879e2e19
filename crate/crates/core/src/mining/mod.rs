//! Parallel sentence mining within matched article pairs.
//!
//! For every article pair, all cross-language sentence pairs are scored; the
//! pipeline then keeps pairs at or above the threshold, drops pairs whose two
//! sides are the same string, keeps only the best pair per source sentence
//! and, optionally, drops pairs whose digits disagree.

mod digits;
mod pipeline;
mod stages;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::Sentence;

pub use digits::{digit_runs, digits_consistent};
pub use pipeline::{mine_article_pair, mine_corpus, score_article_pair, threshold_sweep, SweepRow};
pub use stages::{
    dedup_by_source, digit_consistency_filter, min_tokens_filter, remove_identical, select_pairs,
};

pub const DEFAULT_THRESHOLD: f64 = 0.93;

/// A candidate bitext pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredSentencePair<T> {
    pub src: Sentence,
    pub tgt: Sentence,
    pub score: T,
    pub article_pair_id: usize,
}

/// Mined output: pairs ordered by article pair, then descending score.
pub type ParallelCorpus<T> = Vec<ScoredSentencePair<T>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupScope {
    #[default]
    PerArticlePair,
    Global,
}

impl std::str::FromStr for DedupScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-article-pair" => Ok(DedupScope::PerArticlePair),
            "global" => Ok(DedupScope::Global),
            other => Err(format!("unknown dedup scope `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MiningConfig<T> {
    pub threshold: T,
    pub digit_filter: bool,
    pub dedup_scope: DedupScope,
    pub min_tokens: usize,
}

impl<T: Scalar> Default for MiningConfig<T> {
    fn default() -> Self {
        Self {
            threshold: T::from_f64_lossy(DEFAULT_THRESHOLD),
            digit_filter: true,
            dedup_scope: DedupScope::PerArticlePair,
            min_tokens: 0,
        }
    }
}

impl<T: Scalar> MiningConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold >= T::zero() && self.threshold <= T::one()) {
            return Err(Error::InvalidConfig(format!(
                "threshold {} is outside [0, 1]",
                self.threshold
            )));
        }
        Ok(())
    }
}
