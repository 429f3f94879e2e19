//! Mining and evaluation toolkit for Chinese/Cantonese parallel text.
//!
//! The pipeline runs in stages that mirror how a comparable corpus turns into
//! training data:
//!
//! 1. [`wiki`] streams MediaWiki XML dumps, strips wikitext markup and joins the
//!    two language editions through interlanguage links.
//! 2. [`text`] segments paragraphs into sentences and normalizes them.
//! 3. [`embed`] turns sentences into unit vectors and scores them with cosine
//!    similarity.
//! 4. [`mining`] keeps high-scoring cross-language pairs, removes identical
//!    pairs, deduplicates by source sentence and filters digit mismatches.
//! 5. [`corpus`] splits datasets into train/validation/test partitions.
//! 6. [`eval`] computes corpus BLEU and runs baseline translators.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, which is what the command-line tool uses.

pub mod corpus;
pub mod embed;
pub mod error;
pub mod eval;
pub mod mining;
pub mod scalar;
pub mod text;
pub mod wiki;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision sentence embedding.
pub type Embedding = embed::EmbeddingVector<f64>;
/// Single-precision sentence embedding.
pub type Embedding32 = embed::EmbeddingVector<f32>;
/// Double-precision embedder.
pub type Embedder = embed::Embedder<f64>;
/// Double-precision scored sentence pair.
pub type ScoredPair = mining::ScoredSentencePair<f64>;
/// Double-precision mining configuration.
pub type MiningConfig = mining::MiningConfig<f64>;
/// Double-precision BLEU result.
pub type Bleu = eval::BleuResult<f64>;
