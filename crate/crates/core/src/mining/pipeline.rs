use std::cmp::Ordering;

use rayon::prelude::*;

use crate::embed::{cosine, Embedder};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::sentences_of;
use crate::wiki::ArticlePair;

use super::stages::{
    dedup_by_source, digit_consistency_filter, min_tokens_filter, remove_identical, select_pairs,
};
use super::{DedupScope, MiningConfig, ParallelCorpus, ScoredSentencePair};

/// Scores every source sentence against every target sentence of one article
/// pair. Sentences that embed to the zero vector take no part.
pub fn score_article_pair<T: Scalar>(
    pair: &ArticlePair,
    article_pair_id: usize,
    embedder: &Embedder<T>,
) -> Vec<ScoredSentencePair<T>> {
    let embed_all = |lang: &str, title: &str, paragraphs: &[String]| {
        sentences_of(lang, title, paragraphs)
            .into_iter()
            .filter_map(|s| {
                let v = embedder.embed(&s.text);
                (!v.is_zero()).then_some((s, v))
            })
            .collect::<Vec<_>>()
    };
    let src = embed_all(&pair.src.lang, &pair.src.title, &pair.src.paragraphs);
    let tgt = embed_all(&pair.tgt.lang, &pair.tgt.title, &pair.tgt.paragraphs);
    let mut out = Vec::with_capacity(src.len() * tgt.len());
    for (s, sv) in &src {
        for (t, tv) in &tgt {
            let score = cosine(sv, tv).expect("nonzero vectors from one embedder");
            out.push(ScoredSentencePair {
                src: s.clone(),
                tgt: t.clone(),
                score,
                article_pair_id,
            });
        }
    }
    out
}

/// Applies the filtering stages to the scored pairs of one article pair.
/// With global dedup scope the source dedup here still runs per article pair;
/// the cross-pair pass happens after merging.
pub fn mine_article_pair<T: Scalar>(
    scored: Vec<ScoredSentencePair<T>>,
    config: &MiningConfig<T>,
) -> Vec<ScoredSentencePair<T>> {
    let pairs = select_pairs(scored, config.threshold);
    let pairs = min_tokens_filter(pairs, config.min_tokens);
    let pairs = remove_identical(pairs);
    let pairs = dedup_by_source(pairs, DedupScope::PerArticlePair);
    if config.digit_filter {
        digit_consistency_filter(pairs)
    } else {
        pairs
    }
}

fn output_order<T: Scalar>(a: &ScoredSentencePair<T>, b: &ScoredSentencePair<T>) -> Ordering {
    a.article_pair_id
        .cmp(&b.article_pair_id)
        .then_with(|| b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal))
        .then_with(|| a.src.text.cmp(&b.src.text))
        .then_with(|| a.tgt.text.cmp(&b.tgt.text))
        .then_with(|| a.tgt.origin.cmp(&b.tgt.origin))
        .then_with(|| a.src.origin.cmp(&b.src.origin))
}

fn merge<T: Scalar>(
    per_pair: Vec<Vec<ScoredSentencePair<T>>>,
    scope: DedupScope,
) -> ParallelCorpus<T> {
    let mut all: Vec<_> = per_pair.into_iter().flatten().collect();
    if scope == DedupScope::Global {
        all = dedup_by_source(all, DedupScope::Global);
    }
    all.sort_by(output_order);
    all
}

/// Runs `f` over the article pairs on `workers` threads, returning results in
/// input order.
fn map_pairs<R, F>(pairs: &[ArticlePair], workers: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize, &ArticlePair) -> R + Sync + Send,
{
    if workers <= 1 {
        return Ok(pairs.iter().enumerate().map(|(i, p)| f(i, p)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| pairs.par_iter().enumerate().map(|(i, p)| f(i, p)).collect()))
}

/// Mines the whole collection. Article pair ids are positions in `pairs`.
/// The result does not depend on `workers`.
pub fn mine_corpus<T: Scalar>(
    pairs: &[ArticlePair],
    embedder: &Embedder<T>,
    config: &MiningConfig<T>,
    workers: usize,
) -> Result<ParallelCorpus<T>> {
    config.validate()?;
    let per_pair = map_pairs(pairs, workers, |id, pair| {
        mine_article_pair(score_article_pair(pair, id, embedder), config)
    })?;
    Ok(merge(per_pair, config.dedup_scope))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub threshold: T,
    pub count: usize,
}

/// Pair counts of the mined corpus at each threshold, with the digit filter
/// off. Scores are computed once and reused across thresholds.
pub fn threshold_sweep<T: Scalar>(
    pairs: &[ArticlePair],
    embedder: &Embedder<T>,
    base: &MiningConfig<T>,
    thresholds: &[T],
    workers: usize,
) -> Result<Vec<SweepRow<T>>> {
    if thresholds.is_empty() {
        return Err(Error::InvalidConfig("no thresholds given".into()));
    }
    let scored = map_pairs(pairs, workers, |id, pair| {
        score_article_pair(pair, id, embedder)
    })?;
    thresholds
        .iter()
        .map(|&threshold| {
            let config = MiningConfig {
                threshold,
                digit_filter: false,
                ..base.clone()
            };
            config.validate()?;
            let per_pair = scored
                .iter()
                .map(|s| mine_article_pair(s.clone(), &config))
                .collect();
            Ok(SweepRow {
                threshold,
                count: merge(per_pair, config.dedup_scope).len(),
            })
        })
        .collect()
}
