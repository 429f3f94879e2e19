use std::cmp::Ordering;
use std::collections::HashMap;

use crate::scalar::Scalar;
use crate::text::tokenize_for_bleu;

use super::digits::digits_consistent;
use super::{DedupScope, ScoredSentencePair};

/// Keeps pairs scoring at or above `threshold`.
pub fn select_pairs<T: Scalar>(
    pairs: Vec<ScoredSentencePair<T>>,
    threshold: T,
) -> Vec<ScoredSentencePair<T>> {
    pairs.into_iter().filter(|p| p.score >= threshold).collect()
}

/// Drops pairs where either side has fewer than `min_tokens` BLEU tokens.
pub fn min_tokens_filter<T: Scalar>(
    pairs: Vec<ScoredSentencePair<T>>,
    min_tokens: usize,
) -> Vec<ScoredSentencePair<T>> {
    if min_tokens == 0 {
        return pairs;
    }
    pairs
        .into_iter()
        .filter(|p| {
            tokenize_for_bleu(&p.src.text).len() >= min_tokens
                && tokenize_for_bleu(&p.tgt.text).len() >= min_tokens
        })
        .collect()
}

/// Drops pairs whose source and target text are the same string.
pub fn remove_identical<T: Scalar>(
    pairs: Vec<ScoredSentencePair<T>>,
) -> Vec<ScoredSentencePair<T>> {
    pairs
        .into_iter()
        .filter(|p| p.src.text != p.tgt.text)
        .collect()
}

/// Drops pairs whose digit runs differ.
pub fn digit_consistency_filter<T: Scalar>(
    pairs: Vec<ScoredSentencePair<T>>,
) -> Vec<ScoredSentencePair<T>> {
    pairs
        .into_iter()
        .filter(|p| digits_consistent(&p.src.text, &p.tgt.text))
        .collect()
}

/// Ordering under which the first element is the pair to keep: higher score,
/// then smaller target text, then earlier target sentence, then smaller
/// article pair id.
pub(crate) fn preference<T: Scalar>(
    a: &ScoredSentencePair<T>,
    b: &ScoredSentencePair<T>,
) -> Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.tgt.text.cmp(&b.tgt.text))
        .then_with(|| {
            (a.tgt.origin.paragraph, a.tgt.origin.sentence)
                .cmp(&(b.tgt.origin.paragraph, b.tgt.origin.sentence))
        })
        .then_with(|| a.article_pair_id.cmp(&b.article_pair_id))
}

/// Keeps one pair per source sentence text within `scope`: the one with the
/// highest score. Survivors keep their input order.
pub fn dedup_by_source<T: Scalar>(
    pairs: Vec<ScoredSentencePair<T>>,
    scope: DedupScope,
) -> Vec<ScoredSentencePair<T>> {
    let mut best: HashMap<(Option<usize>, &str), usize> = HashMap::new();
    for (i, p) in pairs.iter().enumerate() {
        let group = match scope {
            DedupScope::PerArticlePair => Some(p.article_pair_id),
            DedupScope::Global => None,
        };
        best.entry((group, p.src.text.as_str()))
            .and_modify(|cur| {
                if preference(p, &pairs[*cur]) == Ordering::Less {
                    *cur = i;
                }
            })
            .or_insert(i);
    }
    let mut keep = vec![false; pairs.len()];
    for &i in best.values() {
        keep[i] = true;
    }
    pairs
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}
