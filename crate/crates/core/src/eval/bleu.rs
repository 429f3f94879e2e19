use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::TokenSequence;

pub const MAX_ORDER: usize = 4;

/// Corpus-level BLEU with its components.
#[derive(Debug, Clone, PartialEq)]
pub struct BleuResult<T> {
    /// Score on the 0-100 scale, unrounded.
    pub bleu: T,
    /// Modified precision for orders 1 to 4.
    pub precisions: [T; MAX_ORDER],
    pub brevity_penalty: T,
    pub matches: [usize; MAX_ORDER],
    pub totals: [usize; MAX_ORDER],
    pub hyp_length: usize,
    pub ref_length: usize,
}

impl<T: Scalar> BleuResult<T> {
    /// The score with two decimals, as reported.
    pub fn display(&self) -> String {
        format!("{:.2}", self.bleu)
    }
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram matches and hypothesis n-gram total, summed over the
/// corpus. Each hypothesis n-gram count is capped by its count in the single
/// reference.
pub fn modified_precision(
    hyps: &[TokenSequence],
    refs: &[TokenSequence],
    n: usize,
) -> (usize, usize) {
    assert!((1..=MAX_ORDER).contains(&n), "order {n} out of range");
    let mut matches = 0;
    let mut total = 0;
    for (h, r) in hyps.iter().zip(refs) {
        let hc = ngram_counts(&h.tokens, n);
        let rc = ngram_counts(&r.tokens, n);
        for (gram, &count) in &hc {
            matches += count.min(rc.get(gram).copied().unwrap_or(0));
            total += count;
        }
    }
    (matches, total)
}

/// Corpus BLEU over orders 1-4 with uniform weights, no smoothing and the
/// standard brevity penalty.
///
/// An order with no hypothesis n-grams at all (every hypothesis is shorter
/// than n) counts as precision 1 rather than 0/0. Any order with n-grams but
/// no matches gives a score of 0.
pub fn corpus_bleu<T: Scalar>(
    hyps: &[TokenSequence],
    refs: &[TokenSequence],
) -> Result<BleuResult<T>> {
    if hyps.len() != refs.len() {
        return Err(Error::CorpusMismatch {
            hyps: hyps.len(),
            refs: refs.len(),
        });
    }
    if hyps.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut matches = [0; MAX_ORDER];
    let mut totals = [0; MAX_ORDER];
    for n in 1..=MAX_ORDER {
        (matches[n - 1], totals[n - 1]) = modified_precision(hyps, refs, n);
    }
    let precisions: [T; MAX_ORDER] = std::array::from_fn(|i| {
        if totals[i] == 0 {
            T::one()
        } else {
            T::from_usize_lossy(matches[i]) / T::from_usize_lossy(totals[i])
        }
    });
    let hyp_length: usize = hyps.iter().map(TokenSequence::len).sum();
    let ref_length: usize = refs.iter().map(TokenSequence::len).sum();
    let (c, r) = (
        T::from_usize_lossy(hyp_length),
        T::from_usize_lossy(ref_length),
    );
    let brevity_penalty = if hyp_length > ref_length {
        T::one()
    } else if hyp_length == 0 {
        if ref_length == 0 {
            T::one()
        } else {
            T::zero()
        }
    } else {
        (T::one() - r / c).exp()
    };
    let bleu = if precisions.iter().any(|p| p.is_zero()) {
        T::zero()
    } else {
        let quarter = T::from_f64_lossy(0.25);
        let log_mean = precisions.iter().map(|p| quarter * p.ln()).sum::<T>();
        T::from_f64_lossy(100.0) * brevity_penalty * log_mean.exp()
    };
    Ok(BleuResult {
        bleu,
        precisions,
        brevity_penalty,
        matches,
        totals,
        hyp_length,
        ref_length,
    })
}
