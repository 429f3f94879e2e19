use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Pair, ParallelDataset};

/// Train/validation/test partition of one dataset. Index lists refer to
/// positions in the original dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub name: String,
    pub seed: u64,
    pub train: Vec<Pair>,
    pub valid: Vec<Pair>,
    pub test: Vec<Pair>,
    pub train_indices: Vec<usize>,
    pub valid_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

impl DatasetSplit {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.train.len(), self.valid.len(), self.test.len())
    }
}

/// Uniform integer in `0..=bound` by rejection sampling.
fn uniform_inclusive(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    if bound == u64::MAX {
        return rng.next_u64();
    }
    let range = bound + 1;
    let zone = u64::MAX - (u64::MAX % range) - 1;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % range;
        }
    }
}

/// Seeded permutation of `0..n`: Fisher-Yates from the last position down,
/// drawing from ChaCha8 seeded with `seed_from_u64(seed)`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = uniform_inclusive(&mut rng, i as u64) as usize;
        idx.swap(i, j);
    }
    idx
}

/// 8:1:1 sizes: train = floor(0.8 n), valid = 0.1 n rounded half to even,
/// test = the rest.
pub fn sizes_811(n: usize) -> (usize, usize, usize) {
    let train = n * 8 / 10;
    let (q, r) = (n / 10, n % 10);
    let valid = match r.cmp(&5) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => q + (q % 2),
    };
    (train, valid, n - train - valid)
}

fn assemble(dataset: &ParallelDataset, seed: u64, n_train: usize, n_valid: usize) -> DatasetSplit {
    let order = permutation(dataset.len(), seed);
    let (train_idx, rest) = order.split_at(n_train);
    let (valid_idx, test_idx) = rest.split_at(n_valid);
    let take = |idx: &[usize]| {
        idx.iter()
            .map(|&i| dataset.pairs[i].clone())
            .collect::<Vec<_>>()
    };
    DatasetSplit {
        name: dataset.name.clone(),
        seed,
        train: take(train_idx),
        valid: take(valid_idx),
        test: take(test_idx),
        train_indices: train_idx.to_vec(),
        valid_indices: valid_idx.to_vec(),
        test_indices: test_idx.to_vec(),
    }
}

/// Shuffles and splits 8:1:1.
pub fn split_811(dataset: &ParallelDataset, seed: u64) -> Result<DatasetSplit> {
    let n = dataset.len();
    if n < 3 {
        return Err(Error::InvalidSplit {
            name: dataset.name.clone(),
            reason: format!("an 8:1:1 split needs at least 3 pairs, got {n}"),
        });
    }
    let (train, valid, _) = sizes_811(n);
    Ok(assemble(dataset, seed, train, valid))
}

/// Shuffles and takes fixed-size validation and test sets; the rest trains.
pub fn split_fixed(
    dataset: &ParallelDataset,
    n_valid: usize,
    n_test: usize,
    seed: u64,
) -> Result<DatasetSplit> {
    let n = dataset.len();
    if n_valid.saturating_add(n_test) >= n {
        return Err(Error::InvalidSplit {
            name: dataset.name.clone(),
            reason: format!(
                "{n_valid} validation + {n_test} test pairs leave no training data out of {n}"
            ),
        });
    }
    Ok(assemble(dataset, seed, n - n_valid - n_test, n_valid))
}

/// Concatenates validation sets in the given order, skipping `exclude`.
pub fn merge_validation(splits: &[DatasetSplit], exclude: &[&str]) -> Result<Vec<Pair>> {
    let mut names = HashSet::new();
    for s in splits {
        if !names.insert(s.name.as_str()) {
            return Err(Error::DuplicateDataset(s.name.clone()));
        }
    }
    if let Some(unknown) = exclude.iter().find(|e| !names.contains(**e)) {
        return Err(Error::UnknownDataset((*unknown).to_owned()));
    }
    Ok(splits
        .iter()
        .filter(|s| !exclude.contains(&s.name.as_str()))
        .flat_map(|s| s.valid.iter().cloned())
        .collect())
}
