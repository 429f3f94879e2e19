use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A unit-norm sentence vector, stored sparsely as `(index, value)` pairs in
/// ascending index order. The zero vector marks a sentence with no usable
/// features.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector<T> {
    dim: usize,
    entries: Vec<(u32, T)>,
}

impl<T: Scalar> EmbeddingVector<T> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds a unit vector from raw components. All-zero input gives the
    /// zero vector.
    pub fn from_dense(components: &[T]) -> Self {
        let entries = components
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, &v)| (i as u32, v))
            .collect();
        Self::from_sorted_entries(components.len(), entries)
    }

    /// `entries` must be sorted by index with no duplicates.
    pub(crate) fn from_sorted_entries(dim: usize, mut entries: Vec<(u32, T)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        entries.retain(|(_, v)| !v.is_zero());
        let norm = l2(&entries);
        if norm.is_zero() {
            return Self::zero(dim);
        }
        for (_, v) in &mut entries {
            *v = *v / norm;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, T)] {
        &self.entries
    }

    pub fn components(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for &(i, v) in &self.entries {
            out[i as usize] = v;
        }
        out
    }

    pub fn norm(&self) -> T {
        l2(&self.entries)
    }
}

fn l2<T: Scalar>(entries: &[(u32, T)]) -> T {
    entries.iter().map(|&(_, v)| v * v).sum::<T>().sqrt()
}

/// Sum of products in ascending index order.
fn dot<T: Scalar>(a: &[(u32, T)], b: &[(u32, T)]) -> T {
    let (mut i, mut j) = (0, 0);
    let mut acc = T::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = acc + a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Unclamped `dot(u, v) / (|u| |v|)`.
pub fn raw_cosine<T: Scalar>(u: &EmbeddingVector<T>, v: &EmbeddingVector<T>) -> Result<T> {
    if u.dim != v.dim {
        return Err(Error::DimensionMismatch {
            left: u.dim,
            right: v.dim,
        });
    }
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    // IEEE multiplication commutes, so swapping arguments gives the same bits.
    Ok(dot(&u.entries, &v.entries) / (u.norm() * v.norm()))
}

/// Cosine similarity clamped to `[0, 1]`.
pub fn cosine<T: Scalar>(u: &EmbeddingVector<T>, v: &EmbeddingVector<T>) -> Result<T> {
    raw_cosine(u, v).map(|c| c.max(T::zero()).min(T::one()))
}
