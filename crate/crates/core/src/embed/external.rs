use std::collections::HashMap;
use std::io::BufRead;

use log::warn;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::normalize;

use super::EmbeddingVector;

/// Precomputed sentence vectors keyed by normalized sentence text.
#[derive(Debug, Clone)]
pub struct ExternalEmbeddings<T> {
    dim: usize,
    table: HashMap<String, EmbeddingVector<T>>,
}

impl<T: Scalar> ExternalEmbeddings<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, sentence: &str) -> Option<&EmbeddingVector<T>> {
        self.table.get(&normalize(sentence))
    }

    pub(crate) fn get_or_zero(&self, sentence: &str) -> EmbeddingVector<T> {
        self.get(sentence)
            .cloned()
            .unwrap_or_else(|| EmbeddingVector::zero(self.dim))
    }
}

/// Reads `sentence<TAB>v1,v2,...,vD` lines. Vectors are renormalized to unit
/// length. A dimension that differs from the first record is an error;
/// repeated sentences keep their first vector.
pub fn load_external_embeddings<T: Scalar, R: BufRead>(input: R) -> Result<ExternalEmbeddings<T>> {
    let mut dim = None;
    let mut table = HashMap::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let bad = |message: String| Error::Format {
            line: line_no,
            message,
        };
        let (sentence, values) = line
            .rsplit_once('\t')
            .ok_or_else(|| bad("expected `sentence<TAB>vector`".into()))?;
        let components = values
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map(T::from_f64_lossy)
                    .map_err(|e| bad(format!("bad component `{x}`: {e}")))
            })
            .collect::<Result<Vec<T>>>()?;
        match dim {
            None => dim = Some(components.len()),
            Some(d) if d != components.len() => {
                return Err(bad(format!(
                    "vector has dimension {} but earlier records have {d}",
                    components.len()
                )))
            }
            Some(_) => {}
        }
        let key = normalize(sentence);
        if table.contains_key(&key) {
            warn!("line {line_no}: duplicate sentence `{key}`, keeping the first vector");
            continue;
        }
        table.insert(key, EmbeddingVector::from_dense(&components));
    }
    Ok(ExternalEmbeddings {
        dim: dim.unwrap_or(0),
        table,
    })
}
