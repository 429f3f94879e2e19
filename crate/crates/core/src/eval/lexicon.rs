use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use crate::error::{Error, Result};

/// Standard written Chinese -> Cantonese mappings for common particles,
/// adverbs, pronouns, verbs, adjectives and nouns.
pub const DEFAULT_MAPPINGS: [(&str, &str); 12] = [
    ("的", "o既"),
    ("地", "咁"),
    ("了", "o左"),
    ("不", "唔"),
    ("他", "佢"),
    ("他們", "佢地"),
    ("是", "係"),
    ("喜歡", "鍾意"),
    ("美麗", "靚"),
    ("冷", "凍"),
    ("小孩子", "細路仔"),
    ("椅子", "凳"),
];

/// Phrase substitution table with unique source phrases.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    entries: Vec<(String, String)>,
    index: HashMap<String, usize>,
    max_chars: usize,
}

impl Lexicon {
    pub fn new(entries: Vec<(String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut max_chars = 0;
        for (i, (src, tgt)) in entries.iter().enumerate() {
            if src.is_empty() || tgt.is_empty() {
                return Err(Error::Format {
                    line: i + 1,
                    message: "lexicon phrases must be nonempty".into(),
                });
            }
            if index.insert(src.clone(), i).is_some() {
                return Err(Error::Format {
                    line: i + 1,
                    message: format!("duplicate source phrase `{src}`"),
                });
            }
            max_chars = max_chars.max(src.chars().count());
        }
        Ok(Self {
            entries,
            index,
            max_chars,
        })
    }

    pub fn default_mappings() -> Self {
        Self::new(
            DEFAULT_MAPPINGS
                .iter()
                .map(|&(s, t)| (s.to_owned(), t.to_owned()))
                .collect(),
        )
        .expect("built-in lexicon is valid")
    }

    /// Reads `source<TAB>target` lines. Blank lines are ignored.
    pub fn from_tsv<R: BufRead>(input: R) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: &str| Error::Format {
                line: idx + 1,
                message: message.into(),
            };
            let (src, tgt) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected `source<TAB>target`"))?;
            let (src, tgt) = (src.trim(), tgt.trim());
            if src.is_empty() || tgt.is_empty() {
                return Err(bad("empty phrase"));
            }
            if !seen.insert(src.to_owned()) {
                return Err(bad("duplicate source phrase"));
            }
            entries.push((src.to_owned(), tgt.to_owned()));
        }
        Self::new(entries)
    }

    /// Appends entries whose source phrase is not already present.
    pub fn extend(&mut self, other: &Lexicon) {
        for (s, t) in &other.entries {
            if !self.index.contains_key(s) {
                self.index.insert(s.clone(), self.entries.len());
                self.max_chars = self.max_chars.max(s.chars().count());
                self.entries.push((s.clone(), t.clone()));
            }
        }
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Left-to-right longest-match substitution. Replaced text is not
    /// rescanned; unmatched characters are copied through.
    pub fn translate(&self, source: &str) -> String {
        let bounds: Vec<usize> = source
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(source.len()))
            .collect();
        let n = bounds.len() - 1;
        let mut out = String::with_capacity(source.len());
        let mut i = 0;
        while i < n {
            let longest = (1..=self.max_chars.min(n - i)).rev().find_map(|len| {
                let phrase = &source[bounds[i]..bounds[i + len]];
                self.index.get(phrase).map(|&e| (len, e))
            });
            match longest {
                Some((len, e)) => {
                    out.push_str(&self.entries[e].1);
                    i += len;
                }
                None => {
                    out.push_str(&source[bounds[i]..bounds[i + 1]]);
                    i += 1;
                }
            }
        }
        out
    }
}

/// Outputs each source sentence unchanged.
pub fn copy_baseline(sources: &[String]) -> Vec<String> {
    sources.to_vec()
}

pub fn lexicon_baseline(source: &str, lexicon: &Lexicon) -> String {
    lexicon.translate(source)
}
