//! Sentence segmentation, normalization and BLEU tokenization.

mod normalize;
mod segment;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use normalize::normalize;
pub use segment::{is_closing_mark, is_terminal_mark, segment};
pub use tokenize::{is_han, tokenize_for_bleu, tokenize_with, TokenSequence, TokenizeOptions};

/// Where a sentence came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Origin {
    pub lang: String,
    pub title: String,
    pub paragraph: usize,
    pub sentence: usize,
}

/// A normalized, nonempty sentence with its position in the source article.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub origin: Origin,
}

impl Sentence {
    /// Normalizes `raw`; returns `None` if nothing is left.
    pub fn new(raw: &str, origin: Origin) -> Option<Self> {
        let text = normalize(raw);
        if text.is_empty() {
            None
        } else {
            Some(Self { text, origin })
        }
    }
}

/// Segments every paragraph of an article and returns the normalized
/// sentences in reading order.
pub fn sentences_of<S: AsRef<str>>(lang: &str, title: &str, paragraphs: &[S]) -> Vec<Sentence> {
    let mut out = Vec::new();
    for (p, paragraph) in paragraphs.iter().enumerate() {
        let mut index = 0;
        for raw in segment(paragraph.as_ref()) {
            let origin = Origin {
                lang: lang.to_owned(),
                title: title.to_owned(),
                paragraph: p,
                sentence: index,
            };
            if let Some(s) = Sentence::new(raw, origin) {
                out.push(s);
                index += 1;
            }
        }
    }
    out
}

/// JSON-lines record for a sentence file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub lang: String,
    pub title: String,
    pub p: usize,
    pub s: usize,
    pub text: String,
}

impl From<&Sentence> for SentenceRecord {
    fn from(s: &Sentence) -> Self {
        Self {
            lang: s.origin.lang.clone(),
            title: s.origin.title.clone(),
            p: s.origin.paragraph,
            s: s.origin.sentence,
            text: s.text.clone(),
        }
    }
}

impl From<SentenceRecord> for Sentence {
    fn from(r: SentenceRecord) -> Self {
        Sentence {
            text: r.text,
            origin: Origin {
                lang: r.lang,
                title: r.title,
                paragraph: r.p,
                sentence: r.s,
            },
        }
    }
}
