use std::collections::{HashMap, HashSet};

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{CleanArticle, LangLink};

/// A source-language article matched with its target-language counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArticlePair {
    pub src: CleanArticle,
    pub tgt: CleanArticle,
    pub link: LangLink,
}

/// JSON-lines record for a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticlePairRecord {
    pub src_title: String,
    pub tgt_title: String,
}

impl From<&ArticlePair> for ArticlePairRecord {
    fn from(p: &ArticlePair) -> Self {
        Self {
            src_title: p.src.title.clone(),
            tgt_title: p.tgt.title.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PairOptions {
    /// Links whose source or target title matches are dropped (e.g.
    /// disambiguation pages). Off by default.
    pub exclude_titles: Option<Regex>,
}

#[derive(Debug, Clone, Default)]
pub struct Pairing {
    pub pairs: Vec<ArticlePair>,
    /// Links with at least one endpoint missing from the corpora.
    pub unmatched: usize,
    pub excluded: usize,
}

fn index(corpus: &[CleanArticle]) -> HashMap<&str, &CleanArticle> {
    let mut map = HashMap::with_capacity(corpus.len());
    for a in corpus {
        map.entry(a.title.as_str()).or_insert(a);
    }
    map
}

/// Joins the corpora through `links`. Every target article is used at most
/// once; output is sorted by target title.
pub fn pair_articles(
    src_corpus: &[CleanArticle],
    tgt_corpus: &[CleanArticle],
    links: &[LangLink],
    options: &PairOptions,
) -> Result<Pairing> {
    let src = index(src_corpus);
    let tgt = index(tgt_corpus);
    let mut used = HashSet::new();
    let mut out = Pairing::default();
    for link in links {
        if let Some(re) = &options.exclude_titles {
            if re.is_match(&link.from_title) || re.is_match(&link.to_title) {
                out.excluded += 1;
                continue;
            }
        }
        let (Some(t), Some(s)) = (
            tgt.get(link.from_title.as_str()),
            src.get(link.to_title.as_str()),
        ) else {
            out.unmatched += 1;
            continue;
        };
        if !used.insert(t.title.as_str()) {
            continue;
        }
        if s.lang == t.lang {
            return Err(Error::InvalidConfig(format!(
                "both articles of link `{}` -> `{}` are in language `{}`",
                link.from_title, link.to_title, s.lang
            )));
        }
        out.pairs.push(ArticlePair {
            src: (*s).clone(),
            tgt: (*t).clone(),
            link: link.clone(),
        });
    }
    out.pairs.sort_by(|a, b| a.tgt.title.cmp(&b.tgt.title));
    Ok(out)
}

/// Rebuilds pairs from a pair listing and the two article collections.
/// Records whose articles are missing are counted in `unmatched`.
pub fn resolve_pairs(
    records: &[ArticlePairRecord],
    src_corpus: &[CleanArticle],
    tgt_corpus: &[CleanArticle],
) -> Result<Pairing> {
    let links: Vec<LangLink> = records
        .iter()
        .map(|r| LangLink {
            from_title: r.tgt_title.clone(),
            to_title: r.src_title.clone(),
        })
        .collect();
    pair_articles(src_corpus, tgt_corpus, &links, &PairOptions::default())
}
