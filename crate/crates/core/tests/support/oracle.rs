//! Straight-line reference implementations used to check the library.
//!
//! Nothing here calls into the code under test: hashing, n-gram counting,
//! cosine, the mining rules and BLEU are all written out directly. Shared by
//! the core property tests and the acceptance suite.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TERMINATOR: char = '。';

/// One mined pair as the oracle sees it.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct OraclePair {
    pub article: usize,
    pub src: String,
    pub tgt: String,
    pub score: f64,
}

impl OraclePair {
    pub fn key(&self) -> (usize, String, String, u64) {
        (
            self.article,
            self.src.clone(),
            self.tgt.clone(),
            self.score.to_bits(),
        )
    }
}

pub fn key_set(pairs: &[OraclePair]) -> BTreeSet<(usize, String, String, u64)> {
    pairs.iter().map(OraclePair::key).collect()
}

fn fnv(bytes: &[u8]) -> u64 {
    let mut h: u64 = 14695981039346656037;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(1099511628211);
    }
    h
}

/// Unit vector of character n-gram bucket counts, keyed by bucket.
pub fn embed(sentence: &str, n_min: usize, n_max: usize, dim: u64) -> BTreeMap<u64, f64> {
    let chars: Vec<char> = sentence.chars().collect();
    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
    for n in n_min..=n_max {
        if n > chars.len() {
            break;
        }
        for start in 0..=chars.len() - n {
            let gram: String = chars[start..start + n].iter().collect();
            *counts.entry(fnv(gram.as_bytes()) % dim).or_default() += 1;
        }
    }
    let mut sq = 0.0;
    for &c in counts.values() {
        sq += (c as f64) * (c as f64);
    }
    let norm = sq.sqrt();
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / norm))
        .collect()
}

pub fn cosine(u: &BTreeMap<u64, f64>, v: &BTreeMap<u64, f64>) -> f64 {
    let mut dot = 0.0;
    for (k, a) in u {
        if let Some(b) = v.get(k) {
            dot += a * b;
        }
    }
    let mut su = 0.0;
    for a in u.values() {
        su += a * a;
    }
    let mut sv = 0.0;
    for b in v.values() {
        sv += b * b;
    }
    (dot / (su.sqrt() * sv.sqrt())).clamp(0.0, 1.0)
}

/// Splits `text` after every terminator. Input is built by [`random_article`]
/// so no further normalization applies.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        cur.push(c);
        if c == TERMINATOR {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn digit_runs(s: &str) -> Vec<String> {
    let mut runs = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if c.is_ascii_digit() {
            cur.push(c);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub threshold: f64,
    pub digit_filter: bool,
    pub global: bool,
    pub n_min: usize,
    pub n_max: usize,
    pub dim: u64,
}

/// Brute-force mining over `(src text, tgt text)` article pairs.
pub fn mine(articles: &[(String, String)], cfg: OracleConfig) -> Vec<OraclePair> {
    let mut kept = Vec::new();
    for (article, (src_text, tgt_text)) in articles.iter().enumerate() {
        let src = split_sentences(src_text);
        let tgt = split_sentences(tgt_text);
        // (src, tgt, score, tgt position)
        let mut candidates: Vec<(String, String, f64, usize)> = Vec::new();
        for s in &src {
            let vs = embed(s, cfg.n_min, cfg.n_max, cfg.dim);
            if vs.is_empty() {
                continue;
            }
            for (j, t) in tgt.iter().enumerate() {
                let vt = embed(t, cfg.n_min, cfg.n_max, cfg.dim);
                if vt.is_empty() {
                    continue;
                }
                let score = cosine(&vs, &vt);
                if score >= cfg.threshold && s != t {
                    candidates.push((s.clone(), t.clone(), score, j));
                }
            }
        }
        let mut best: HashMap<String, (String, f64, usize)> = HashMap::new();
        for (s, t, score, j) in candidates {
            let replace = match best.get(&s) {
                None => true,
                Some((bt, bs, bj)) => {
                    score > *bs || (score == *bs && (t < *bt || (t == *bt && j < *bj)))
                }
            };
            if replace {
                best.insert(s, (t, score, j));
            }
        }
        for (s, (t, score, j)) in best {
            if cfg.digit_filter && digit_runs(&s) != digit_runs(&t) {
                continue;
            }
            kept.push((
                OraclePair {
                    article,
                    src: s,
                    tgt: t,
                    score,
                },
                j,
            ));
        }
    }
    if cfg.global {
        let mut best: HashMap<String, (OraclePair, usize)> = HashMap::new();
        for (p, j) in kept {
            let replace = match best.get(&p.src) {
                None => true,
                Some((b, bj)) => {
                    let ours = (&p.tgt, j, p.article);
                    let theirs = (&b.tgt, *bj, b.article);
                    p.score > b.score || (p.score == b.score && ours < theirs)
                }
            };
            if replace {
                best.insert(p.src.clone(), (p, j));
            }
        }
        kept = best.into_values().collect();
    }
    kept.into_iter().map(|(p, _)| p).collect()
}

const HAN: [char; 14] = [
    '香', '港', '係', '是', '一', '個', '城', '市', '人', '口', '好', '多', '年', '的',
];

fn random_sentence(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(2..10);
    let mut s = String::new();
    for _ in 0..len {
        if rng.gen_bool(0.1) {
            s.push_str(&rng.gen_range(1800..2030).to_string());
        } else {
            s.push(HAN[rng.gen_range(0..HAN.len())]);
        }
    }
    s.push(TERMINATOR);
    s
}

fn mutate(rng: &mut ChaCha8Rng, s: &str) -> String {
    let mut chars: Vec<char> = s.chars().collect();
    let body = chars.len() - 1;
    match rng.gen_range(0..5) {
        0 => {}
        1 => {
            let i = rng.gen_range(0..body);
            chars[i] = HAN[rng.gen_range(0..HAN.len())];
        }
        2 => chars.insert(rng.gen_range(0..body), HAN[rng.gen_range(0..HAN.len())]),
        3 => {
            if let Some(i) = chars.iter().position(|c| c.is_ascii_digit()) {
                chars[i] = if chars[i] == '9' {
                    '0'
                } else {
                    ((chars[i] as u8) + 1) as char
                };
            }
        }
        _ => {
            if body > 1 {
                chars.remove(body - 1);
            }
        }
    }
    if chars.last() != Some(&TERMINATOR) {
        chars.push(TERMINATOR);
    }
    chars.into_iter().collect()
}

/// A random article pair with up to `max_sentences` sentences per side; the
/// target side mixes edited copies of source sentences with unrelated ones.
pub fn random_article(rng: &mut ChaCha8Rng, max_sentences: usize) -> (String, String) {
    let n_src = rng.gen_range(0..=max_sentences);
    let n_tgt = rng.gen_range(0..=max_sentences);
    let src: Vec<String> = (0..n_src).map(|_| random_sentence(rng)).collect();
    let tgt: Vec<String> = (0..n_tgt)
        .map(|_| {
            if !src.is_empty() && rng.gen_bool(0.6) {
                let base = &src[rng.gen_range(0..src.len())];
                mutate(rng, base)
            } else {
                random_sentence(rng)
            }
        })
        .collect();
    (src.concat(), tgt.concat())
}

fn ngram_count(tokens: &[String], gram: &[String]) -> usize {
    if tokens.len() < gram.len() {
        return 0;
    }
    (0..=tokens.len() - gram.len())
        .filter(|&i| tokens[i..i + gram.len()] == *gram)
        .count()
}

/// BLEU straight from the definition: product of precisions to the 1/4,
/// vacuous orders counted as 1, no smoothing.
pub fn bleu(hyps: &[Vec<String>], refs: &[Vec<String>]) -> f64 {
    let mut product = 1.0f64;
    let mut zero = false;
    for n in 1..=4 {
        let (mut m, mut t) = (0usize, 0usize);
        for (h, r) in hyps.iter().zip(refs) {
            if h.len() < n {
                continue;
            }
            let mut seen: Vec<&[String]> = Vec::new();
            for i in 0..=h.len() - n {
                let gram = &h[i..i + n];
                if seen.contains(&gram) {
                    continue;
                }
                seen.push(gram);
                let hc = ngram_count(h, gram);
                m += hc.min(ngram_count(r, gram));
                t += hc;
            }
        }
        if t > 0 {
            if m == 0 {
                zero = true;
            }
            product *= m as f64 / t as f64;
        }
    }
    let c: usize = hyps.iter().map(Vec::len).sum();
    let r: usize = refs.iter().map(Vec::len).sum();
    let bp = if c > r {
        1.0
    } else if c == 0 {
        if r == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - r as f64 / c as f64).exp()
    };
    if zero {
        0.0
    } else {
        100.0 * bp * product.powf(0.25)
    }
}
