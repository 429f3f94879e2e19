mod support;

use cantomine::embed::{Embedder, EmbedderSpec};
use cantomine::mining::{
    mine_corpus, threshold_sweep, DedupScope, MiningConfig, ScoredSentencePair,
};
use cantomine::wiki::{ArticlePair, CleanArticle, LangLink};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use support::oracle::{self, OracleConfig, OraclePair};

const DIM: usize = 1 << 12;

fn article(lang: &str, title: &str, text: &str) -> CleanArticle {
    CleanArticle {
        lang: lang.into(),
        id: None,
        title: title.into(),
        paragraphs: if text.is_empty() {
            vec![]
        } else {
            vec![text.into()]
        },
    }
}

fn build(texts: &[(String, String)]) -> Vec<ArticlePair> {
    texts
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            let title = format!("t{i:04}");
            ArticlePair {
                src: article("zh", &title, s),
                tgt: article("zh-yue", &title, t),
                link: LangLink {
                    from_title: title.clone(),
                    to_title: title,
                },
            }
        })
        .collect()
}

fn random_texts(seed: u64, articles: usize) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..articles)
        .map(|_| oracle::random_article(&mut rng, 8))
        .collect()
}

fn embedder() -> Embedder<f64> {
    EmbedderSpec::HashNgram {
        n_min: 1,
        n_max: 3,
        dim: DIM,
    }
    .build()
    .unwrap()
}

fn as_oracle(mined: &[ScoredSentencePair<f64>]) -> Vec<OraclePair> {
    mined
        .iter()
        .map(|p| OraclePair {
            article: p.article_pair_id,
            src: p.src.text.clone(),
            tgt: p.tgt.text.clone(),
            score: p.score,
        })
        .collect()
}

fn config(threshold: f64, digit_filter: bool, scope: DedupScope) -> MiningConfig<f64> {
    MiningConfig {
        threshold,
        digit_filter,
        dedup_scope: scope,
        min_tokens: 0,
    }
}

fn oracle_config(threshold: f64, digit_filter: bool, global: bool) -> OracleConfig {
    OracleConfig {
        threshold,
        digit_filter,
        global,
        n_min: 1,
        n_max: 3,
        dim: DIM as u64,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_oracle(seed in any::<u64>(), articles in 1usize..8, threshold in 0.3f64..0.99,
                          digit_filter in any::<bool>(), global in any::<bool>()) {
        let texts = random_texts(seed, articles);
        let scope = if global { DedupScope::Global } else { DedupScope::PerArticlePair };
        let mined = mine_corpus(&build(&texts), &embedder(), &config(threshold, digit_filter, scope), 1).unwrap();
        let expected = oracle::mine(&texts, oracle_config(threshold, digit_filter, global));
        prop_assert_eq!(mined.len(), expected.len());
        prop_assert_eq!(oracle::key_set(&as_oracle(&mined)), oracle::key_set(&expected));
    }

    #[test]
    fn mined_pairs_hold_invariants(seed in any::<u64>(), articles in 1usize..8, threshold in 0.3f64..0.99) {
        let texts = random_texts(seed, articles);
        let mined = mine_corpus(&build(&texts), &embedder(), &config(threshold, true, DedupScope::PerArticlePair), 1).unwrap();
        let mut seen = HashSet::new();
        for p in &mined {
            prop_assert!(p.score >= threshold);
            prop_assert!(p.score <= 1.0);
            prop_assert_ne!(&p.src.text, &p.tgt.text);
            prop_assert!(seen.insert((p.article_pair_id, p.src.text.clone())));
            prop_assert!(cantomine::mining::digits_consistent(&p.src.text, &p.tgt.text));
        }
    }

    #[test]
    fn higher_threshold_mines_a_subset(seed in any::<u64>(), articles in 1usize..8,
                                       low in 0.3f64..0.9, step in 0.0f64..0.1) {
        let texts = random_texts(seed, articles);
        let pairs = build(&texts);
        let mine_at = |t| {
            let mined = mine_corpus(&pairs, &embedder(), &config(t, true, DedupScope::PerArticlePair), 1).unwrap();
            mined.iter().map(|p| (p.article_pair_id, p.src.text.clone(), p.tgt.text.clone())).collect::<HashSet<_>>()
        };
        let loose = mine_at(low);
        let strict = mine_at(low + step);
        prop_assert!(strict.is_subset(&loose));
    }

    #[test]
    fn worker_count_does_not_change_output(seed in any::<u64>(), articles in 1usize..12, workers in 2usize..6) {
        let texts = random_texts(seed, articles);
        let pairs = build(&texts);
        let cfg = config(0.5, true, DedupScope::Global);
        let serial = mine_corpus(&pairs, &embedder(), &cfg, 1).unwrap();
        let parallel = mine_corpus(&pairs, &embedder(), &cfg, workers).unwrap();
        prop_assert_eq!(serial, parallel);
    }
}

#[test]
fn sweep_counts_match_oracle() {
    let texts = random_texts(11, 20);
    let pairs = build(&texts);
    let thresholds = [0.5, 0.7, 0.8, 0.9, 0.95];
    let rows = threshold_sweep(
        &pairs,
        &embedder(),
        &MiningConfig::default(),
        &thresholds,
        3,
    )
    .unwrap();
    let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
    let expected: Vec<usize> = thresholds
        .iter()
        .map(|&t| oracle::mine(&texts, oracle_config(t, false, false)).len())
        .collect();
    assert_eq!(counts, expected);
    assert!(counts.windows(2).all(|w| w[0] >= w[1]));
    assert!(counts[0] > 0);
}

#[test]
fn f32_mining_runs() {
    let texts = random_texts(5, 6);
    let e: Embedder<f32> = EmbedderSpec::HashNgram {
        n_min: 1,
        n_max: 3,
        dim: DIM,
    }
    .build()
    .unwrap();
    let cfg = MiningConfig::<f32> {
        threshold: 0.6,
        ..Default::default()
    };
    let mined = mine_corpus(&build(&texts), &e, &cfg, 2).unwrap();
    assert!(mined.iter().all(|p| p.score >= 0.6));
}
