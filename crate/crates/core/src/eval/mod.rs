//! Corpus BLEU, baseline translators and multi-system reports.

mod bleu;
mod lexicon;
mod report;

pub use bleu::{corpus_bleu, modified_precision, BleuResult, MAX_ORDER};
pub use lexicon::{copy_baseline, lexicon_baseline, Lexicon, DEFAULT_MAPPINGS};
pub use report::{
    evaluate_systems, CopySystem, FileSystem, LexiconSystem, Report, ReportRow, System, TestSet,
};
