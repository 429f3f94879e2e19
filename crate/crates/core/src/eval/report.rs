use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text::{normalize, tokenize_with, TokenSequence, TokenizeOptions};

use super::{corpus_bleu, BleuResult, Lexicon};

/// A named test set of source sentences and their references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    pub name: String,
    pub sources: Vec<String>,
    pub references: Vec<String>,
}

impl TestSet {
    pub fn from_pairs(name: impl Into<String>, pairs: &[(String, String)]) -> Self {
        Self {
            name: name.into(),
            sources: pairs.iter().map(|p| p.0.clone()).collect(),
            references: pairs.iter().map(|p| p.1.clone()).collect(),
        }
    }
}

/// Something that produces one hypothesis per test sentence.
pub trait System: Sync {
    fn name(&self) -> &str;
    fn translate(&self, set: &TestSet) -> Result<Vec<String>>;
}

pub struct CopySystem;

impl System for CopySystem {
    fn name(&self) -> &str {
        "copy"
    }

    fn translate(&self, set: &TestSet) -> Result<Vec<String>> {
        Ok(super::copy_baseline(&set.sources))
    }
}

pub struct LexiconSystem {
    pub name: String,
    pub lexicon: Lexicon,
}

impl System for LexiconSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn translate(&self, set: &TestSet) -> Result<Vec<String>> {
        Ok(set
            .sources
            .iter()
            .map(|s| self.lexicon.translate(s))
            .collect())
    }
}

/// Reads precomputed hypotheses from `<dir>/<test set>.<extension>`, one
/// sentence per line.
pub struct FileSystem {
    pub name: String,
    pub dir: PathBuf,
    pub extension: String,
}

impl System for FileSystem {
    fn name(&self) -> &str {
        &self.name
    }

    fn translate(&self, set: &TestSet) -> Result<Vec<String>> {
        let path = self.dir.join(format!("{}.{}", set.name, self.extension));
        BufReader::new(File::open(path)?)
            .lines()
            .map(|l| l.map_err(Error::from))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow<T> {
    pub test_set: String,
    /// One result per system, in system order.
    pub results: Vec<BleuResult<T>>,
    /// Systems sharing the highest two-decimal score.
    pub best: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report<T> {
    pub systems: Vec<String>,
    pub rows: Vec<ReportRow<T>>,
}

fn tokens(lines: &[String], options: TokenizeOptions) -> Vec<TokenSequence> {
    lines
        .iter()
        .map(|l| tokenize_with(&normalize(l), options))
        .collect()
}

/// Scores every system on every test set.
pub fn evaluate_systems<T: Scalar>(
    test_sets: &[TestSet],
    systems: &[&dyn System],
    options: TokenizeOptions,
) -> Result<Report<T>> {
    let mut rows = Vec::with_capacity(test_sets.len());
    for set in test_sets {
        let refs = tokens(&set.references, options);
        let mut results = Vec::with_capacity(systems.len());
        for system in systems {
            let hyps = system.translate(set)?;
            if hyps.len() != set.sources.len() {
                return Err(Error::LengthMismatch {
                    system: system.name().to_owned(),
                    set: set.name.clone(),
                    expected: set.sources.len(),
                    got: hyps.len(),
                });
            }
            results.push(corpus_bleu::<T>(&tokens(&hyps, options), &refs)?);
        }
        let shown: Vec<String> = results.iter().map(BleuResult::display).collect();
        let top = results
            .iter()
            .map(|r| r.bleu)
            .fold(None, |acc: Option<T>, b| Some(acc.map_or(b, |a| a.max(b))));
        let top_shown = top.map(|t| format!("{t:.2}"));
        let best = shown
            .iter()
            .map(|s| Some(s) == top_shown.as_ref())
            .collect();
        rows.push(ReportRow {
            test_set: set.name.clone(),
            results,
            best,
        });
    }
    Ok(Report {
        systems: systems.iter().map(|s| s.name().to_owned()).collect(),
        rows,
    })
}

/// Terminal column width: wide East Asian characters take two cells.
fn display_width(s: &str) -> usize {
    s.chars()
        .map(|c| match c as u32 {
            0x1100..=0x115F
            | 0x2E80..=0xA4CF
            | 0xAC00..=0xD7A3
            | 0xF900..=0xFAFF
            | 0xFE30..=0xFE4F
            | 0xFF00..=0xFF60
            | 0xFFE0..=0xFFE6
            | 0x20000..=0x3FFFD => 2,
            _ => 1,
        })
        .sum()
}

fn pad(s: &str, width: usize) -> String {
    format!("{s}{}", " ".repeat(width.saturating_sub(display_width(s))))
}

impl<T: Scalar> Report<T> {
    /// `test_set<TAB>system<TAB>bleu` with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("test_set\tsystem\tbleu\n");
        for row in &self.rows {
            for (system, result) in self.systems.iter().zip(&row.results) {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    row.test_set,
                    system,
                    result.display()
                ));
            }
        }
        out
    }

    /// Aligned table; the best score in each row is marked with `*`.
    pub fn to_text(&self) -> String {
        let header: Vec<String> = std::iter::once("Test set".to_owned())
            .chain(self.systems.iter().cloned())
            .collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                std::iter::once(row.test_set.clone())
                    .chain(row.results.iter().zip(&row.best).map(|(r, &best)| {
                        format!("{}{}", r.display(), if best { "*" } else { "" })
                    }))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                std::iter::once(&header)
                    .chain(&body)
                    .map(|r| display_width(&r[c]))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let render = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| pad(c, w))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_owned()
        };
        let mut out = render(&header);
        out.push('\n');
        out.push_str(
            &"-".repeat(widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1)),
        );
        out.push('\n');
        for row in &body {
            out.push_str(&render(row));
            out.push('\n');
        }
        out
    }
}
