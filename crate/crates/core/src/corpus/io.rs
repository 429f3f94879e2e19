use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    #[default]
    Tsv,
    Jsonl,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(CorpusFormat::Tsv),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            other => Err(format!("unknown corpus format `{other}`")),
        }
    }
}

/// Escapes `\`, tab, newline and carriage return so a cell fits on one TSV
/// line.
pub fn escape_cell(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape_cell`]. Unknown escapes are kept verbatim.
pub fn unescape_cell(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PairRecord {
    src: String,
    tgt: String,
}

pub fn write_corpus<W: Write>(pairs: &[Pair], format: CorpusFormat, mut out: W) -> Result<()> {
    for (src, tgt) in pairs {
        match format {
            CorpusFormat::Tsv => writeln!(out, "{}\t{}", escape_cell(src), escape_cell(tgt))?,
            CorpusFormat::Jsonl => {
                let record = PairRecord {
                    src: src.clone(),
                    tgt: tgt.clone(),
                };
                serde_json::to_writer(&mut out, &record)?;
                out.write_all(b"\n")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads pairs. TSV lines need at least two columns; further columns (as in
/// mined output) are ignored.
pub fn read_corpus<R: BufRead>(input: R, format: CorpusFormat) -> Result<Vec<Pair>> {
    let mut pairs = Vec::new();
    for (idx, line) in input.split(b'\n').enumerate() {
        let line_no = idx + 1;
        let line = String::from_utf8(line?).map_err(|_| Error::Format {
            line: line_no,
            message: "invalid UTF-8".into(),
        })?;
        match format {
            CorpusFormat::Tsv => {
                let mut cells = line.split('\t');
                match (cells.next(), cells.next()) {
                    (Some(src), Some(tgt)) => pairs.push((unescape_cell(src), unescape_cell(tgt))),
                    _ => {
                        return Err(Error::Format {
                            line: line_no,
                            message: "expected `src<TAB>tgt`".into(),
                        })
                    }
                }
            }
            CorpusFormat::Jsonl => {
                let record: PairRecord =
                    serde_json::from_str(&line).map_err(|e| Error::Format {
                        line: line_no,
                        message: e.to_string(),
                    })?;
                pairs.push((record.src, record.tgt));
            }
        }
    }
    Ok(pairs)
}
