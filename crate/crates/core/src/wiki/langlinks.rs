use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Interlanguage link from a target-language title to its source-language
/// counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LangLink {
    pub from_title: String,
    pub to_title: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkFormat {
    Tsv,
    SqlDump,
}

impl std::str::FromStr for LinkFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(LinkFormat::Tsv),
            "sql" | "sql-dump" => Ok(LinkFormat::SqlDump),
            other => Err(format!("unknown link format `{other}`")),
        }
    }
}

/// Options for reading link files.
#[derive(Debug, Clone, Default)]
pub struct LinkOptions {
    /// Swap the two TSV columns, for files written source -> target.
    pub reverse: bool,
    /// Language prefix kept from an SQL dump (`ll_lang`), e.g. `zh`.
    pub source_lang: String,
    /// Page id -> title of the target edition; SQL dumps key links on page id.
    pub page_titles: HashMap<u64, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadedLinks {
    pub links: Vec<LangLink>,
    /// Lines or tuples that could not be parsed (or, for SQL, resolved).
    pub malformed: usize,
    pub duplicates: usize,
}

/// Reads links. Malformed records are skipped, logged and counted; repeated
/// `from_title`s keep their first occurrence.
pub fn load_langlinks<R: BufRead>(
    input: R,
    format: LinkFormat,
    options: &LinkOptions,
) -> Result<LoadedLinks> {
    let mut raw = Vec::new();
    let mut malformed = 0;
    match format {
        LinkFormat::Tsv => {
            for (idx, line) in input.lines().enumerate() {
                let line = line?;
                let line = line.strip_suffix('\r').unwrap_or(&line);
                if line.trim().is_empty() {
                    continue;
                }
                let mut fields = line.split('\t');
                match (fields.next(), fields.next(), fields.next()) {
                    (Some(a), Some(b), None) if !a.trim().is_empty() && !b.trim().is_empty() => {
                        let (from, to) = if options.reverse { (b, a) } else { (a, b) };
                        raw.push(LangLink {
                            from_title: from.trim().to_owned(),
                            to_title: to.trim().to_owned(),
                        });
                    }
                    _ => {
                        warn!("links line {}: expected `from<TAB>to`, skipped", idx + 1);
                        malformed += 1;
                    }
                }
            }
        }
        LinkFormat::SqlDump => {
            for (idx, line) in input.lines().enumerate() {
                let line = line?;
                let Some(values) = insert_values(&line) else {
                    continue;
                };
                let (tuples, bad) = parse_tuples(values);
                if bad > 0 {
                    warn!("links line {}: {bad} malformed tuple(s) skipped", idx + 1);
                }
                malformed += bad;
                for tuple in tuples {
                    match tuple.as_slice() {
                        [SqlValue::Int(from), SqlValue::Str(lang), SqlValue::Str(title)] => {
                            if *lang != options.source_lang || title.trim().is_empty() {
                                continue;
                            }
                            match options.page_titles.get(&(*from as u64)) {
                                Some(from_title) => raw.push(LangLink {
                                    from_title: from_title.clone(),
                                    to_title: title.trim().to_owned(),
                                }),
                                None => malformed += 1,
                            }
                        }
                        _ => malformed += 1,
                    }
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let mut links = Vec::with_capacity(raw.len());
    let mut duplicates = 0;
    for link in raw {
        if seen.insert(link.from_title.clone()) {
            links.push(link);
        } else {
            duplicates += 1;
        }
    }
    if malformed > 0 {
        warn!("{malformed} malformed link record(s) skipped");
    }
    Ok(LoadedLinks {
        links,
        malformed,
        duplicates,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum SqlValue {
    Int(i64),
    Str(String),
    Other,
}

fn insert_values(line: &str) -> Option<&str> {
    let rest = line.strip_prefix("INSERT INTO")?;
    let at = rest.find("VALUES")?;
    Some(rest[at + "VALUES".len()..].trim())
}

/// Parses `(..),(..);`. Returns the well-formed tuples and the number of
/// tuples that had to be skipped.
fn parse_tuples(s: &str) -> (Vec<Vec<SqlValue>>, usize) {
    let bytes = s.as_bytes();
    let mut tuples = Vec::new();
    let mut bad = 0;
    let mut i = 0;
    loop {
        while i < bytes.len() && matches!(bytes[i], b' ' | b',' | b'\n' | b'\t') {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] == b';' {
            break;
        }
        if bytes[i] != b'(' {
            bad += 1;
            break;
        }
        match parse_tuple(s, i + 1) {
            Some((tuple, next)) => {
                tuples.push(tuple);
                i = next;
            }
            None => {
                bad += 1;
                match skip_tuple(s, i + 1) {
                    Some(next) => i = next,
                    None => break,
                }
            }
        }
    }
    (tuples, bad)
}

fn parse_tuple(s: &str, mut i: usize) -> Option<(Vec<SqlValue>, usize)> {
    let bytes = s.as_bytes();
    let mut values = Vec::new();
    loop {
        while i < bytes.len() && bytes[i] == b' ' {
            i += 1;
        }
        let b = *bytes.get(i)?;
        if b == b'\'' {
            let (value, next) = parse_string(s, i + 1)?;
            values.push(SqlValue::Str(value));
            i = next;
        } else {
            let end = i + s[i..].find([',', ')'])?;
            let token = s[i..end].trim();
            if token.is_empty() || token.contains('\'') {
                return None;
            }
            values.push(token.parse().map_or(SqlValue::Other, SqlValue::Int));
            i = end;
        }
        match *bytes.get(i)? {
            b',' => i += 1,
            b')' => return Some((values, i + 1)),
            _ => return None,
        }
    }
}

/// MySQL string literal body starting after the opening quote.
fn parse_string(s: &str, start: usize) -> Option<(String, usize)> {
    let mut out = String::new();
    let mut chars = s[start..].char_indices();
    while let Some((off, c)) = chars.next() {
        match c {
            '\\' => {
                let (_, e) = chars.next()?;
                out.push(match e {
                    'n' => '\n',
                    'r' => '\r',
                    't' => '\t',
                    '0' => '\0',
                    'Z' => '\u{1a}',
                    other => other,
                });
            }
            '\'' => {
                if s[start + off + 1..].starts_with('\'') {
                    chars.next();
                    out.push('\'');
                } else {
                    return Some((out, start + off + 1));
                }
            }
            other => out.push(other),
        }
    }
    None
}

/// Index just past the `)` that ends the tuple starting at `i`, honouring
/// quotes.
fn skip_tuple(s: &str, i: usize) -> Option<usize> {
    let mut in_str = false;
    let mut escaped = false;
    for (off, c) in s[i..].char_indices() {
        match (in_str, escaped, c) {
            (true, true, _) => escaped = false,
            (true, false, '\\') => escaped = true,
            (true, false, '\'') => in_str = false,
            (false, _, '\'') => in_str = true,
            (false, _, ')') => return Some(i + off + 1),
            _ => {}
        }
    }
    None
}
