use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::text::normalize;

use super::RawPage;

/// Markup-free article text in one language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanArticle {
    pub lang: String,
    /// Page id in the originating dump; resolves SQL langlinks, which key on it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u64>,
    pub title: String,
    pub paragraphs: Vec<String>,
}

/// Substrings that must never survive cleaning.
pub const MARKUP_RESIDUE: [&str; 5] = ["{{", "}}", "[[", "]]", "<ref"];

static TAG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"</?[A-Za-z][^<>]*>").unwrap());

/// True if `s` contains template, link, ref or tag markup.
pub fn has_markup_residue(s: &str) -> bool {
    MARKUP_RESIDUE.iter().any(|m| s.contains(m))
        || s.to_ascii_lowercase().contains("<ref")
        || TAG.is_match(s)
}

/// Turns a page into plain paragraphs. Redirects, pages outside the main
/// namespace and pages with nothing left after cleaning yield `None`.
pub fn clean_wikitext(page: &RawPage, lang: &str) -> Option<CleanArticle> {
    if page.is_redirect || page.namespace != 0 {
        return None;
    }
    let paragraphs = clean_text(&page.wikitext);
    if paragraphs.is_empty() {
        return None;
    }
    Some(CleanArticle {
        lang: lang.to_owned(),
        id: Some(page.page_id),
        title: page.title.clone(),
        paragraphs,
    })
}

/// Cleans raw wikitext into normalized, nonempty paragraphs.
///
/// Templates and tables are deleted (nested ones too), `<ref>` and other
/// non-prose element bodies are deleted, remaining tags are dropped while
/// their content is kept, `[[A|B]]` becomes `B`, `[[A]]` becomes `A`,
/// `[url label]` becomes `label`, headings are deleted and bold/italic quotes
/// stripped. Markup that never closes is deleted up to the end of its
/// paragraph. Paragraphs are separated by blank lines.
pub fn clean_text(wikitext: &str) -> Vec<String> {
    let mut text = decode_entities(&wikitext.replace("\r\n", "\n"));
    text = strip_comments(&text);
    text = strip_tag_bodies(&text);
    text = strip_balanced(&text, "{{", "}}");
    text = strip_tables(&text);
    text = TAG.replace_all(&text, "").into_owned();
    text = rewrite_links(&text);
    text = clean_lines(&text);
    split_paragraphs(&text)
}

/// End of the paragraph containing byte `from`: the start of the next blank
/// line, or the end of the text.
fn paragraph_end(text: &str, from: usize) -> usize {
    static BLANK: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\n[ \t]*\n").unwrap());
    BLANK
        .find(&text[from..])
        .map_or(text.len(), |m| from + m.start())
}

fn next_char_len(text: &str, at: usize) -> usize {
    text[at..].chars().next().map_or(1, char::len_utf8)
}

fn decode_entities(text: &str) -> String {
    static ENTITY: LazyLock<Regex> = LazyLock::new(|| {
        Regex::new(r"&(#[0-9]{1,7}|#[xX][0-9a-fA-F]{1,6}|[a-zA-Z]{2,8});").unwrap()
    });
    ENTITY
        .replace_all(text, |caps: &regex::Captures| {
            let body = &caps[1];
            let decoded =
                if let Some(hex) = body.strip_prefix("#x").or_else(|| body.strip_prefix("#X")) {
                    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
                } else if let Some(dec) = body.strip_prefix('#') {
                    dec.parse::<u32>().ok().and_then(char::from_u32)
                } else {
                    match body {
                        "nbsp" | "ensp" | "emsp" | "thinsp" => Some(' '),
                        "amp" => Some('&'),
                        "lt" => Some('<'),
                        "gt" => Some('>'),
                        "quot" => Some('"'),
                        "apos" => Some('\''),
                        "ndash" => Some('–'),
                        "mdash" => Some('—'),
                        "middot" => Some('·'),
                        "hellip" => Some('…'),
                        _ => None,
                    }
                };
            decoded.map_or_else(|| caps[0].to_owned(), String::from)
        })
        .into_owned()
}

fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while let Some(rel) = text[i..].find("<!--") {
        let start = i + rel;
        out.push_str(&text[i..start]);
        i = match text[start + 4..].find("-->") {
            Some(end) => start + 4 + end + 3,
            None => paragraph_end(text, start),
        };
    }
    out.push_str(&text[i..]);
    out
}

/// Elements whose content is not running prose.
const DROPPED_ELEMENTS: &str =
    "ref|references|gallery|math|chem|ce|timeline|score|syntaxhighlight|source|graph|mapframe|maplink|imagemap|templatedata|templatestyles|inputbox|categorytree";

fn strip_tag_bodies(text: &str) -> String {
    static OPEN: LazyLock<Regex> =
        LazyLock::new(|| Regex::new(&format!(r"(?i)<({DROPPED_ELEMENTS})(\s[^<>]*)?>")).unwrap());
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while let Some(m) = OPEN.captures_at(text, i) {
        let whole = m.get(0).unwrap();
        out.push_str(&text[i..whole.start()]);
        if whole.as_str().ends_with("/>") {
            i = whole.end();
            continue;
        }
        let name = m[1].to_ascii_lowercase();
        let close = Regex::new(&format!(r"(?i)</{}\s*>", regex::escape(&name))).unwrap();
        i = match close.find_at(text, whole.end()) {
            Some(end) => end.end(),
            None => paragraph_end(text, whole.start()),
        };
    }
    out.push_str(&text[i..]);
    out
}

/// Deletes `open ... close` spans, honouring nesting. An opener without a
/// matching closer is deleted together with the rest of its paragraph.
fn strip_balanced(text: &str, open: &str, close: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        if !text[i..].starts_with(open) {
            let n = next_char_len(text, i);
            out.push_str(&text[i..i + n]);
            i += n;
            continue;
        }
        i = match matching_close(text, i, open, close) {
            Some(end) => end,
            None => paragraph_end(text, i),
        };
    }
    out
}

/// Byte index just past the closer matching the opener at `start`.
fn matching_close(text: &str, start: usize, open: &str, close: &str) -> Option<usize> {
    let mut depth = 0usize;
    let mut j = start;
    while j < text.len() {
        if text[j..].starts_with(open) {
            depth += 1;
            j += open.len();
        } else if text[j..].starts_with(close) {
            depth -= 1;
            j += close.len();
            if depth == 0 {
                return Some(j);
            }
        } else {
            j += next_char_len(text, j);
        }
    }
    None
}

/// Deletes `{| ... |}` tables line by line, leaving blank lines behind.
fn strip_tables(text: &str) -> String {
    let lines: Vec<&str> = text.split('\n').collect();
    let opens = |l: &str| l.trim_start().starts_with("{|");
    let closes = |l: &str| l.trim_start().starts_with("|}");
    let mut keep = vec![true; lines.len()];
    let mut i = 0;
    while i < lines.len() {
        if !opens(lines[i]) {
            i += 1;
            continue;
        }
        let mut depth = 0usize;
        let mut end = None;
        for (j, line) in lines.iter().enumerate().skip(i) {
            if opens(line) {
                depth += 1;
            } else if closes(line) {
                depth -= 1;
                if depth == 0 {
                    end = Some(j);
                    break;
                }
            }
        }
        let end = end.unwrap_or_else(|| {
            (i + 1..lines.len())
                .find(|&j| lines[j].trim().is_empty())
                .map_or(lines.len() - 1, |j| j - 1)
        });
        for k in keep.iter_mut().take(end + 1).skip(i) {
            *k = false;
        }
        i = end + 1;
    }
    lines
        .iter()
        .zip(keep)
        .map(|(l, k)| if k { *l } else { "" })
        .collect::<Vec<_>>()
        .join("\n")
}

fn is_dropped_link_target(target: &str) -> bool {
    static NAMESPACED: LazyLock<Regex> = LazyLock::new(|| {
        Regex::new(
            r"(?i)^\s*:?\s*(file|image|media|category|檔案|档案|文件|圖像|图像|圖片|图片|媒體|媒体|分類|分类)\s*:",
        )
        .unwrap()
    });
    static INTERWIKI: LazyLock<Regex> =
        LazyLock::new(|| Regex::new(r"^[a-z]{2,3}(-[a-z]+)*:").unwrap());
    NAMESPACED.is_match(target) || INTERWIKI.is_match(target)
}

/// Splits on `|` outside nested `[[...]]`.
fn split_top_level_pipes(inner: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut last = 0;
    let mut j = 0;
    while j < inner.len() {
        if inner[j..].starts_with("[[") {
            depth += 1;
            j += 2;
        } else if inner[j..].starts_with("]]") {
            depth = depth.saturating_sub(1);
            j += 2;
        } else {
            if depth == 0 && inner.as_bytes()[j] == b'|' {
                parts.push(&inner[last..j]);
                last = j + 1;
            }
            j += next_char_len(inner, j);
        }
    }
    parts.push(&inner[last..]);
    parts
}

fn internal_link_text(inner: &str) -> String {
    let parts = split_top_level_pipes(inner);
    let target = parts[0];
    if is_dropped_link_target(target) {
        return String::new();
    }
    let label = if parts.len() > 1 {
        let rest = &inner[target.len() + 1..];
        if rest.trim().is_empty() {
            target
        } else {
            rest
        }
    } else {
        target
    };
    rewrite_links(label.trim_start_matches(':'))
}

fn external_link_at(text: &str, i: usize) -> bool {
    let rest = &text[i + 1..];
    ["http://", "https://", "ftp://", "//", "mailto:"]
        .iter()
        .any(|p| {
            rest.get(..p.len())
                .is_some_and(|head| head.eq_ignore_ascii_case(p))
        })
}

fn rewrite_links(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        if text[i..].starts_with("[[") {
            match matching_close(text, i, "[[", "]]") {
                Some(end) => {
                    out.push_str(&internal_link_text(&text[i + 2..end - 2]));
                    i = end;
                }
                None => i = paragraph_end(text, i),
            }
        } else if text.as_bytes()[i] == b'[' && external_link_at(text, i) {
            let line_end = text[i..].find('\n').map_or(text.len(), |n| i + n);
            match text[i..line_end].find(']') {
                Some(close) => {
                    let inner = &text[i + 1..i + close];
                    if let Some((_, label)) = inner.split_once(char::is_whitespace) {
                        out.push_str(label.trim());
                    }
                    i += close + 1;
                }
                None => i = paragraph_end(text, i),
            }
        } else {
            let n = next_char_len(text, i);
            out.push_str(&text[i..i + n]);
            i += n;
        }
    }
    out
}

fn clean_lines(text: &str) -> String {
    static MAGIC: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"__[A-Z_]+__").unwrap());
    static QUOTES: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"'{2,}").unwrap());
    static RULE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^-{4,}\s*$").unwrap());
    let mut out = Vec::new();
    for line in text.split('\n') {
        let trimmed = line.trim();
        if trimmed.len() >= 2 && trimmed.starts_with('=') && trimmed.ends_with('=') {
            out.push(String::new());
            continue;
        }
        if RULE.is_match(trimmed) {
            out.push(String::new());
            continue;
        }
        let body = trimmed.trim_start_matches(['*', '#', ':', ';']).trim();
        let body = MAGIC.replace_all(body, "");
        let body = QUOTES.replace_all(&body, "");
        out.push(scrub_residue(&body));
    }
    out.join("\n")
}

/// Removes leftover markup fragments until none remain.
fn scrub_residue(s: &str) -> String {
    static REF: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)<ref").unwrap());
    let mut cur = s.to_owned();
    loop {
        let mut next = cur.clone();
        for m in MARKUP_RESIDUE {
            next = next.replace(m, "");
        }
        next = REF.replace_all(&next, "").into_owned();
        next = TAG.replace_all(&next, "").into_owned();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn scrub_paragraph(raw: &str) -> String {
    let mut p = normalize(raw);
    loop {
        let next = normalize(&scrub_residue(&p));
        if next == p {
            return p;
        }
        p = next;
    }
}

fn split_paragraphs(text: &str) -> Vec<String> {
    let mut paragraphs = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.split('\n').chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !current.is_empty() {
                let p = scrub_paragraph(&current.join("\n"));
                if !p.is_empty() {
                    paragraphs.push(p);
                }
                current.clear();
            }
        } else {
            current.push(line);
        }
    }
    paragraphs
}
