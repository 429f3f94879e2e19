/// Sentence-final punctuation.
pub fn is_terminal_mark(c: char) -> bool {
    matches!(c, '。' | '！' | '？' | '!' | '?' | '；' | ';' | '…')
}

/// Closing quotes and brackets that stay with the sentence they close.
pub fn is_closing_mark(c: char) -> bool {
    matches!(c, '」' | '』' | '”' | '’' | '）' | ')' | ']')
}

/// Splits a paragraph into sentences.
///
/// A sentence ends after a terminal mark together with any terminal marks or
/// closing quotes/brackets that immediately follow it, so `「得！」` and `……`
/// stay whole. Commas never split. Text after the last terminal mark forms a
/// final sentence. Segments are trimmed and empty ones dropped.
pub fn segment(paragraph: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = paragraph.char_indices().peekable();
    while let Some((_, c)) = chars.next() {
        if !is_terminal_mark(c) {
            continue;
        }
        let mut end = paragraph.len();
        while let Some(&(i, next)) = chars.peek() {
            if is_terminal_mark(next) || is_closing_mark(next) {
                chars.next();
            } else {
                end = i;
                break;
            }
        }
        push_trimmed(&mut out, &paragraph[start..end]);
        start = end;
    }
    push_trimmed(&mut out, &paragraph[start..]);
    out
}

fn push_trimmed<'a>(out: &mut Vec<&'a str>, s: &'a str) {
    let s = s.trim();
    if !s.is_empty() {
        out.push(s);
    }
}
