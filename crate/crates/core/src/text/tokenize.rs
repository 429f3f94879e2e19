/// Tokens of one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for TokenSequence {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self {
            tokens: iter.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenizeOptions {
    pub lowercase: bool,
}

/// CJK unified ideographs and their extensions and compatibility blocks.
pub fn is_han(c: char) -> bool {
    matches!(c as u32,
        0x3007
        | 0x3400..=0x4DBF
        | 0x4E00..=0x9FFF
        | 0xF900..=0xFAFF
        | 0x20000..=0x2EBEF
        | 0x2F800..=0x2FA1F
        | 0x30000..=0x3134F)
}

fn is_latin_letter(c: char) -> bool {
    c.is_alphabetic()
        && (matches!(c as u32, 0..=0x024F | 0x1E00..=0x1EFF | 0xFF21..=0xFF3A | 0xFF41..=0xFF5A))
        && !is_han(c)
}

fn is_digit(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, '\u{FF10}'..='\u{FF19}')
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Latin,
    Digit,
    Single,
    Space,
}

fn class_of(c: char) -> Class {
    if c.is_whitespace() {
        Class::Space
    } else if is_latin_letter(c) {
        Class::Latin
    } else if is_digit(c) {
        Class::Digit
    } else {
        Class::Single
    }
}

/// Character-level tokenization: every Han character (and every other symbol)
/// is its own token, runs of Latin letters or of digits are one token each,
/// and whitespace only separates.
pub fn tokenize_for_bleu(sentence: &str) -> TokenSequence {
    tokenize_with(sentence, TokenizeOptions::default())
}

pub fn tokenize_with(sentence: &str, options: TokenizeOptions) -> TokenSequence {
    let mut tokens = Vec::new();
    let mut run = String::new();
    let mut run_class = Class::Space;
    for c in sentence.chars() {
        let class = class_of(c);
        let extends = matches!(class, Class::Latin | Class::Digit) && class == run_class;
        if !extends && !run.is_empty() {
            tokens.push(std::mem::take(&mut run));
        }
        run_class = class;
        match class {
            Class::Space => {}
            Class::Single => tokens.push(c.to_string()),
            Class::Latin | Class::Digit => run.push(c),
        }
    }
    if !run.is_empty() {
        tokens.push(run);
    }
    if options.lowercase {
        for t in &mut tokens {
            *t = t.to_lowercase();
        }
    }
    TokenSequence { tokens }
}
