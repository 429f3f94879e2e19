use unicode_normalization::UnicodeNormalization;

/// Drops control characters, collapses whitespace runs to one ASCII space,
/// trims, then applies NFC.
pub fn normalize(raw: &str) -> String {
    let mut collapsed = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.chars() {
        if c.is_whitespace() {
            pending_space = true;
        } else if c.is_control() {
            continue;
        } else {
            if pending_space && !collapsed.is_empty() {
                collapsed.push(' ');
            }
            pending_space = false;
            collapsed.push(c);
        }
    }
    collapsed.nfc().collect()
}
