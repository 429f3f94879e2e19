/// Maximal digit runs, with fullwidth digits folded to ASCII.
pub fn digit_runs(text: &str) -> Vec<String> {
    let mut runs = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        let ascii = match c {
            '0'..='9' => Some(c),
            '\u{FF10}'..='\u{FF19}' => char::from_u32(c as u32 - 0xFF10 + '0' as u32),
            _ => None,
        };
        match ascii {
            Some(d) => cur.push(d),
            None if !cur.is_empty() => runs.push(std::mem::take(&mut cur)),
            None => {}
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs
}

/// True when both sides carry the same digit runs in the same order.
pub fn digits_consistent(a: &str, b: &str) -> bool {
    digit_runs(a) == digit_runs(b)
}
