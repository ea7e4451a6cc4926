//! Surface normalization for the similarity features: casefolding plus
//! punctuation and diacritics removal.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Lowercases, canonically decomposes, strips combining marks, removes
/// punctuation, and collapses whitespace. Idempotent.
pub fn normalize_for_surface(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.to_lowercase().nfd() {
        if is_combining_mark(c) {
            continue;
        }
        if c.is_whitespace() {
            pending_space = !out.is_empty();
        } else if c.is_alphanumeric() {
            if pending_space {
                out.push(' ');
                pending_space = false;
            }
            out.push(c);
        }
        // anything else is punctuation or a symbol: dropped
    }
    out
}
