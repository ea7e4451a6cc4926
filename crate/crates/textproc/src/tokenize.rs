//! Whitespace tokenization with punctuation split off as single-character
//! tokens.

/// Characters that stay glued to a word: letters, digits, and the Latin
/// combining-mark range so decomposed accents do not split their base.
fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || ('\u{0300}'..='\u{036F}').contains(&c)
}

/// Splits `text` into tokens: maximal runs of word characters, plus one
/// token per punctuation character. Deterministic; empty text gives an
/// empty sequence.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for c in text.chars() {
        if c.is_whitespace() {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
        } else if is_word_char(c) {
            word.push(c);
        } else {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
            tokens.push(c.to_string());
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<String> {
        tokenize(text)
    }

    #[test]
    fn punctuation_splits_off() {
        assert_eq!(toks("Hello, world!"), vec!["Hello", ",", "world", "!"]);
    }

    #[test]
    fn empty_text_empty_sequence() {
        assert!(toks("").is_empty());
    }

    #[test]
    fn whitespace_collapses() {
        assert_eq!(toks("a  b"), vec!["a", "b"]);
        assert_eq!(toks("  a\t\nb "), vec!["a", "b"]);
    }

    #[test]
    fn interior_punctuation() {
        assert_eq!(toks("it's"), vec!["it", "'", "s"]);
        assert_eq!(toks("a1-b2"), vec!["a1", "-", "b2"]);
    }

    #[test]
    fn accents_stay_attached() {
        assert_eq!(toks("Él sí"), vec!["Él", "sí"]);
        // decomposed accent must not split its base letter
        assert_eq!(toks("e\u{301}l"), vec!["e\u{301}l"]);
    }
}
