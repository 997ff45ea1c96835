//! Whitespace tokenizer with punctuation trimming.

/// Lowercase, split on whitespace, strip leading and trailing ASCII
/// punctuation from each piece. Apostrophes inside a token survive ("I've"
/// becomes "i've"); tokens that trim away entirely are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|piece| {
            let trimmed = piece.trim_matches(|c: char| c.is_ascii_punctuation());
            if trimmed.is_empty() {
                None
            } else {
                Some(trimmed.to_lowercase())
            }
        })
        .collect()
}
