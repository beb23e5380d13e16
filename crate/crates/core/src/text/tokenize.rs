use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenizeMode {
    /// Split on runs of whitespace only.
    Whitespace,
    /// Whitespace split, then strip punctuation characters; case is kept.
    English,
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c, '\u{2010}'..='\u{2027}' | '\u{2030}'..='\u{205E}' | '«' | '»' | '¡' | '¿' | '´')
}

pub fn tokenize(text: &str, mode: TokenizeMode) -> Vec<String> {
    let words = text.split_whitespace();
    match mode {
        TokenizeMode::Whitespace => words.map(str::to_owned).collect(),
        TokenizeMode::English => words
            .map(|w| w.chars().filter(|&c| !is_punctuation(c)).collect::<String>())
            .filter(|w| !w.is_empty())
            .collect(),
    }
}
