//! Whitespace-and-punctuation tokenization.
//!
//! Rules, applied to each whitespace-separated chunk:
//!
//! 1. Leading `( [ " '` are split off as their own tokens.
//! 2. Trailing `, ; : ! ? ) ] " '` are split off as their own tokens.
//! 3. If what remains is a known abbreviation (case-insensitive, see
//!    [`ABBREVIATIONS`]) it is kept whole, final period included.
//! 4. Otherwise trailing periods are split off one token each.
//!
//! Internal punctuation (`44-year-old`, `3.5`, `don't`) stays inside the token.

/// Abbreviations that keep their periods.
pub const ABBREVIATIONS: &[&str] = &[
    "a.m.", "p.m.", "mr.", "mrs.", "ms.", "dr.", "st.", "jr.", "sr.", "u.s.", "u.k.", "inc.", "co.",
    "corp.", "ltd.", "etc.", "vs.", "no.", "lt.", "sgt.", "capt.", "det.", "gov.", "sen.", "rep.", "jan.",
    "feb.", "aug.", "sept.", "oct.", "nov.", "dec.",
];

/// Abbreviations that also end a sentence when nothing or a capitalized word follows.
pub const SENTENCE_FINAL_ABBREVIATIONS: &[&str] = &["a.m.", "p.m.", "etc.", "u.s.", "u.k.", "inc.", "ltd."];

const LEADING: &[char] = &['(', '[', '"', '\''];
const TRAILING: &[char] = &[',', ';', ':', '!', '?', ')', ']', '"', '\''];

pub fn is_abbreviation(token: &str) -> bool {
    let lower = token.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

pub fn is_punctuation(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_punctuation()) && !is_abbreviation(token)
}

/// Splits text into tokens. Deterministic; punctuation marks are tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        tokenize_chunk(chunk, &mut tokens);
    }
    tokens
}

fn tokenize_chunk(chunk: &str, out: &mut Vec<String>) {
    let mut rest = chunk;
    while let Some(c) = rest.chars().next() {
        if LEADING.contains(&c) && rest.len() > 1 {
            out.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        } else {
            break;
        }
    }

    let mut trailing = Vec::new();
    loop {
        match rest.chars().last() {
            Some(c) if TRAILING.contains(&c) && rest.len() > c.len_utf8() => {
                trailing.push(c.to_string());
                rest = &rest[..rest.len() - c.len_utf8()];
            }
            Some('.') if rest.len() > 1 && !is_abbreviation(rest) => {
                trailing.push(".".to_string());
                rest = &rest[..rest.len() - 1];
            }
            _ => break,
        }
    }

    if !rest.is_empty() {
        out.push(rest.to_string());
    }
    out.extend(trailing.into_iter().rev());
}

/// Groups token indices into sentences. A sentence ends at `.`, `!` or `?`,
/// or after a sentence-final abbreviation ("p.m.") that ends the input or is
/// followed by a capitalized word or a number.
pub fn sentence_spans(tokens: &[String]) -> Vec<std::ops::Range<usize>> {
    let mut spans = Vec::new();
    let mut start = 0;
    for (i, tok) in tokens.iter().enumerate() {
        let ends = match tok.as_str() {
            "." | "!" | "?" => true,
            t if SENTENCE_FINAL_ABBREVIATIONS.contains(&t.to_lowercase().as_str()) => tokens
                .get(i + 1)
                .is_none_or(|next| next.chars().next().is_some_and(|c| c.is_uppercase() || c.is_ascii_digit())),
            _ => false,
        };
        if ends {
            spans.push(start..i + 1);
            start = i + 1;
        }
    }
    if start < tokens.len() {
        spans.push(start..tokens.len());
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_sentence() {
        assert_eq!(tokenize("A woman is killed."), ["A", "woman", "is", "killed", "."]);
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   \n\t").is_empty());
    }

    #[test]
    fn abbreviations_stay_whole() {
        assert_eq!(tokenize("8 p.m. on Friday"), ["8", "p.m.", "on", "Friday"]);
        assert_eq!(tokenize("at 8 P.M., police"), ["at", "8", "P.M.", ",", "police"]);
        assert_eq!(tokenize("Mr. Smith left."), ["Mr.", "Smith", "left", "."]);
    }

    #[test]
    fn punctuation_is_split() {
        assert_eq!(
            tokenize("3 men, who fled (on foot); \"done\"!"),
            ["3", "men", ",", "who", "fled", "(", "on", "foot", ")", ";", "\"", "done", "\"", "!"]
        );
        assert_eq!(tokenize("a 44-year-old woman's 3.5"), ["a", "44-year-old", "woman's", "3.5"]);
    }

    #[test]
    fn lone_punctuation_chunks() {
        assert_eq!(tokenize("a , b ."), ["a", ",", "b", "."]);
    }

    #[test]
    fn sentences_split_after_time_abbreviation() {
        let toks = tokenize("He left at 8 p.m. Police arrived at 9 p.m. on Friday. Done");
        let spans = sentence_spans(&toks);
        let sents: Vec<Vec<&str>> = spans.iter().map(|r| toks[r.clone()].iter().map(String::as_str).collect()).collect();
        assert_eq!(sents.len(), 3);
        assert_eq!(sents[0], ["He", "left", "at", "8", "p.m."]);
        assert_eq!(sents[2], ["Done"]);
    }
}
