//! Lexicon loading and longest-match tagging.
//!
//! The generator and the extractor share one vocabulary so that a literal
//! attribute value and the same words found in a summary resolve to the same
//! lexemes.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::FormatError;
use crate::fact::{Lexeme, Pos};
use crate::tokenize::{is_punctuation, tokenize};

/// Grammatical number and animacy hints used for pronoun resolution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Features {
    pub plural: bool,
    pub person: bool,
}

impl Features {
    fn parse(s: &str) -> Result<Self, String> {
        let mut f = Features::default();
        for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "plural" | "pl" => f.plural = true,
                "singular" | "sg" => f.plural = false,
                "person" => f.person = true,
                other => return Err(format!("unknown feature `{other}`")),
            }
        }
        Ok(f)
    }
}

/// Word classes seen by the phrase parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordClass {
    Open(Pos),
    Determiner,
    Pronoun,
    Auxiliary,
    Preposition,
    /// Subordinators that open an adverbial clause (`while`, `when`).
    Marker,
    Conjunction,
    Relative,
    /// `that`: determiner, relativizer or complementizer depending on position.
    That,
    Punctuation,
    Unknown,
}

/// A vocabulary entry: one or more tokens that act as a single unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub lexemes: Vec<Lexeme>,
    pub pos: Pos,
    pub features: Features,
}

/// A tagged span of the token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub span: Range<usize>,
    pub class: WordClass,
    pub lexemes: Vec<Lexeme>,
    pub features: Features,
    /// Whether the unit came from the lexicon (as opposed to a closed-class
    /// list or an out-of-vocabulary heuristic).
    pub known: bool,
}

impl Unit {
    pub fn lower(&self) -> String {
        self.lexemes.iter().map(|l| l.surface().to_lowercase()).collect::<Vec<_>>().join(" ")
    }

    pub fn is_open(&self, pos: Pos) -> bool {
        self.class == WordClass::Open(pos)
    }

    pub fn is_nominal(&self) -> bool {
        matches!(self.class, WordClass::Open(Pos::Noun) | WordClass::Open(Pos::ProperNoun))
    }

    pub fn is_verb(&self) -> bool {
        self.class == WordClass::Open(Pos::Verb)
    }

    pub fn is(&self, word: &str) -> bool {
        self.lexemes.len() == 1 && self.lexemes[0].surface().eq_ignore_ascii_case(word)
    }
}

struct FunctionWord {
    word: &'static str,
    lemma: &'static str,
    class: WordClass,
    pos: Pos,
    features: Features,
}

const SG: Features = Features { plural: false, person: false };
const SG_PERSON: Features = Features { plural: false, person: true };
const PL_PERSON: Features = Features { plural: true, person: true };

macro_rules! fw {
    ($w:expr, $l:expr, $c:expr, $p:expr) => {
        FunctionWord { word: $w, lemma: $l, class: $c, pos: $p, features: SG }
    };
    ($w:expr, $l:expr, $c:expr, $p:expr, $f:expr) => {
        FunctionWord { word: $w, lemma: $l, class: $c, pos: $p, features: $f }
    };
}

use WordClass as C;

const FUNCTION_WORDS: &[FunctionWord] = &[
    fw!("a", "a", C::Determiner, Pos::Determiner),
    fw!("an", "a", C::Determiner, Pos::Determiner),
    fw!("the", "the", C::Determiner, Pos::Determiner),
    fw!("this", "this", C::Determiner, Pos::Determiner),
    fw!("these", "these", C::Determiner, Pos::Determiner),
    fw!("those", "those", C::Determiner, Pos::Determiner),
    fw!("some", "some", C::Determiner, Pos::Determiner),
    fw!("his", "his", C::Determiner, Pos::Determiner),
    fw!("its", "its", C::Determiner, Pos::Determiner),
    fw!("their", "their", C::Determiner, Pos::Determiner),
    fw!("another", "another", C::Determiner, Pos::Determiner),
    fw!("each", "each", C::Determiner, Pos::Determiner),
    fw!("every", "every", C::Determiner, Pos::Determiner),
    fw!("he", "he", C::Pronoun, Pos::Noun, SG_PERSON),
    fw!("him", "he", C::Pronoun, Pos::Noun, SG_PERSON),
    fw!("she", "she", C::Pronoun, Pos::Noun, SG_PERSON),
    fw!("her", "she", C::Pronoun, Pos::Noun, SG_PERSON),
    fw!("it", "it", C::Pronoun, Pos::Noun, SG),
    fw!("they", "they", C::Pronoun, Pos::Noun, PL_PERSON),
    fw!("them", "they", C::Pronoun, Pos::Noun, PL_PERSON),
    fw!("is", "be", C::Auxiliary, Pos::Verb),
    fw!("are", "be", C::Auxiliary, Pos::Verb),
    fw!("am", "be", C::Auxiliary, Pos::Verb),
    fw!("was", "be", C::Auxiliary, Pos::Verb),
    fw!("were", "be", C::Auxiliary, Pos::Verb),
    fw!("be", "be", C::Auxiliary, Pos::Verb),
    fw!("been", "be", C::Auxiliary, Pos::Verb),
    fw!("being", "be", C::Auxiliary, Pos::Verb),
    fw!("got", "get", C::Auxiliary, Pos::Verb),
    fw!("get", "get", C::Auxiliary, Pos::Verb),
    fw!("gets", "get", C::Auxiliary, Pos::Verb),
    fw!("has", "have", C::Auxiliary, Pos::Verb),
    fw!("have", "have", C::Auxiliary, Pos::Verb),
    fw!("had", "have", C::Auxiliary, Pos::Verb),
    fw!("did", "do", C::Auxiliary, Pos::Verb),
    fw!("does", "do", C::Auxiliary, Pos::Verb),
    fw!("do", "do", C::Auxiliary, Pos::Verb),
    fw!("will", "will", C::Auxiliary, Pos::Verb),
    fw!("would", "would", C::Auxiliary, Pos::Verb),
    fw!("could", "could", C::Auxiliary, Pos::Verb),
    fw!("can", "can", C::Auxiliary, Pos::Verb),
    fw!("may", "may", C::Auxiliary, Pos::Verb),
    fw!("might", "might", C::Auxiliary, Pos::Verb),
    fw!("should", "should", C::Auxiliary, Pos::Verb),
    fw!("at", "at", C::Preposition, Pos::Preposition),
    fw!("in", "in", C::Preposition, Pos::Preposition),
    fw!("on", "on", C::Preposition, Pos::Preposition),
    fw!("by", "by", C::Preposition, Pos::Preposition),
    fw!("of", "of", C::Preposition, Pos::Preposition),
    fw!("from", "from", C::Preposition, Pos::Preposition),
    fw!("with", "with", C::Preposition, Pos::Preposition),
    fw!("near", "near", C::Preposition, Pos::Preposition),
    fw!("to", "to", C::Preposition, Pos::Preposition),
    fw!("into", "into", C::Preposition, Pos::Preposition),
    fw!("for", "for", C::Preposition, Pos::Preposition),
    fw!("during", "during", C::Preposition, Pos::Preposition),
    fw!("outside", "outside", C::Preposition, Pos::Preposition),
    fw!("inside", "inside", C::Preposition, Pos::Preposition),
    fw!("after", "after", C::Preposition, Pos::Preposition),
    fw!("before", "before", C::Preposition, Pos::Preposition),
    fw!("behind", "behind", C::Preposition, Pos::Preposition),
    fw!("across", "across", C::Preposition, Pos::Preposition),
    fw!("around", "around", C::Preposition, Pos::Preposition),
    fw!("through", "through", C::Preposition, Pos::Preposition),
    fw!("while", "while", C::Marker, Pos::Preposition),
    fw!("when", "when", C::Marker, Pos::Preposition),
    fw!("as", "as", C::Marker, Pos::Preposition),
    fw!("because", "because", C::Marker, Pos::Preposition),
    fw!("although", "although", C::Marker, Pos::Preposition),
    fw!("until", "until", C::Marker, Pos::Preposition),
    fw!("and", "and", C::Conjunction, Pos::Preposition),
    fw!("or", "or", C::Conjunction, Pos::Preposition),
    fw!("but", "but", C::Conjunction, Pos::Preposition),
    fw!("who", "who", C::Relative, Pos::Noun),
    fw!("which", "which", C::Relative, Pos::Noun),
    fw!("whom", "who", C::Relative, Pos::Noun),
    fw!("that", "that", C::That, Pos::Determiner),
];

fn function_word(lower: &str) -> Option<&'static FunctionWord> {
    FUNCTION_WORDS.iter().find(|f| f.word == lower)
}

/// Lexicon of known units keyed by their lowercased surface tokens.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    entries: BTreeMap<Vec<String>, Entry>,
    by_lemma: BTreeMap<String, Vec<String>>,
    max_len: usize,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses lexicon rows `surface <TAB> lemma <TAB> pos [<TAB> features]`.
    /// Surfaces and lemmas may span several tokens ("New Jersey").
    pub fn parse_lexicon(text: &str) -> Result<Self, FormatError> {
        let mut vocab = Vocabulary::new();
        vocab.extend_from_lexicon(text)?;
        Ok(vocab)
    }

    pub fn extend_from_lexicon(&mut self, text: &str) -> Result<(), FormatError> {
        for (i, line) in text.lines().enumerate() {
            let err = |m: String| FormatError::new("lexicon", i + 1, m);
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if !(3..=4).contains(&cols.len()) {
                return Err(err(format!("expected 3 or 4 tab-separated columns, found {}", cols.len())));
            }
            let pos: Pos = cols[2].trim().parse().map_err(|e: crate::error::FactError| err(e.to_string()))?;
            let features = cols.get(3).map(|f| Features::parse(f)).transpose().map_err(err)?.unwrap_or_default();
            self.insert(cols[0], cols[1], pos, features).map_err(err)?;
        }
        Ok(())
    }

    /// Adds a unit. Existing entries win; returns the entry now stored.
    pub fn insert(&mut self, surface: &str, lemma: &str, pos: Pos, features: Features) -> Result<&Entry, String> {
        let surfaces = tokenize(surface);
        if surfaces.is_empty() {
            return Err("empty surface".to_string());
        }
        let lemma_tokens: Vec<&str> = lemma.split_whitespace().collect();
        let lexemes = surfaces
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let l = if lemma_tokens.len() == surfaces.len() {
                    lemma_tokens[i].to_string()
                } else if surfaces.len() == 1 {
                    lemma.to_string()
                } else {
                    s.to_lowercase()
                };
                Lexeme::new(s, &l, pos).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let key: Vec<String> = surfaces.iter().map(|s| s.to_lowercase()).collect();
        self.max_len = self.max_len.max(key.len());
        let lemma_key = lexemes.iter().map(Lexeme::lemma).collect::<Vec<_>>().join(" ");
        if !self.entries.contains_key(&key) {
            self.by_lemma.entry(lemma_key).or_default().push(key.join(" "));
        }
        Ok(self.entries.entry(key.clone()).or_insert(Entry { lexemes, pos, features }))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, surface: &str) -> Option<&Entry> {
        let key: Vec<String> = tokenize(surface).iter().map(|s| s.to_lowercase()).collect();
        self.entries.get(&key)
    }

    /// First entry (in surface order) whose lemma text matches, optionally
    /// restricted to a part of speech.
    pub fn by_lemma(&self, lemma: &str, pos: Option<Pos>) -> Option<&Entry> {
        let lemma = lemma.to_lowercase();
        self.by_lemma.get(&lemma)?.iter().find_map(|surface| {
            let key: Vec<String> = surface.split(' ').map(str::to_string).collect();
            self.entries.get(&key).filter(|e| pos.is_none_or(|p| e.pos == p))
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    /// Tags a token sequence with longest-match lexicon lookup, the built-in
    /// closed-class words, and suffix heuristics for unknown words.
    pub fn tag(&self, tokens: &[String]) -> Vec<Unit> {
        let lower: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        let mut units: Vec<Unit> = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let unit = self.tag_at(tokens, &lower, i, units.last());
            i = unit.span.end;
            units.push(unit);
        }
        units
    }

    /// Tokenizes and tags a string.
    pub fn units(&self, text: &str) -> Vec<Unit> {
        self.tag(&tokenize(text))
    }

    fn tag_at(&self, tokens: &[String], lower: &[String], i: usize, prev: Option<&Unit>) -> Unit {
        let longest = self.max_len.min(tokens.len() - i);
        for len in (1..=longest).rev() {
            if let Some(entry) = self.entries.get(&lower[i..i + len]) {
                // Function words beat single-token lexicon rows.
                if len == 1 && function_word(&lower[i]).is_some() {
                    break;
                }
                return Unit {
                    span: i..i + len,
                    class: WordClass::Open(entry.pos),
                    lexemes: entry.lexemes.clone(),
                    features: entry.features,
                    known: true,
                };
            }
        }
        let tok = &tokens[i];
        let single = |class: WordClass, lemma: &str, pos: Pos, features: Features, known: bool| Unit {
            span: i..i + 1,
            class,
            lexemes: vec![Lexeme::new(tok, lemma, pos).expect("non-empty token")],
            features,
            known,
        };
        if let Some(fw) = function_word(&lower[i]) {
            return single(fw.class, fw.lemma, fw.pos, fw.features, true);
        }
        if is_punctuation(tok) {
            return single(WordClass::Punctuation, tok, Pos::Determiner, SG, true);
        }
        let l = lower[i].as_str();
        if l.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return single(WordClass::Open(Pos::Number), l, Pos::Number, SG, false);
        }
        let sentence_initial = prev.is_none_or(|p| {
            p.class == WordClass::Punctuation && matches!(p.lower().as_str(), "." | "!" | "?" | ";" | "\"")
        });
        let guessed = if l.len() > 3 && l.ends_with("ly") {
            Some(Pos::Adverb)
        } else if l.len() > 4 && (l.ends_with("ing") || l.ends_with("ed")) {
            Some(Pos::Verb)
        } else if tok.chars().next().is_some_and(char::is_uppercase) && !sentence_initial {
            Some(Pos::ProperNoun)
        } else if prev.is_some_and(|p| {
            matches!(p.class, WordClass::Determiner | WordClass::Open(Pos::Adjective) | WordClass::Open(Pos::Number))
        }) {
            Some(Pos::Noun)
        } else {
            None
        };
        match guessed {
            Some(pos) => single(WordClass::Open(pos), l, pos, SG, false),
            None => single(WordClass::Unknown, l, Pos::Noun, SG, false),
        }
    }
}
