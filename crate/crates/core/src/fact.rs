//! Facts, relation kinds and fact tables.
//!
//! A [`Fact`] is one instance of one of the eight linguistic relations the
//! harness knows about. Facts compare by lemma structure only: surfaces,
//! parts of speech and entity annotations never take part in equality, so a
//! fact extracted from "the men" equals one generated from "a man".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FactError, FormatError};

/// Part-of-speech tags for open and closed class lexemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Preposition,
    Determiner,
    Number,
    ProperNoun,
}

impl Pos {
    pub const ALL: [Pos; 8] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Adjective,
        Pos::Adverb,
        Pos::Preposition,
        Pos::Determiner,
        Pos::Number,
        Pos::ProperNoun,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adjective => "adj",
            Pos::Adverb => "adv",
            Pos::Preposition => "adp",
            Pos::Determiner => "det",
            Pos::Number => "num",
            Pos::ProperNoun => "propn",
        }
    }

    pub fn is_nominal(self) -> bool {
        matches!(self, Pos::Noun | Pos::ProperNoun)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Pos {
    type Err = FactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "noun" | "n" => Pos::Noun,
            "verb" | "v" => Pos::Verb,
            "adj" | "adjective" | "a" | "s" => Pos::Adjective,
            "adv" | "adverb" | "r" => Pos::Adverb,
            "adp" | "prep" | "preposition" => Pos::Preposition,
            "det" | "determiner" => Pos::Determiner,
            "num" | "number" => Pos::Number,
            "propn" | "proper-noun" => Pos::ProperNoun,
            other => return Err(FactError::UnknownPos(other.to_string())),
        })
    }
}

/// A single word (or fixed multi-token unit such as "New Jersey") with its
/// lemma and part of speech.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lexeme {
    surface: String,
    lemma: String,
    pos: Pos,
}

impl Lexeme {
    /// Builds a lexeme, collapsing whitespace and lowercasing the lemma.
    pub fn new(surface: &str, lemma: &str, pos: Pos) -> Result<Self, FactError> {
        let surface = collapse_ws(surface);
        let lemma = collapse_ws(lemma).to_lowercase();
        if surface.is_empty() {
            return Err(FactError::EmptySurface);
        }
        if lemma.is_empty() {
            return Err(FactError::EmptyLemma(surface));
        }
        Ok(Lexeme { surface, lemma, pos })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn pos(&self) -> Pos {
        self.pos
    }
}

impl fmt::Display for Lexeme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}

pub(crate) fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The closed set of linguistic relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    SubjectVerbObject,
    NounModifier,
    VerbModifier,
    PhraseModifierVerb,
    PhraseModifierNoun,
    ClauseModifierVerb,
    ClauseModifierNoun,
    MainSubordinateClause,
}

impl RelationKind {
    pub const ALL: [RelationKind; 8] = [
        RelationKind::SubjectVerbObject,
        RelationKind::NounModifier,
        RelationKind::VerbModifier,
        RelationKind::PhraseModifierVerb,
        RelationKind::PhraseModifierNoun,
        RelationKind::ClauseModifierVerb,
        RelationKind::ClauseModifierNoun,
        RelationKind::MainSubordinateClause,
    ];

    pub fn arity(self) -> usize {
        match self {
            RelationKind::SubjectVerbObject => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::SubjectVerbObject => "SubjectVerbObject",
            RelationKind::NounModifier => "NounModifier",
            RelationKind::VerbModifier => "VerbModifier",
            RelationKind::PhraseModifierVerb => "PhraseModifierVerb",
            RelationKind::PhraseModifierNoun => "PhraseModifierNoun",
            RelationKind::ClauseModifierVerb => "ClauseModifierVerb",
            RelationKind::ClauseModifierNoun => "ClauseModifierNoun",
            RelationKind::MainSubordinateClause => "MainSubordinateClause",
        }
    }

    /// Argument positions that name an entity (the nominal participants).
    fn entity_positions(self) -> &'static [usize] {
        match self {
            RelationKind::SubjectVerbObject => &[0, 2],
            RelationKind::NounModifier
            | RelationKind::PhraseModifierNoun
            | RelationKind::ClauseModifierNoun => &[1],
            RelationKind::VerbModifier
            | RelationKind::PhraseModifierVerb
            | RelationKind::ClauseModifierVerb => &[],
            RelationKind::MainSubordinateClause => &[0, 1],
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = FactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FactError::UnknownRelation(s.to_string()))
    }
}

/// One argument slot of a fact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactArg {
    /// Explicitly absent argument (the object of an intransitive verb).
    Empty,
    Word(Lexeme),
    /// A multi-token unit that acts as one argument ("8 p.m.", "at New Jersey").
    Phrase(Vec<Lexeme>),
    /// A (noun, verb) clause, used by main/subordinate clause facts.
    Clause { noun: Vec<Lexeme>, verb: Lexeme },
    /// Coordinated conjuncts ("a blue jacket and black jeans"), decomposed
    /// into partial facts before a fact enters a table.
    Conjunction(Vec<FactArg>),
}

impl FactArg {
    pub fn word(lexeme: Lexeme) -> Self {
        FactArg::Word(lexeme)
    }

    /// A phrase argument; a single-token phrase collapses to a word.
    pub fn phrase(mut lexemes: Vec<Lexeme>) -> Self {
        match lexemes.len() {
            0 => FactArg::Empty,
            1 => FactArg::Word(lexemes.pop().expect("len checked")),
            _ => FactArg::Phrase(lexemes),
        }
    }

    pub fn clause(noun: Vec<Lexeme>, verb: Lexeme) -> Self {
        FactArg::Clause { noun, verb }
    }

    /// Coordinated conjuncts; a single conjunct collapses to itself.
    pub fn conjunction(mut conjuncts: Vec<FactArg>) -> Self {
        if conjuncts.len() == 1 {
            conjuncts.pop().expect("len checked")
        } else {
            FactArg::Conjunction(conjuncts)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FactArg::Empty)
    }

    /// The ordered lexemes of a word or phrase argument. Empty for the other shapes.
    pub fn tokens(&self) -> &[Lexeme] {
        match self {
            FactArg::Word(l) => std::slice::from_ref(l),
            FactArg::Phrase(ls) => ls,
            _ => &[],
        }
    }

    /// Every lexeme mentioned anywhere in the argument.
    pub fn lexemes(&self) -> Vec<&Lexeme> {
        match self {
            FactArg::Empty => Vec::new(),
            FactArg::Word(l) => vec![l],
            FactArg::Phrase(ls) => ls.iter().collect(),
            FactArg::Clause { noun, verb } => noun.iter().chain(std::iter::once(verb)).collect(),
            FactArg::Conjunction(cs) => cs.iter().flat_map(|c| c.lexemes()).collect(),
        }
    }

    /// Surface rendering: tokens separated by spaces.
    pub fn surface(&self) -> String {
        match self {
            FactArg::Empty => String::new(),
            FactArg::Word(l) => l.surface().to_string(),
            FactArg::Phrase(ls) => join_surfaces(ls),
            FactArg::Clause { noun, verb } => format!("{} {}", join_surfaces(noun), verb.surface()),
            FactArg::Conjunction(cs) => cs.iter().map(FactArg::surface).collect::<Vec<_>>().join(" and "),
        }
    }

    /// Lemma rendering, used for display and entity ids.
    pub fn lemma_text(&self) -> String {
        match self {
            FactArg::Empty => "∅".to_string(),
            FactArg::Word(l) => l.lemma().to_string(),
            FactArg::Phrase(ls) => join_lemmas(ls),
            FactArg::Clause { noun, verb } => format!("({}, {})", join_lemmas(noun), verb.lemma()),
            FactArg::Conjunction(cs) => cs.iter().map(FactArg::lemma_text).collect::<Vec<_>>().join(" AND "),
        }
    }

    fn key(&self) -> ArgKey {
        match self {
            FactArg::Empty => ArgKey::Empty,
            FactArg::Word(l) => ArgKey::Tokens(vec![l.lemma().to_string()]),
            FactArg::Phrase(ls) => ArgKey::Tokens(ls.iter().map(|l| l.lemma().to_string()).collect()),
            FactArg::Clause { noun, verb } => ArgKey::Clause(
                noun.iter().map(|l| l.lemma().to_string()).collect(),
                verb.lemma().to_string(),
            ),
            FactArg::Conjunction(cs) => ArgKey::Conjunction(cs.iter().map(FactArg::key).collect()),
        }
    }

    fn normalized(self) -> FactArg {
        match self {
            FactArg::Phrase(ls) => FactArg::phrase(ls),
            FactArg::Conjunction(cs) => FactArg::conjunction(cs.into_iter().map(FactArg::normalized).collect()),
            other => other,
        }
    }

    /// The nominal head of the argument as a single canonical lexeme, when
    /// the argument is a noun or noun phrase.
    pub fn as_entity(&self) -> Option<Lexeme> {
        let tokens = match self {
            FactArg::Word(_) | FactArg::Phrase(_) => self.tokens(),
            FactArg::Clause { noun, .. } => noun.as_slice(),
            _ => return None,
        };
        let last = tokens.last()?;
        if !last.pos().is_nominal() {
            return None;
        }
        Lexeme::new(&join_surfaces(tokens), &join_lemmas(tokens), last.pos()).ok()
    }
}

fn join_surfaces(ls: &[Lexeme]) -> String {
    ls.iter().map(Lexeme::surface).collect::<Vec<_>>().join(" ")
}

fn join_lemmas(ls: &[Lexeme]) -> String {
    ls.iter().map(Lexeme::lemma).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum ArgKey {
    Empty,
    Tokens(Vec<String>),
    Clause(Vec<String>, String),
    Conjunction(Vec<ArgKey>),
}

/// One relation instance.
#[derive(Debug, Clone)]
pub struct Fact {
    kind: RelationKind,
    args: Vec<FactArg>,
    key: Vec<ArgKey>,
}

impl Fact {
    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn args(&self) -> &[FactArg] {
        &self.args
    }

    pub fn has_conjunction(&self) -> bool {
        self.args.iter().any(|a| matches!(a, FactArg::Conjunction(_)))
    }

    /// Canonical entities named by this fact, keyed by their lemma text.
    pub fn entities(&self) -> Vec<(EntityId, Lexeme)> {
        self.kind
            .entity_positions()
            .iter()
            .filter_map(|&i| self.args.get(i))
            .flat_map(|arg| match arg {
                FactArg::Conjunction(cs) => cs.iter().filter_map(FactArg::as_entity).collect(),
                other => other.as_entity().into_iter().collect::<Vec<_>>(),
            })
            .map(|lex| (EntityId(lex.lemma().to_string()), lex))
            .collect()
    }
}

impl PartialEq for Fact {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.key == other.key
    }
}

impl Eq for Fact {}

impl PartialOrd for Fact {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fact {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, &self.key).cmp(&(other.kind, &other.key))
    }
}

impl std::hash::Hash for Fact {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.key.hash(state);
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(FactArg::lemma_text).collect();
        write!(f, "{}({})", self.kind, args.join(", "))
    }
}

fn check_shape(kind: RelationKind, index: usize, arg: &FactArg) -> Result<(), FactError> {
    let shape_err = |expected: &'static str| FactError::ArgShape { kind, index, expected };
    let is_term = |a: &FactArg| matches!(a, FactArg::Word(_) | FactArg::Phrase(_));
    let term_or_conj = |a: &FactArg| match a {
        FactArg::Conjunction(cs) => cs.iter().all(is_term),
        other => is_term(other),
    };
    match kind {
        RelationKind::MainSubordinateClause => match arg {
            FactArg::Clause { noun, .. } if !noun.is_empty() => Ok(()),
            _ => Err(shape_err("a (noun, verb) clause")),
        },
        RelationKind::SubjectVerbObject if index == 1 => match arg {
            FactArg::Word(_) => Ok(()),
            _ => Err(shape_err("a single verb lexeme")),
        },
        RelationKind::SubjectVerbObject if index == 2 && arg.is_empty() => Ok(()),
        _ if term_or_conj(arg) => Ok(()),
        _ => Err(shape_err("a word, phrase or coordination")),
    }
}

/// Builds a normalized fact, checking the argument count and shapes.
pub fn make_fact(kind: RelationKind, args: Vec<FactArg>) -> Result<Fact, FactError> {
    if args.len() != kind.arity() {
        return Err(FactError::Arity { kind, expected: kind.arity(), found: args.len() });
    }
    let args: Vec<FactArg> = args.into_iter().map(FactArg::normalized).collect();
    for (i, arg) in args.iter().enumerate() {
        check_shape(kind, i, arg)?;
    }
    let key = args.iter().map(FactArg::key).collect();
    Ok(Fact { kind, args, key })
}

/// Splits coordinated arguments into partial facts, one per conjunct. When
/// several arguments are coordinated the result is their cross product.
pub fn decompose_conjunction(fact: &Fact) -> Vec<Fact> {
    let mut partial: Vec<Vec<FactArg>> = vec![Vec::new()];
    for arg in &fact.args {
        let options: Vec<&FactArg> = match arg {
            FactArg::Conjunction(cs) => cs.iter().collect(),
            other => vec![other],
        };
        partial = partial
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut next = prefix.clone();
                    next.push((*opt).clone());
                    next
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|args| {
            let key = args.iter().map(FactArg::key).collect();
            Fact { kind: fact.kind, args, key }
        })
        .collect()
}

/// Entity identifier: the lemma text of the entity's canonical mention.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EntityId(pub String);

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A rendered attribute value recorded when a fact tree is instantiated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotValue {
    /// Text substituted for the slot in grammar derivations.
    pub surface: String,
    pub arg: FactArg,
}

/// The set of facts of a document or summary, plus the entity registry.
///
/// Equality compares the facts and the registered entity ids. The slot record
/// (object/attribute values filled in by the generator) is provenance and is
/// not part of equality.
#[derive(Debug, Clone, Default)]
pub struct FactTable {
    facts: BTreeSet<Fact>,
    entities: BTreeMap<EntityId, Lexeme>,
    slots: BTreeMap<String, SlotValue>,
}

impl PartialEq for FactTable {
    fn eq(&self, other: &Self) -> bool {
        self.facts == other.facts && self.entities.keys().eq(other.entities.keys())
    }
}

impl Eq for FactTable {}

impl FactTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a fact, decomposing coordination first. Entities named by the
    /// fact are registered.
    pub fn insert(&mut self, fact: Fact) {
        for part in decompose_conjunction(&fact) {
            for (id, lex) in part.entities() {
                self.entities.entry(id).or_insert(lex);
            }
            self.facts.insert(part);
        }
    }

    /// Value-returning form of [`FactTable::insert`].
    pub fn with(mut self, fact: Fact) -> Self {
        self.insert(fact);
        self
    }

    pub fn register_entity(&mut self, lexeme: Lexeme) -> EntityId {
        let id = EntityId(lexeme.lemma().to_string());
        self.entities.entry(id.clone()).or_insert(lexeme);
        id
    }

    pub fn set_slot(&mut self, slot: impl Into<String>, value: SlotValue) {
        self.slots.insert(slot.into(), value);
    }

    pub fn slot(&self, slot: &str) -> Option<&SlotValue> {
        self.slots.get(slot)
    }

    pub fn slots(&self) -> impl Iterator<Item = (&str, &SlotValue)> {
        self.slots.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.facts.contains(fact)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Facts in serialization order (kind, then lemma structure).
    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    pub fn entities(&self) -> &BTreeMap<EntityId, Lexeme> {
        &self.entities
    }

    /// Every lemma appearing in any fact argument.
    pub fn lemmas(&self) -> BTreeSet<String> {
        self.facts
            .iter()
            .flat_map(|f| f.args.iter().flat_map(|a| a.lexemes()))
            .map(|l| l.lemma().to_string())
            .collect()
    }

    /// Writes the documented line format; see [`FactTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::from(FACTS_HEADER);
        out.push('\n');
        for (id, lex) in &self.entities {
            out.push_str(&format!("entity\t{}\t{}\n", escape(&id.0), encode_lexeme(lex)));
        }
        for (name, value) in &self.slots {
            out.push_str(&format!(
                "slot\t{}\t{}\t{}\n",
                escape(name),
                escape(&value.surface),
                encode_arg(&value.arg)
            ));
        }
        for fact in &self.facts {
            out.push_str("fact\t");
            out.push_str(fact.kind.name());
            for arg in &fact.args {
                out.push('\t');
                out.push_str(&encode_arg(arg));
            }
            let ids: Vec<String> = fact.entities().into_iter().map(|(id, _)| escape(&id.0)).collect();
            out.push('\t');
            out.push_str(if ids.is_empty() { "-" } else { "" });
            out.push_str(&ids.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the line format written by [`FactTable::to_text`].
    ///
    /// ```text
    /// # factharness fact table v1
    /// entity <TAB> id <TAB> surface|lemma|pos
    /// slot   <TAB> object.attribute <TAB> rendered text <TAB> arg
    /// fact   <TAB> Kind <TAB> arg ... <TAB> entity-ids
    /// ```
    ///
    /// An arg is `-` (empty), space-separated `surface|lemma|pos` tokens, a
    /// clause `noun-tokens @ verb-token`, or conjuncts joined by ` && `.
    /// Components are percent-escaped.
    pub fn parse(text: &str) -> Result<FactTable, FormatError> {
        let mut table = FactTable::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| FormatError::new("fact table", line_no, msg);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            match cols[0] {
                "entity" if cols.len() == 3 => {
                    let lex = decode_lexeme(cols[2]).map_err(err)?;
                    table.entities.insert(EntityId(unescape(cols[1])), lex);
                }
                "slot" if cols.len() == 4 => {
                    let arg = decode_arg(cols[3]).map_err(err)?;
                    table.set_slot(unescape(cols[1]), SlotValue { surface: unescape(cols[2]), arg });
                }
                "fact" if cols.len() >= 4 => {
                    let kind: RelationKind = cols[1].parse().map_err(|e: FactError| err(e.to_string()))?;
                    let args = cols[2..cols.len() - 1]
                        .iter()
                        .map(|c| decode_arg(c))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(err)?;
                    let fact = make_fact(kind, args).map_err(|e| err(e.to_string()))?;
                    table.insert(fact);
                }
                other => return Err(err(format!("unrecognized record `{other}`"))),
            }
        }
        Ok(table)
    }
}

pub const FACTS_HEADER: &str = "# factharness fact table v1";

const ESCAPED: [char; 8] = ['%', ' ', '|', '\t', '\n', '@', '&', ','];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if ESCAPED.contains(&c) {
            out.push_str(&format!("%{:02X}", c as u32));
        } else {
            out.push(c);
        }
    }
    out
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '%' {
            let hex: String = chars.by_ref().take(2).collect();
            match u8::from_str_radix(&hex, 16) {
                Ok(b) => out.push(b as char),
                Err(_) => {
                    out.push('%');
                    out.push_str(&hex);
                }
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn encode_lexeme(l: &Lexeme) -> String {
    format!("{}|{}|{}", escape(l.surface()), escape(l.lemma()), l.pos().code())
}

fn decode_lexeme(s: &str) -> Result<Lexeme, String> {
    let parts: Vec<&str> = s.split('|').collect();
    if parts.len() != 3 {
        return Err(format!("malformed lexeme `{s}`"));
    }
    let pos: Pos = parts[2].parse().map_err(|e: FactError| e.to_string())?;
    Lexeme::new(&unescape(parts[0]), &unescape(parts[1]), pos).map_err(|e| e.to_string())
}

fn encode_tokens(ls: &[Lexeme]) -> String {
    ls.iter().map(encode_lexeme).collect::<Vec<_>>().join(" ")
}

fn decode_tokens(s: &str) -> Result<Vec<Lexeme>, String> {
    s.split(' ').filter(|t| !t.is_empty()).map(decode_lexeme).collect()
}

fn encode_arg(arg: &FactArg) -> String {
    match arg {
        FactArg::Empty => "-".to_string(),
        FactArg::Word(_) | FactArg::Phrase(_) => encode_tokens(arg.tokens()),
        FactArg::Clause { noun, verb } => format!("{} @ {}", encode_tokens(noun), encode_lexeme(verb)),
        FactArg::Conjunction(cs) => cs.iter().map(encode_arg).collect::<Vec<_>>().join(" && "),
    }
}

fn decode_arg(s: &str) -> Result<FactArg, String> {
    if s == "-" {
        return Ok(FactArg::Empty);
    }
    if s.contains(" && ") {
        let parts = s.split(" && ").map(decode_arg).collect::<Result<Vec<_>, _>>()?;
        return Ok(FactArg::conjunction(parts));
    }
    if let Some((noun, verb)) = s.split_once(" @ ") {
        return Ok(FactArg::clause(decode_tokens(noun)?, decode_lexeme(verb)?));
    }
    Ok(FactArg::phrase(decode_tokens(s)?))
}
