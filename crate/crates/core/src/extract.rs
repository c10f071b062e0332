//! Lexicon-guided fact extraction.
//!
//! Text is tokenized, tagged against the shared [`Vocabulary`] and split into
//! clauses at sentence ends and semicolons. Each clause is read left to right
//! by a small recursive-descent parser:
//!
//! * noun phrase: `[det] (adj | num | noun)* noun`, coordinated with `and`.
//!   Every premodifier yields a NounModifier. A relative clause
//!   (`[,] who|which|that ... [,]`) yields a ClauseModifierNoun over its
//!   words; `in|of|from|near` + noun phrase yields a PhraseModifierNoun.
//! * verb phrase: auxiliaries and adverbs, then the verb. Adverbs yield
//!   VerbModifiers. A be/get auxiliary before a non-`-ing` verb is passive:
//!   `X got stabbed by Y` gives SubjectVerbObject(Y, stab, X), and without an
//!   agent SubjectVerbObject(X, stab, ∅). `that` + clause, or a noun phrase
//!   directly followed by a verb, is a subordinate clause: MainSubordinateClause
//!   plus the intransitive SubjectVerbObject of the main verb.
//! * after the verb: preposition + `-ing` verb opens a ClauseModifierVerb up to
//!   the next comma; preposition + noun phrase is a PhraseModifierVerb whose
//!   argument is the preposition and the phrase head.
//! * `be` + adjective or number is a NounModifier of the subject.
//!
//! Modifiers attach to the most recent verb of the clause, or to the next verb
//! when none precedes them. Pronouns resolve to the nearest preceding entity
//! with compatible number and animacy. Noun phrases with a determiner are
//! registered as entities.

use std::collections::BTreeSet;

use crate::error::AnalyzerError;
use crate::fact::{make_fact, Fact, FactArg, FactTable, Lexeme, Pos, RelationKind};
use crate::tokenize::{sentence_spans, tokenize};
use crate::vocab::{Features, Unit, Vocabulary, WordClass};

/// Prepositions that attach to a directly preceding noun.
pub const NOUN_PREPOSITIONS: [&str; 4] = ["in", "of", "from", "near"];

/// The pattern families, one per relation kind, in application order.
pub const PATTERN_FAMILIES: [(RelationKind, &str); 8] = [
    (RelationKind::MainSubordinateClause, "verb (that)? NP verb"),
    (RelationKind::ClauseModifierNoun, "NP ,? who|which|that ... ,"),
    (RelationKind::ClauseModifierVerb, "prep verb-ing ... ,"),
    (RelationKind::SubjectVerbObject, "NP aux* verb NP? | NP be|get verb (by NP)?"),
    (RelationKind::NounModifier, "det? (adj|num|noun)+ noun | NP be adj|num"),
    (RelationKind::VerbModifier, "adv verb | verb adv"),
    (RelationKind::PhraseModifierNoun, "NP in|of|from|near NP"),
    (RelationKind::PhraseModifierVerb, "verb ... prep NP"),
];

/// The lexicon the extractor tags with: the generation lexicon, optionally
/// extended with lemmas from the synonym resource.
#[derive(Debug, Clone, Default)]
pub struct ExtractionVocabulary {
    vocab: Vocabulary,
}

impl ExtractionVocabulary {
    pub fn new(vocab: Vocabulary) -> Self {
        ExtractionVocabulary { vocab }
    }

    /// Adds single-word entries for lemmas that only the synonym resource
    /// knows. Existing lexicon entries are kept.
    pub fn with_extra_lemmas<'a>(mut self, lemmas: impl IntoIterator<Item = (&'a str, Pos)>) -> Self {
        for (lemma, pos) in lemmas {
            if lemma.contains(char::is_whitespace) || self.vocab.lookup(lemma).is_some() {
                continue;
            }
            // Entries that fail validation are simply not added.
            let _ = self.vocab.insert(lemma, lemma, pos, Features::default());
        }
        self
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }
}

/// Extracts every recognizable fact from `text`. Never fails; text the
/// patterns do not cover contributes no facts.
pub fn extract_facts(text: &str, vocab: &ExtractionVocabulary) -> FactTable {
    let tokens = tokenize(text);
    let units = vocab.vocab.tag(&tokens);
    let ends: BTreeSet<usize> = sentence_spans(&tokens).iter().map(|r| r.end).collect();
    extract_units(&units, &ends)
}

/// Extracts from a pre-annotated summary in the corpus column format
/// (`index surface lemma pos ne head dep`), bypassing the internal tagger.
pub fn extract_annotated(rows: &str) -> Result<FactTable, AnalyzerError> {
    let mut units = Vec::new();
    let mut ends = BTreeSet::new();
    for (i, line) in rows.lines().enumerate() {
        if line.trim().is_empty() {
            ends.insert(units.len());
            continue;
        }
        let bad = |m: String| AnalyzerError::MalformedRow { line: i + 1, message: m };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 7 {
            return Err(bad(format!("expected 7 tab-separated columns, found {}", cols.len())));
        }
        let (surface, lemma) = (cols[1], cols[2].to_lowercase());
        let (class, pos, features) = annotated_class(surface, &lemma, cols[3]);
        let lexeme = Lexeme::new(surface, &lemma, pos).map_err(|e| bad(e.to_string()))?;
        let at = units.len();
        units.push(Unit { span: at..at + 1, class, lexemes: vec![lexeme], features, known: true });
    }
    ends.insert(units.len());
    Ok(extract_units(&units, &ends))
}

fn annotated_class(surface: &str, lemma: &str, upos: &str) -> (WordClass, Pos, Features) {
    let lower = surface.to_lowercase();
    let plain = Features::default();
    match upos.to_ascii_uppercase().as_str() {
        "NOUN" => (WordClass::Open(Pos::Noun), Pos::Noun, plain),
        "PROPN" => (WordClass::Open(Pos::ProperNoun), Pos::ProperNoun, plain),
        "VERB" => (WordClass::Open(Pos::Verb), Pos::Verb, plain),
        "AUX" => (WordClass::Auxiliary, Pos::Verb, plain),
        "ADJ" => (WordClass::Open(Pos::Adjective), Pos::Adjective, plain),
        "ADV" => (WordClass::Open(Pos::Adverb), Pos::Adverb, plain),
        "NUM" => (WordClass::Open(Pos::Number), Pos::Number, plain),
        "DET" if lower == "that" => (WordClass::That, Pos::Determiner, plain),
        "DET" => (WordClass::Determiner, Pos::Determiner, plain),
        "PRON" if matches!(lemma, "who" | "which" | "whom") => (WordClass::Relative, Pos::Noun, plain),
        "PRON" => {
            let plural = matches!(lemma, "they" | "them" | "we");
            let person = lemma != "it";
            (WordClass::Pronoun, Pos::Noun, Features { plural, person })
        }
        "ADP" => (WordClass::Preposition, Pos::Preposition, plain),
        "SCONJ" if lower == "that" => (WordClass::That, Pos::Determiner, plain),
        "SCONJ" => (WordClass::Marker, Pos::Preposition, plain),
        "CCONJ" => (WordClass::Conjunction, Pos::Preposition, plain),
        "PUNCT" => (WordClass::Punctuation, Pos::Determiner, plain),
        _ => (WordClass::Unknown, Pos::Noun, plain),
    }
}

fn extract_units(units: &[Unit], sentence_ends: &BTreeSet<usize>) -> FactTable {
    let mut parser = Parser::default();
    let mut clause: Vec<Unit> = Vec::new();
    for unit in units {
        if sentence_ends.contains(&unit.span.start) && !clause.is_empty() {
            parser.clause(&std::mem::take(&mut clause));
        }
        let boundary = unit.class == WordClass::Punctuation && matches!(unit.lower().as_str(), "." | "!" | "?" | ";");
        if boundary {
            parser.clause(&std::mem::take(&mut clause));
        } else {
            clause.push(unit.clone());
        }
    }
    parser.clause(&clause);
    parser.table
}

/// A parsed noun phrase head.
#[derive(Debug, Clone)]
pub struct NounPhrase {
    pub head: Vec<Lexeme>,
    pub premodifiers: Vec<Vec<Lexeme>>,
    pub features: Features,
    pub determiner: bool,
}

/// Splits a tagged noun phrase `[det] (adj|num|noun)* noun` into premodifiers
/// and head. Returns `None` unless the units form exactly one such phrase.
/// The generator uses this to resolve literal values the same way the
/// extractor reads them.
pub fn noun_phrase_parts(units: &[Unit]) -> Option<NounPhrase> {
    let (np, end) = scan_np_core(units, 0)?;
    (end == units.len()).then_some(np)
}

fn scan_np_core(u: &[Unit], i: usize) -> Option<(NounPhrase, usize)> {
    let mut j = i;
    let mut determiner = false;
    if let Some(unit) = u.get(j) {
        let that_det = unit.class == WordClass::That && u.get(j + 1).is_some_and(is_np_word);
        if unit.class == WordClass::Determiner || that_det {
            determiner = true;
            j += 1;
        }
    }
    let mut premodifiers = Vec::new();
    while let Some(unit) = u.get(j) {
        let modifier = unit.is_open(Pos::Adjective)
            || unit.is_open(Pos::Number)
            || (unit.is_nominal() && u.get(j + 1).is_some_and(Unit::is_nominal));
        if !modifier {
            break;
        }
        premodifiers.push(unit.lexemes.clone());
        j += 1;
    }
    let head = u.get(j).filter(|h| h.is_nominal())?;
    Some((
        NounPhrase { head: head.lexemes.clone(), premodifiers, features: head.features, determiner },
        j + 1,
    ))
}

fn is_np_word(u: &Unit) -> bool {
    u.is_nominal() || u.is_open(Pos::Adjective) || u.is_open(Pos::Number)
}

fn is_gerund(u: &Unit) -> bool {
    u.is_verb() && u.lexemes.last().is_some_and(|l| l.surface().to_lowercase().ends_with("ing"))
}

fn is_comma(u: &Unit) -> bool {
    u.class == WordClass::Punctuation && u.is(",")
}

fn lexemes_of(units: &[Unit]) -> Vec<Lexeme> {
    units.iter().flat_map(|u| u.lexemes.iter().cloned()).collect()
}

fn head_arg(np: &NounPhrase) -> FactArg {
    FactArg::phrase(np.head.clone())
}

fn nps_arg(nps: &[NounPhrase]) -> FactArg {
    FactArg::conjunction(nps.iter().map(head_arg).collect())
}

/// Index of the first comma at or after `from`, or the clause end.
fn to_comma(u: &[Unit], from: usize) -> usize {
    (from..u.len()).find(|&k| is_comma(&u[k])).unwrap_or(u.len())
}

/// Side effects of a noun-phrase parse, applied only when the parse is used.
#[derive(Debug, Default)]
struct Pending {
    facts: Vec<Fact>,
    entities: Vec<Lexeme>,
    mentions: Vec<(Vec<Lexeme>, Features)>,
}

impl Pending {
    fn fact(&mut self, kind: RelationKind, args: Vec<FactArg>) {
        if let Ok(f) = make_fact(kind, args) {
            self.facts.push(f);
        }
    }

    fn absorb(&mut self, other: Pending) {
        self.facts.extend(other.facts);
        self.entities.extend(other.entities);
        self.mentions.extend(other.mentions);
    }
}

/// Modifiers seen before the verb they belong to.
#[derive(Debug, Default)]
struct Leading {
    adverbs: Vec<Vec<Lexeme>>,
    phrases: Vec<FactArg>,
    clauses: Vec<Vec<Lexeme>>,
}

#[derive(Debug, Default)]
struct Parser {
    table: FactTable,
    recent: Vec<(Vec<Lexeme>, Features)>,
}

impl Parser {
    fn commit(&mut self, p: Pending) {
        for lex in p.entities {
            if let Some(e) = FactArg::phrase(vec![lex]).as_entity() {
                self.table.register_entity(e);
            }
        }
        for f in p.facts {
            self.table.insert(f);
        }
        self.recent.extend(p.mentions);
    }

    fn emit(&mut self, kind: RelationKind, args: Vec<FactArg>) {
        if let Ok(f) = make_fact(kind, args) {
            self.table.insert(f);
        }
    }

    fn resolve(&self, pronoun: &Unit, exclude: Option<&[Lexeme]>) -> Option<NounPhrase> {
        let want = pronoun.features;
        let it = pronoun.lexemes[0].lemma() == "it";
        let candidates = self.recent.iter().rev().filter(|(head, f)| {
            f.plural == want.plural && (if it { !f.person } else { want.plural || f.person })
                && exclude.is_none_or(|x| !same_lemmas(x, head))
        });
        let (head, features) = candidates.clone().next().or_else(|| {
            // Fall back to the nearest entity of the same number.
            self.recent.iter().rev().find(|(_, f)| f.plural == want.plural)
        })?;
        Some(NounPhrase { head: head.clone(), premodifiers: Vec::new(), features: *features, determiner: false })
    }

    /// One noun phrase with its postmodifiers.
    fn scan_np(&self, u: &[Unit], i: usize, exclude: Option<&[Lexeme]>) -> Option<(NounPhrase, usize, Pending)> {
        let mut pending = Pending::default();
        let first = u.get(i)?;
        if first.class == WordClass::Pronoun {
            let np = self.resolve(first, exclude)?;
            return Some((np, i + 1, pending));
        }
        let (np, mut j) = scan_np_core(u, i)?;
        for m in &np.premodifiers {
            pending.fact(RelationKind::NounModifier, vec![FactArg::phrase(m.clone()), head_arg(&np)]);
        }
        if np.determiner {
            pending.entities.push(Lexeme::new(
                &np.head.iter().map(Lexeme::surface).collect::<Vec<_>>().join(" "),
                &np.head.iter().map(Lexeme::lemma).collect::<Vec<_>>().join(" "),
                np.head.last().map_or(Pos::Noun, Lexeme::pos),
            )
            .ok()?);
        }
        pending.mentions.push((np.head.clone(), np.features));

        loop {
            let rel_at = match u.get(j) {
                Some(c) if is_comma(c) && u.get(j + 1).is_some_and(|r| r.class == WordClass::Relative) => Some(j + 1),
                Some(r) if r.class == WordClass::Relative => Some(j),
                Some(t) if t.class == WordClass::That && starts_vp(u, j + 1) => Some(j),
                _ => None,
            };
            if let Some(r) = rel_at {
                let end = to_comma(u, r + 1);
                let words = lexemes_of(&u[r + 1..end]);
                if !words.is_empty() {
                    pending.fact(RelationKind::ClauseModifierNoun, vec![FactArg::phrase(words), head_arg(&np)]);
                }
                j = if end < u.len() { end + 1 } else { end };
                break;
            }
            let noun_prep = u.get(j).filter(|p| {
                p.class == WordClass::Preposition && NOUN_PREPOSITIONS.contains(&p.lower().as_str())
            });
            if let Some(prep) = noun_prep {
                if let Some((inner, k, inner_pending)) = self.scan_np(u, j + 1, None) {
                    let mut words = prep.lexemes.clone();
                    words.extend(inner.head.iter().cloned());
                    pending.absorb(inner_pending);
                    pending.fact(RelationKind::PhraseModifierNoun, vec![FactArg::phrase(words), head_arg(&np)]);
                    j = k;
                    continue;
                }
            }
            break;
        }
        Some((np, j, pending))
    }

    /// Coordinated noun phrases. A conjunct that is itself followed by a verb
    /// starts a new clause and is left alone.
    fn scan_nps(&self, u: &[Unit], i: usize, exclude: Option<&[Lexeme]>) -> Option<(Vec<NounPhrase>, usize, Pending)> {
        let (first, mut j, mut pending) = self.scan_np(u, i, exclude)?;
        let mut nps = vec![first];
        while u.get(j).is_some_and(|c| c.is("and")) {
            match self.scan_np(u, j + 1, exclude) {
                Some((np, k, p)) if !starts_vp(u, k) => {
                    nps.push(np);
                    pending.absorb(p);
                    j = k;
                }
                _ => break,
            }
        }
        Some((nps, j, pending))
    }

    fn clause(&mut self, u: &[Unit]) {
        let mut i = 0;
        while i < u.len() {
            let mut leading = Leading::default();
            i = self.leading(u, i, &mut leading);
            match self.core(u, i, &mut leading) {
                Some((_, _, end)) => i = end,
                None => i += 1,
            }
        }
    }

    /// Adverbials before the subject: adverbs, `prep verb-ing ...` and
    /// `prep NP`, each optionally followed by a comma.
    fn leading(&mut self, u: &[Unit], mut i: usize, leading: &mut Leading) -> usize {
        while let Some(unit) = u.get(i) {
            if is_comma(unit) {
                i += 1;
            } else if unit.is_open(Pos::Adverb) {
                leading.adverbs.push(unit.lexemes.clone());
                i += 1;
            } else if is_marker(unit) && u.get(i + 1).is_some_and(is_gerund) {
                let end = to_comma(u, i);
                leading.clauses.push(lexemes_of(&u[i..end]));
                i = end;
            } else if unit.class == WordClass::Preposition {
                match self.scan_nps(u, i + 1, None) {
                    Some((nps, k, p)) => {
                        self.commit(p);
                        leading.phrases.push(prep_arg(unit, &nps));
                        i = k;
                    }
                    None => break,
                }
            } else {
                break;
            }
        }
        i
    }

    /// Subject followed by a verb phrase. Returns the subject, the verb and
    /// the position after the clause.
    fn core(&mut self, u: &[Unit], i: usize, leading: &mut Leading) -> Option<(Vec<NounPhrase>, Option<Lexeme>, usize)> {
        let (subject, k, pending) = self.scan_nps(u, i, None)?;
        let k = if u.get(k).is_some_and(is_comma) && starts_vp(u, k + 1) { k + 1 } else { k };
        if !starts_vp(u, k) {
            return None;
        }
        self.commit(pending);
        let (verb, end) = self.vp(u, k, &subject, leading);
        Some((subject, verb, end))
    }

    /// Verb phrase and everything after it in the clause.
    fn vp(&mut self, u: &[Unit], i: usize, subject: &[NounPhrase], leading: &mut Leading) -> (Option<Lexeme>, usize) {
        let mut j = i;
        let mut adverbs = std::mem::take(&mut leading.adverbs);
        let mut passive_aux = false;
        let mut copula = false;
        while let Some(unit) = u.get(j) {
            match unit.class {
                WordClass::Open(Pos::Adverb) => adverbs.push(unit.lexemes.clone()),
                WordClass::Auxiliary => {
                    let lemma = unit.lexemes[0].lemma();
                    passive_aux |= matches!(lemma, "be" | "get");
                    copula = lemma == "be";
                }
                _ => break,
            }
            j += 1;
        }
        let subj_arg = nps_arg(subject);

        let Some(verb_unit) = u.get(j).filter(|v| v.is_verb()) else {
            if copula {
                return (None, self.copula(u, j, subject));
            }
            return (None, j);
        };
        let verb = verb_unit.lexemes[0].clone();
        let verb_arg = FactArg::word(verb.clone());
        j += 1;
        for a in adverbs {
            self.emit(RelationKind::VerbModifier, vec![FactArg::phrase(a), verb_arg.clone()]);
        }
        for p in std::mem::take(&mut leading.phrases) {
            self.emit(RelationKind::PhraseModifierVerb, vec![p, verb_arg.clone()]);
        }
        for c in std::mem::take(&mut leading.clauses) {
            self.emit(RelationKind::ClauseModifierVerb, vec![FactArg::phrase(c), verb_arg.clone()]);
        }
        while let Some(a) = u.get(j).filter(|a| a.is_open(Pos::Adverb)) {
            self.emit(RelationKind::VerbModifier, vec![FactArg::phrase(a.lexemes.clone()), verb_arg.clone()]);
            j += 1;
        }

        let passive = passive_aux && !is_gerund(verb_unit);
        let mut current = verb.clone();
        if passive {
            let agent = u
                .get(j)
                .filter(|b| b.is("by"))
                .and_then(|_| self.scan_nps(u, j + 1, subject.first().map(|s| s.head.as_slice())));
            match agent {
                Some((agents, k, p)) => {
                    self.commit(p);
                    self.emit(RelationKind::SubjectVerbObject, vec![nps_arg(&agents), verb_arg.clone(), subj_arg]);
                    j = k;
                }
                None => self.emit(RelationKind::SubjectVerbObject, vec![subj_arg, verb_arg.clone(), FactArg::Empty]),
            }
        } else if u.get(j).is_some_and(|t| t.class == WordClass::That) {
            let mut inner = Leading::default();
            match self.core(u, j + 1, &mut inner) {
                Some((sub, Some(sub_verb), end)) => {
                    self.subordinate(subject, &verb, &sub, &sub_verb);
                    return (Some(sub_verb), end);
                }
                _ => {
                    self.emit(RelationKind::SubjectVerbObject, vec![subj_arg, verb_arg.clone(), FactArg::Empty]);
                    j += 1;
                }
            }
        } else {
            let exclude = subject.first().map(|s| s.head.as_slice());
            match self.scan_nps(u, j, exclude) {
                Some((obj, k, p)) if starts_vp(u, k) => {
                    self.commit(p);
                    let mut inner = Leading::default();
                    let (sub_verb, end) = self.vp(u, k, &obj, &mut inner);
                    match sub_verb {
                        Some(sv) => self.subordinate(subject, &verb, &obj, &sv),
                        None => {
                            self.emit(RelationKind::SubjectVerbObject, vec![subj_arg, verb_arg, FactArg::Empty]);
                        }
                    }
                    return (Some(verb), end);
                }
                Some((obj, k, p)) => {
                    self.commit(p);
                    self.emit(RelationKind::SubjectVerbObject, vec![subj_arg, verb_arg.clone(), nps_arg(&obj)]);
                    j = k;
                }
                None => self.emit(RelationKind::SubjectVerbObject, vec![subj_arg, verb_arg.clone(), FactArg::Empty]),
            }
        }

        // Trailing modifiers attach to the most recent verb.
        while let Some(unit) = u.get(j) {
            let verb_arg = FactArg::word(current.clone());
            if is_comma(unit) {
                j += 1;
            } else if unit.is_open(Pos::Adverb) {
                self.emit(RelationKind::VerbModifier, vec![FactArg::phrase(unit.lexemes.clone()), verb_arg]);
                j += 1;
            } else if is_marker(unit) && u.get(j + 1).is_some_and(is_gerund) {
                let end = to_comma(u, j);
                self.emit(RelationKind::ClauseModifierVerb, vec![FactArg::phrase(lexemes_of(&u[j..end])), verb_arg]);
                j = end;
            } else if unit.class == WordClass::Preposition {
                match self.scan_nps(u, j + 1, None) {
                    Some((nps, k, p)) => {
                        self.commit(p);
                        self.emit(RelationKind::PhraseModifierVerb, vec![prep_arg(unit, &nps), verb_arg]);
                        j = k;
                    }
                    None => j += 1,
                }
            } else if unit.is("and") && starts_vp(u, j + 1) {
                let mut inner = Leading::default();
                let (v, end) = self.vp(u, j + 1, subject, &mut inner);
                j = end;
                if let Some(v) = v {
                    current = v;
                }
            } else {
                let mut inner = Leading::default();
                let start = if unit.is("and") { j + 1 } else { j };
                let start = self.leading(u, start, &mut inner);
                match self.core(u, start, &mut inner) {
                    Some((_, _, end)) => return (Some(current), end),
                    None => j = start.max(j + 1),
                }
            }
        }
        (Some(current), j)
    }

    /// `be` followed by adjectives or numbers.
    fn copula(&mut self, u: &[Unit], mut j: usize, subject: &[NounPhrase]) -> usize {
        while let Some(unit) = u.get(j) {
            if unit.is_open(Pos::Adjective) || unit.is_open(Pos::Number) {
                self.emit(RelationKind::NounModifier, vec![FactArg::phrase(unit.lexemes.clone()), nps_arg(subject)]);
            } else if !(is_comma(unit) || unit.is("and") || unit.is_open(Pos::Adverb)) {
                break;
            }
            j += 1;
        }
        j
    }

    fn subordinate(&mut self, main: &[NounPhrase], verb: &Lexeme, sub: &[NounPhrase], sub_verb: &Lexeme) {
        for m in main {
            for s in sub {
                self.emit(
                    RelationKind::MainSubordinateClause,
                    vec![FactArg::clause(m.head.clone(), verb.clone()), FactArg::clause(s.head.clone(), sub_verb.clone())],
                );
            }
        }
        self.emit(RelationKind::SubjectVerbObject, vec![nps_arg(main), FactArg::word(verb.clone()), FactArg::Empty]);
    }
}

fn is_marker(u: &Unit) -> bool {
    matches!(u.class, WordClass::Marker | WordClass::Preposition)
}

/// Whether a verb phrase starts at `k`: optional adverbs, then a verb or an
/// auxiliary.
fn starts_vp(u: &[Unit], k: usize) -> bool {
    u[k.min(u.len())..]
        .iter()
        .find(|w| !w.is_open(Pos::Adverb))
        .is_some_and(|w| w.is_verb() || w.class == WordClass::Auxiliary)
}

fn prep_arg(prep: &Unit, nps: &[NounPhrase]) -> FactArg {
    FactArg::conjunction(
        nps.iter()
            .map(|np| {
                let mut words = prep.lexemes.clone();
                words.extend(np.head.iter().cloned());
                FactArg::phrase(words)
            })
            .collect(),
    )
}

fn same_lemmas(a: &[Lexeme], b: &[Lexeme]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.lemma() == y.lemma())
}
