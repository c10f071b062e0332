//! Fact-tree instantiation and document rendering.
//!
//! A document is built in three steps:
//!
//! 1. every node head and attribute of the tree is filled, by uniform choice
//!    from a literal set or by frequency-weighted sampling, giving the truth
//!    table and one slot value per `node.attribute` (plus `node.head`);
//! 2. the clause nodes are dealt round-robin into N sentences, N drawn
//!    uniformly from the configured range and capped at the number of clause
//!    nodes; each sentence derives its nodes' clause nonterminals joined by
//!    `;` and closed by the grammar's `Stop` nonterminal (or `.`);
//! 3. while deriving, a node's mention nonterminal `M` is expanded as
//!    `M_first` the first time and `M_ref` afterwards.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analyzer::{sample_key, sample_modifier, FrequencyTable};
use crate::error::GenerationError;
use crate::evaluator::EvaluationSettings;
use crate::extract::{noun_phrase_parts, NounPhrase};
use crate::fact::{make_fact, FactArg, FactTable, Lexeme, Pos, RelationKind, SlotValue};
use crate::grammar::{bind_slots, derive_from, parse_grammar, Grammar, Symbol, DEFAULT_MAX_DEPTH};
use crate::tokenize::{is_abbreviation, tokenize};
use crate::tree::{AbstractFactTree, Constraint, FactNode, NodeKind, Role};
use crate::vocab::{Unit, Vocabulary, WordClass};

/// Nonterminal closing every sentence, when the grammar defines it.
pub const STOP: &str = "Stop";

/// Inclusive range of sentences per document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceRange {
    pub min: usize,
    pub max: usize,
}

/// Generation settings. Paths are relative to the configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationConfig {
    pub domain: String,
    pub tree: String,
    pub grammar: String,
    pub frequencies: String,
    pub lexicon: String,
    #[serde(default)]
    pub seed: u64,
    pub sentences: SentenceRange,
    pub documents: usize,
    #[serde(default = "default_depth")]
    pub max_depth: usize,
    /// Scoring settings used by evaluation stages reading the same file.
    #[serde(default)]
    pub evaluation: EvaluationSettings,
}

fn default_depth() -> usize {
    DEFAULT_MAX_DEPTH
}

impl GenerationConfig {
    pub fn from_toml(text: &str) -> Result<Self, GenerationError> {
        let config: GenerationConfig = toml::from_str(text).map_err(|e| GenerationError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), GenerationError> {
        let bad = |m: &str| Err(GenerationError::Config(m.to_string()));
        if self.domain.trim().is_empty() {
            return bad("domain name is empty");
        }
        if self.sentences.min == 0 {
            return bad("sentences.min must be positive");
        }
        if self.sentences.min > self.sentences.max {
            return bad("sentences.min exceeds sentences.max");
        }
        if self.max_depth == 0 {
            return bad("max_depth must be positive");
        }
        if !(0.0..=1.0).contains(&self.evaluation.threshold) {
            return bad("evaluation.threshold must lie in [0, 1]");
        }
        let w = self.evaluation.weights;
        if [w.consistency, w.comprehensiveness, w.compression].iter().any(|x| !x.is_finite() || *x < 0.0) {
            return bad("evaluation weights must be finite and nonnegative");
        }
        Ok(())
    }
}

/// The parsed artifacts of one domain.
#[derive(Debug, Clone)]
pub struct DomainPack {
    pub name: String,
    pub tree: AbstractFactTree,
    pub grammar: Grammar,
    pub frequencies: FrequencyTable,
    pub vocab: Vocabulary,
}

impl DomainPack {
    /// Parses the four artifacts and checks that every nonterminal the tree
    /// names exists in the grammar.
    pub fn from_sources(
        name: &str,
        tree: &str,
        grammar: &str,
        frequencies: &str,
        lexicon: &str,
    ) -> Result<DomainPack, GenerationError> {
        let pack = DomainPack {
            name: name.to_string(),
            tree: AbstractFactTree::parse(tree).map_err(|e| GenerationError::Tree(e.to_string()))?,
            grammar: parse_grammar(grammar)?,
            frequencies: FrequencyTable::parse_tsv(frequencies)?,
            vocab: Vocabulary::parse_lexicon(lexicon)?,
        };
        for node in &pack.tree.nodes {
            let mut needed: Vec<String> = node.clause.iter().cloned().collect();
            if let Some(m) = &node.mention {
                needed.extend([m.clone(), format!("{m}_first"), format!("{m}_ref")]);
            }
            if let Some(missing) = needed.iter().find(|n| !pack.grammar.has_nonterminal(n)) {
                return Err(GenerationError::Tree(format!(
                    "node `{}` names nonterminal `{missing}`, which the grammar does not define",
                    node.name
                )));
            }
        }
        Ok(pack)
    }
}

/// Where a generated document came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDocument {
    pub id: String,
    pub text: String,
    pub sentences: Vec<String>,
    pub truth: FactTable,
    pub token_count: usize,
    pub provenance: Provenance,
    /// Fact (display form) to the indices of the sentences realizing it.
    pub realization: BTreeMap<String, Vec<usize>>,
}

/// A resolved attribute value.
#[derive(Debug, Clone)]
struct Value {
    surface: String,
    units: Vec<Unit>,
}

impl Value {
    fn lexemes(&self) -> Vec<Lexeme> {
        self.units.iter().flat_map(|u| u.lexemes.iter().cloned()).collect()
    }
}

struct Ctx<'a, R: Rng + ?Sized> {
    freq: &'a FrequencyTable,
    vocab: &'a Vocabulary,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Ctx<'_, R> {
    fn units(&self, text: &str) -> Result<Value, String> {
        let units = self.vocab.units(text);
        if let Some(u) = units.iter().find(|u| !u.known && u.class != WordClass::Open(Pos::Number)) {
            return Err(format!("`{}` is not in the lexicon", u.lower()));
        }
        if units.is_empty() {
            return Err("empty value".into());
        }
        Ok(Value { surface: text.split_whitespace().collect::<Vec<_>>().join(" "), units })
    }

    /// The lexicon surface for a sampled key (a surface or a lemma).
    fn surface_for(&self, key: &str, pos: Option<Pos>) -> Result<String, String> {
        let entry = self
            .vocab
            .lookup(key)
            .filter(|e| pos.is_none_or(|p| e.pos == p))
            .or_else(|| self.vocab.by_lemma(key, pos))
            .or_else(|| self.vocab.by_lemma(key, None))
            .ok_or_else(|| format!("sampled `{key}` is not in the lexicon"))?;
        Ok(entry.lexemes.iter().map(Lexeme::surface).collect::<Vec<_>>().join(" "))
    }

    fn pick_literal(&mut self, options: &[String]) -> String {
        options[self.rng.random_range(0..options.len())].clone()
    }

    /// Resolves one value of a non-ref constraint. `head_lemma` is the node's
    /// own head for `paired(category)`.
    fn resolve(&mut self, c: &Constraint, head_lemma: Option<&str>, pos: Option<Pos>) -> Result<Value, String> {
        let text = match c {
            Constraint::Literal(options) => self.pick_literal(options),
            Constraint::Category(cat) => {
                let key = sample_key(self.freq, cat, self.rng).map_err(|e| e.to_string())?.to_string();
                self.surface_for(&key, pos)?
            }
            Constraint::Paired { category, heads } if heads.is_empty() => {
                let head = head_lemma.ok_or("paired(...) without a head")?;
                let m = sample_modifier(self.freq, category, head, self.rng).map_err(|e| e.to_string())?.to_string();
                self.surface_for(&m, pos)?
            }
            Constraint::Paired { category, heads } => {
                let head = self.pick_literal(heads);
                let head_unit = self.units(&head)?;
                let lemma = head_unit.lexemes().iter().map(Lexeme::lemma).collect::<Vec<_>>().join(" ");
                let m = sample_modifier(self.freq, category, &lemma, self.rng).map_err(|e| e.to_string())?.to_string();
                format!("{} {head}", self.surface_for(&m, Some(Pos::Adjective))?)
            }
            Constraint::Ref(_) => return Err("ref(...) has no value of its own".into()),
        };
        self.units(&text)
    }

    /// Up to `n` distinct values (distinct heads for head-list pairs).
    fn resolve_many(&mut self, c: &Constraint, n: usize) -> Result<Vec<Value>, String> {
        match c {
            Constraint::Literal(options) | Constraint::Paired { heads: options, .. } if !options.is_empty() => {
                if n > options.len() {
                    return Err(format!("pick={n} exceeds the {} candidates", options.len()));
                }
                let chosen: Vec<String> = sample(self.rng, options.len(), n).into_iter().map(|i| options[i].clone()).collect();
                chosen
                    .into_iter()
                    .map(|o| match c {
                        Constraint::Paired { category, .. } => {
                            self.resolve(&Constraint::Paired { category: category.clone(), heads: vec![o] }, None, None)
                        }
                        _ => self.units(&o),
                    })
                    .collect()
            }
            _ => {
                let mut out: Vec<Value> = Vec::new();
                for _ in 0..n * 20 {
                    if out.len() == n {
                        break;
                    }
                    let v = self.resolve(c, None, Some(Pos::Noun))?;
                    if !out.iter().any(|o| o.surface == v.surface) {
                        out.push(v);
                    }
                }
                if out.len() < n {
                    return Err(format!("could not draw {n} distinct values"));
                }
                Ok(out)
            }
        }
    }
}

fn single_unit(v: &Value, ok: impl Fn(&Unit) -> bool, what: &str) -> Result<Vec<Lexeme>, String> {
    match v.units.as_slice() {
        [u] if ok(u) => Ok(u.lexemes.clone()),
        _ => Err(format!("`{}` must be a single {what}", v.surface)),
    }
}

fn noun_phrase(v: &Value) -> Result<NounPhrase, String> {
    noun_phrase_parts(&v.units).ok_or_else(|| format!("`{}` is not a noun phrase", v.surface))
}

fn head_lexeme(np: &NounPhrase) -> Option<Lexeme> {
    FactArg::phrase(np.head.clone()).as_entity()
}

struct Resolved {
    head: Vec<Lexeme>,
    surface: String,
}

/// Fills every slot of the tree and returns the complete truth table.
pub fn instantiate_fact_tree<R: Rng + ?Sized>(
    tree: &AbstractFactTree,
    freq: &FrequencyTable,
    vocab: &Vocabulary,
    rng: &mut R,
) -> Result<FactTable, GenerationError> {
    let mut ctx = Ctx { freq, vocab, rng };
    let mut table = FactTable::new();
    let unres = |node: &FactNode, attr: &str, reason: String| GenerationError::Unresolvable {
        node: node.name.clone(),
        attribute: attr.to_string(),
        reason,
    };
    let fact = |kind: RelationKind, args: Vec<FactArg>| make_fact(kind, args).map_err(GenerationError::from);

    let mut heads: BTreeMap<&str, Resolved> = BTreeMap::new();
    for node in &tree.nodes {
        let pos = match node.kind {
            NodeKind::Noun => Pos::Noun,
            NodeKind::Verb => Pos::Verb,
        };
        let value = ctx.resolve(&node.head, None, Some(pos)).map_err(|r| unres(node, "head", r))?;
        let head = match node.kind {
            NodeKind::Noun => single_unit(&value, Unit::is_nominal, "noun"),
            NodeKind::Verb => single_unit(&value, Unit::is_verb, "verb"),
        }
        .map_err(|r| unres(node, "head", r))?;
        if node.kind == NodeKind::Noun {
            if let Some(e) = FactArg::phrase(head.clone()).as_entity() {
                table.register_entity(e);
            }
        }
        table.set_slot(
            format!("{}.head", node.name),
            SlotValue { surface: value.surface.clone(), arg: FactArg::phrase(head.clone()) },
        );
        heads.insert(&node.name, Resolved { head, surface: value.surface });
    }

    let subject_of = |name: &str| -> Option<&Resolved> {
        let node = tree.node(name)?;
        let attr = node.attributes.iter().find(|a| a.role == Role::Subject)?;
        match &attr.constraint {
            Constraint::Ref(t) => heads.get(t.as_str()),
            _ => None,
        }
    };

    for node in &tree.nodes {
        let own = &heads[node.name.as_str()];
        let h = FactArg::phrase(own.head.clone());
        let head_lemma = own.head.iter().map(Lexeme::lemma).collect::<Vec<_>>().join(" ");
        let mut subject = None;
        let mut object = FactArg::Empty;
        for attr in &node.attributes {
            let slot = format!("{}.{}", node.name, attr.name);
            let err = |r: String| unres(node, &attr.name, r);
            let target = match &attr.constraint {
                Constraint::Ref(t) => Some(&heads[t.as_str()]),
                _ => None,
            };
            let (surface, arg) = match (&attr.role, target) {
                (Role::Subject, Some(t)) => {
                    subject = Some(FactArg::phrase(t.head.clone()));
                    (t.surface.clone(), FactArg::phrase(t.head.clone()))
                }
                (Role::Object, Some(t)) => {
                    object = FactArg::phrase(t.head.clone());
                    (t.surface.clone(), object.clone())
                }
                (Role::Complement, Some(t)) => {
                    let Constraint::Ref(t_name) = &attr.constraint else { unreachable!() };
                    let main = subject_of(&node.name).ok_or_else(|| err("main clause has no subject".into()))?;
                    let sub = subject_of(t_name).ok_or_else(|| err(format!("`{t_name}` has no subject")))?;
                    let verb = |r: &Resolved| r.head[0].clone();
                    let arg = FactArg::clause(sub.head.clone(), verb(t));
                    table.insert(fact(
                        RelationKind::MainSubordinateClause,
                        vec![FactArg::clause(main.head.clone(), verb(own)), arg.clone()],
                    )?);
                    (t.surface.clone(), arg)
                }
                (Role::PhraseNoun(prep) | Role::PhraseVerb(prep), _) => {
                    let np = match target {
                        Some(t) => NounPhrase {
                            head: t.head.clone(),
                            premodifiers: Vec::new(),
                            features: Default::default(),
                            determiner: false,
                        },
                        None => {
                            let v = ctx.resolve(&attr.constraint, None, None).map_err(err)?;
                            let np = noun_phrase(&v).map_err(err)?;
                            add_np_facts(&mut table, &np)?;
                            table.set_slot(slot.clone(), SlotValue { surface: v.surface.clone(), arg: FactArg::Empty });
                            np
                        }
                    };
                    let mut words = ctx.units(prep).map_err(err)?.lexemes();
                    words.extend(np.head.iter().cloned());
                    let arg = FactArg::phrase(words);
                    let kind = if matches!(attr.role, Role::PhraseNoun(_)) {
                        RelationKind::PhraseModifierNoun
                    } else {
                        RelationKind::PhraseModifierVerb
                    };
                    table.insert(fact(kind, vec![arg.clone(), h.clone()])?);
                    let surface = match target {
                        Some(t) => t.surface.clone(),
                        None => table.slot(&slot).map(|s| s.surface.clone()).unwrap_or_default(),
                    };
                    (surface, arg)
                }
                (_, Some(_)) => return Err(err("ref(...) is not allowed for this role".into())),
                (Role::NounModifier | Role::VerbModifier, None) => {
                    let want = if attr.role == Role::NounModifier { Pos::Adjective } else { Pos::Adverb };
                    let v = ctx.resolve(&attr.constraint, Some(&head_lemma), Some(want)).map_err(err)?;
                    let lexemes = if attr.role == Role::NounModifier {
                        single_unit(
                            &v,
                            |u| u.is_open(Pos::Adjective) || u.is_open(Pos::Number) || u.is_nominal(),
                            "adjective, number or noun",
                        )
                    } else {
                        single_unit(&v, |u| u.is_open(Pos::Adverb), "adverb")
                    }
                    .map_err(err)?;
                    let kind = if attr.role == Role::NounModifier {
                        RelationKind::NounModifier
                    } else {
                        RelationKind::VerbModifier
                    };
                    let arg = FactArg::phrase(lexemes);
                    table.insert(fact(kind, vec![arg.clone(), h.clone()])?);
                    (v.surface, arg)
                }
                (Role::ClauseNoun | Role::ClauseVerb, None) => {
                    let v = ctx.resolve(&attr.constraint, None, None).map_err(err)?;
                    let kind = if attr.role == Role::ClauseNoun {
                        RelationKind::ClauseModifierNoun
                    } else {
                        RelationKind::ClauseModifierVerb
                    };
                    let arg = FactArg::phrase(v.lexemes());
                    table.insert(fact(kind, vec![arg.clone(), h.clone()])?);
                    (v.surface, arg)
                }
                (Role::Svo(verb), None) => {
                    let verb_value = ctx.units(verb).map_err(err)?;
                    let verb_lex = single_unit(&verb_value, Unit::is_verb, "verb").map_err(err)?;
                    let values = ctx.resolve_many(&attr.constraint, attr.pick).map_err(err)?;
                    let mut rendered = Vec::new();
                    let mut objects = Vec::new();
                    for v in &values {
                        let np = noun_phrase(v).map_err(err)?;
                        let article = !np.determiner && !np.features.plural && np.head.iter().all(|l| l.pos() == Pos::Noun);
                        let mut np = np;
                        if article {
                            np.determiner = true;
                            rendered.push(format!("a {}", v.surface));
                        } else {
                            rendered.push(v.surface.clone());
                        }
                        add_np_facts(&mut table, &np)?;
                        objects.push(FactArg::phrase(np.head.clone()));
                    }
                    let arg = FactArg::conjunction(objects);
                    table.insert(fact(
                        RelationKind::SubjectVerbObject,
                        vec![h.clone(), FactArg::word(verb_lex[0].clone()), arg.clone()],
                    )?);
                    (rendered.join(" and "), arg)
                }
                (Role::Subject | Role::Object | Role::Complement, None) => {
                    return Err(err("must be a ref(...) constraint".into()))
                }
            };
            table.set_slot(slot, SlotValue { surface, arg });
        }
        if node.kind == NodeKind::Verb {
            let subject = subject.ok_or_else(|| unres(node, "subject", "verb node without subject".into()))?;
            table.insert(fact(
                RelationKind::SubjectVerbObject,
                vec![subject, FactArg::word(own.head[0].clone()), object],
            )?);
        }
    }
    Ok(table)
}

/// NounModifier facts for premodifiers, and the entity for determined phrases.
fn add_np_facts(table: &mut FactTable, np: &NounPhrase) -> Result<(), GenerationError> {
    let head = FactArg::phrase(np.head.clone());
    for m in &np.premodifiers {
        table.insert(make_fact(RelationKind::NounModifier, vec![FactArg::phrase(m.clone()), head.clone()])?);
    }
    if np.determiner {
        if let Some(e) = head_lexeme(np) {
            table.register_entity(e);
        }
    }
    Ok(())
}

/// Joins derived tokens into a sentence: no space before punctuation, stray
/// commas dropped, `a` becomes `an` before a vowel, a period after an
/// abbreviation is absorbed, and the first letter is capitalized.
pub fn render_sentence(tokens: &[String]) -> String {
    let mut out: Vec<String> = Vec::new();
    for tok in tokens {
        let t = tok.as_str();
        match t {
            "," if out.last().is_none_or(|l| l == "," || l == ";") => continue,
            ";" | "." | "!" | "?" => {
                while out.last().is_some_and(|l| l == ",") {
                    out.pop();
                }
                if t == "." && out.last().is_some_and(|l| is_abbreviation(l) && l.ends_with('.')) {
                    continue;
                }
            }
            _ => {}
        }
        out.push(t.to_string());
    }
    while out.last().is_some_and(|l| l == ",") {
        out.pop();
    }
    for i in 0..out.len().saturating_sub(1) {
        let next_vowel = out[i + 1].chars().next().is_some_and(|c| "aeiouAEIOU".contains(c));
        if next_vowel && (out[i] == "a" || out[i] == "A") {
            out[i].push('n');
        }
    }
    let mut text = String::new();
    for (i, t) in out.iter().enumerate() {
        let attach = matches!(t.as_str(), "," | ";" | "." | "!" | "?" | ":" | ")") || out[i.saturating_sub(1)] == "(";
        if i > 0 && !attach {
            text.push(' ');
        }
        text.push_str(t);
    }
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => text,
    }
}

/// Renders one document from an instantiated table.
pub fn render_document<R: Rng + ?Sized>(
    pack: &DomainPack,
    table: &FactTable,
    rng: &mut R,
    sentences: SentenceRange,
    max_depth: usize,
) -> Result<Vec<String>, GenerationError> {
    let clauses: Vec<&str> = pack.tree.clause_nodes().filter_map(|n| n.clause.as_deref()).collect();
    if clauses.is_empty() {
        return Err(GenerationError::Tree("no node has a clause nonterminal".into()));
    }
    let n = rng.random_range(sentences.min..=sentences.max).clamp(1, clauses.len());
    let mut groups: Vec<Vec<&str>> = vec![Vec::new(); n];
    for (i, c) in clauses.iter().enumerate() {
        groups[i % n].push(c);
    }
    let bound = bind_slots(&pack.grammar, table)?;
    let mentions: BTreeSet<&str> = pack.tree.nodes.iter().filter_map(|n| n.mention.as_deref()).collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut redirect = |name: &str| -> Option<String> {
        if !mentions.contains(name) {
            return None;
        }
        Some(if seen.insert(name.to_string()) { format!("{name}_first") } else { format!("{name}_ref") })
    };
    let stop = if pack.grammar.has_nonterminal(STOP) {
        Symbol::Nonterminal(STOP.to_string())
    } else {
        Symbol::Literal(".".to_string())
    };
    let mut out = Vec::new();
    for group in groups {
        let mut symbols = Vec::new();
        for (i, c) in group.iter().enumerate() {
            if i > 0 {
                symbols.push(Symbol::Literal(";".to_string()));
            }
            symbols.push(Symbol::Nonterminal(c.to_string()));
        }
        symbols.push(stop.clone());
        let tokens = derive_from(&bound, &symbols, rng, max_depth, &mut redirect)?;
        out.push(render_sentence(&tokens));
    }
    Ok(out)
}

/// Maps each truth fact to the sentences containing all of its argument lemmas.
pub fn realization_map(
    truth: &FactTable,
    sentences: &[String],
    vocab: &Vocabulary,
) -> Result<BTreeMap<String, Vec<usize>>, GenerationError> {
    let lemma_sets: Vec<BTreeSet<String>> = sentences
        .iter()
        .map(|s| vocab.units(s).iter().flat_map(|u| u.lexemes.iter().map(|l| l.lemma().to_string())).collect())
        .collect();
    let mut map = BTreeMap::new();
    let mut missing = Vec::new();
    for fact in truth.facts() {
        let lemmas: Vec<String> =
            fact.args().iter().flat_map(|a| a.lexemes()).map(|l| l.lemma().to_string()).collect();
        let hits: Vec<usize> =
            (0..sentences.len()).filter(|&i| lemmas.iter().all(|l| lemma_sets[i].contains(l))).collect();
        if hits.is_empty() {
            missing.push(fact.to_string());
        }
        map.insert(fact.to_string(), hits);
    }
    if missing.is_empty() {
        Ok(map)
    } else {
        Err(GenerationError::Unrealized(missing))
    }
}

/// One document from a seed.
pub fn generate_document(
    pack: &DomainPack,
    id: &str,
    seed: u64,
    sentences: SentenceRange,
    max_depth: usize,
    config_hash: &str,
) -> Result<SyntheticDocument, GenerationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth = instantiate_fact_tree(&pack.tree, &pack.frequencies, &pack.vocab, &mut rng)?;
    let sentences = render_document(pack, &truth, &mut rng, sentences, max_depth)?;
    let realization = realization_map(&truth, &sentences, &pack.vocab)?;
    let text = sentences.join(" ");
    Ok(SyntheticDocument {
        id: id.to_string(),
        token_count: tokenize(&text).len(),
        text,
        sentences,
        truth,
        provenance: Provenance { config_hash: config_hash.to_string(), seed },
        realization,
    })
}

/// Document id for batch index `i`.
pub fn document_id(domain: &str, index: usize) -> String {
    format!("{domain}-{index:04}")
}

/// A batch: document `i` uses seed `config.seed + i`.
pub fn generate_documents(
    pack: &DomainPack,
    config: &GenerationConfig,
    config_hash: &str,
) -> Result<Vec<SyntheticDocument>, GenerationError> {
    config.validate()?;
    (0..config.documents)
        .map(|i| {
            generate_document(
                pack,
                &document_id(&config.domain, i),
                config.seed.wrapping_add(i as u64),
                config.sentences,
                config.max_depth,
                config_hash,
            )
            .map_err(|e| GenerationError::Document { index: i, source: Box::new(e) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split(' ').map(str::to_string).collect()
    }

    #[test]
    fn render_rules() {
        assert_eq!(render_sentence(&toks("a Asian restaurant , at 8 p.m. .")), "An Asian restaurant, at 8 p.m.");
        assert_eq!(render_sentence(&toks("men , who fled , ; the police , .")), "Men, who fled; the police.");
        assert_eq!(render_sentence(&toks("3 men ( armed ) left .")), "3 men (armed) left.");
        assert_eq!(render_sentence(&[]), "");
    }

    #[test]
    fn config_validation() {
        let ok = "domain = \"crime\"\ntree = \"t\"\ngrammar = \"g\"\nfrequencies = \"f\"\nlexicon = \"l\"\nseed = 5\ndocuments = 3\nsentences = { min = 1, max = 2 }\n";
        let c = GenerationConfig::from_toml(ok).unwrap();
        assert_eq!(c.max_depth, DEFAULT_MAX_DEPTH);
        assert_eq!(c.sentences, SentenceRange { min: 1, max: 2 });
        let bad = ok.replace("min = 1, max = 2", "min = 3, max = 2");
        assert!(matches!(GenerationConfig::from_toml(&bad), Err(GenerationError::Config(_))));
        let unknown = format!("{ok}colour = 1\n");
        assert!(GenerationConfig::from_toml(&unknown).is_err());
    }
}
