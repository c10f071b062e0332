//! Weighted context-free grammars with fact-bound slots.
//!
//! File format (UTF-8):
//!
//! ```text
//! # comment
//! S      -> Victim "got" {attack.head} "by" Suspects "." @2
//!         | Suspects {attack.head} Victim "."
//! Victim -> "a" {victim.sex} {victim.head}
//! ```
//!
//! Bare identifiers are nonterminals, double-quoted strings are literal
//! terminals (split on whitespace when derived, `""` derives nothing), and
//! `{object.attribute}` is a slot filled from a fact table. `@N` after an
//! alternative sets its weight (default 1). A line starting with `|`
//! continues the previous rule. The first rule's left-hand side is the start
//! symbol.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::GrammarError;
use crate::fact::FactTable;

pub const DEFAULT_MAX_DEPTH: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotRef {
    pub object: String,
    pub attribute: String,
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.object, self.attribute)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Nonterminal(String),
    Literal(String),
    Slot(SlotRef),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alternative {
    pub symbols: Vec<Symbol>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grammar {
    start: String,
    productions: BTreeMap<String, Vec<Alternative>>,
    warnings: Vec<String>,
}

impl Grammar {
    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn productions(&self) -> &BTreeMap<String, Vec<Alternative>> {
        &self.productions
    }

    pub fn alternatives(&self, nonterminal: &str) -> Option<&[Alternative]> {
        self.productions.get(nonterminal).map(Vec::as_slice)
    }

    pub fn has_nonterminal(&self, name: &str) -> bool {
        self.productions.contains_key(name)
    }

    /// Nonterminals unreachable from the start symbol, and nonterminals that
    /// cannot derive any terminal string.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn nonterminal_count(&self) -> usize {
        self.productions.len()
    }

    /// Every slot referenced anywhere in the grammar, sorted.
    pub fn slots(&self) -> BTreeSet<SlotRef> {
        self.productions
            .values()
            .flatten()
            .flat_map(|a| &a.symbols)
            .filter_map(|s| match s {
                Symbol::Slot(r) => Some(r.clone()),
                _ => None,
            })
            .collect()
    }

    /// Every literal terminal word, for vocabulary checks.
    pub fn literal_words(&self) -> BTreeSet<String> {
        self.productions
            .values()
            .flatten()
            .flat_map(|a| &a.symbols)
            .filter_map(|s| match s {
                Symbol::Literal(l) => Some(l.split_whitespace().map(str::to_string).collect::<Vec<_>>()),
                _ => None,
            })
            .flatten()
            .collect()
    }
}

struct Lexer<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Slot(SlotRef),
    Arrow,
    Bar,
    Weight(f64),
}

impl<'a> Lexer<'a> {
    fn err(&self, expected: impl Into<String>) -> GrammarError {
        GrammarError::Syntax { line: self.line, column: self.pos + 1, expected: expected.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Tok)>, GrammarError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let start = self.pos;
        let Some(c) = rest.chars().next() else { return Ok(None) };
        if c == '#' {
            self.pos = self.text.len();
            return Ok(None);
        }
        let tok = if rest.starts_with("->") {
            self.pos += 2;
            Tok::Arrow
        } else if c == '|' {
            self.pos += 1;
            Tok::Bar
        } else if c == '"' {
            let mut out = String::new();
            let mut chars = rest[1..].char_indices();
            loop {
                match chars.next() {
                    Some((i, '"')) => {
                        self.pos += i + 2;
                        break;
                    }
                    Some((_, '\\')) => match chars.next() {
                        Some((_, e)) => out.push(e),
                        None => return Err(self.err("closing quote")),
                    },
                    Some((_, ch)) => out.push(ch),
                    None => {
                        self.pos = self.text.len();
                        return Err(self.err("closing quote"));
                    }
                }
            }
            Tok::Str(out)
        } else if c == '{' {
            let Some(end) = rest.find('}') else {
                return Err(self.err("`}` closing the slot reference"));
            };
            let inner = rest[1..end].trim();
            let parts = inner.split_once('.').filter(|(o, a)| is_ident(o) && is_ident(a));
            let Some((object, attribute)) = parts else {
                return Err(self.err("slot reference of the form {object.attribute}"));
            };
            self.pos += end + 1;
            Tok::Slot(SlotRef { object: object.to_string(), attribute: attribute.to_string() })
        } else if c == '@' {
            let digits: String = rest[1..].chars().take_while(|c| c.is_ascii_digit() || *c == '.').collect();
            let weight: f64 = digits.parse().unwrap_or(0.0);
            if weight <= 0.0 || !weight.is_finite() {
                return Err(self.err("a positive weight after `@`"));
            }
            self.pos += 1 + digits.len();
            Tok::Weight(weight)
        } else if c.is_alphabetic() || c == '_' {
            let ident: String = rest.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
            self.pos += ident.len();
            Tok::Ident(ident)
        } else {
            return Err(self.err("a nonterminal, \"literal\", {slot}, `|`, `->` or `@weight`"));
        };
        Ok(Some((start, tok)))
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

/// Parses and validates a grammar: a start symbol must exist and every
/// right-hand-side nonterminal must have productions.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let mut productions: BTreeMap<String, Vec<Alternative>> = BTreeMap::new();
    let mut start: Option<String> = None;
    let mut first_use: BTreeMap<String, usize> = BTreeMap::new();
    let mut current: Option<String> = None;

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let syntax = |column: usize, expected: &str| GrammarError::Syntax { line: line_no, column, expected: expected.into() };
        let mut lx = Lexer { line: line_no, text: line, pos: 0 };
        let Some((_, first)) = lx.next()? else { continue };
        let lhs = match first {
            Tok::Ident(name) => {
                if !matches!(lx.next()?, Some((_, Tok::Arrow))) {
                    return Err(lx.err("`->` after the rule name"));
                }
                start.get_or_insert_with(|| name.clone());
                current = Some(name.clone());
                name
            }
            Tok::Bar => current.clone().ok_or_else(|| syntax(1, "a rule name before `|`"))?,
            _ => return Err(syntax(1, "a rule name")),
        };

        let alts = productions.entry(lhs).or_default();
        let mut alt = Alternative { symbols: Vec::new(), weight: 1.0 };
        let mut weighted = false;
        loop {
            let next = lx.next()?;
            let col = next.as_ref().map_or(line.len(), |(c, _)| *c) + 1;
            match next {
                None | Some((_, Tok::Bar)) => {
                    if alt.symbols.is_empty() {
                        return Err(syntax(col, "at least one symbol in the alternative"));
                    }
                    alts.push(std::mem::replace(&mut alt, Alternative { symbols: Vec::new(), weight: 1.0 }));
                    weighted = false;
                    if next.is_none() {
                        break;
                    }
                }
                Some((_, Tok::Weight(w))) if !weighted => {
                    alt.weight = w;
                    weighted = true;
                }
                Some(_) if weighted => return Err(syntax(col, "`|` or end of line after a weight")),
                Some((_, Tok::Ident(name))) => {
                    first_use.entry(name.clone()).or_insert(line_no);
                    alt.symbols.push(Symbol::Nonterminal(name));
                }
                Some((_, Tok::Str(s))) => alt.symbols.push(Symbol::Literal(s)),
                Some((_, Tok::Slot(r))) => alt.symbols.push(Symbol::Slot(r)),
                Some((_, Tok::Arrow)) => return Err(syntax(col, "a symbol (one rule per line)")),
                Some((_, Tok::Weight(_))) => unreachable!("guarded above"),
            }
        }
    }

    let start = start.ok_or(GrammarError::Empty)?;
    if let Some((name, line)) = first_use.iter().find(|(n, _)| !productions.contains_key(*n)) {
        return Err(GrammarError::Dangling { name: name.clone(), line: *line });
    }
    let warnings = lint(&start, &productions);
    Ok(Grammar { start, productions, warnings })
}

fn lint(start: &str, productions: &BTreeMap<String, Vec<Alternative>>) -> Vec<String> {
    let mut reachable = BTreeSet::from([start.to_string()]);
    let mut stack = vec![start.to_string()];
    while let Some(nt) = stack.pop() {
        for alt in &productions[&nt] {
            for sym in &alt.symbols {
                if let Symbol::Nonterminal(n) = sym {
                    if reachable.insert(n.clone()) {
                        stack.push(n.clone());
                    }
                }
            }
        }
    }
    let mut productive: BTreeSet<&str> = BTreeSet::new();
    loop {
        let before = productive.len();
        for (nt, alts) in productions {
            let ok = alts.iter().any(|a| {
                a.symbols.iter().all(|s| match s {
                    Symbol::Nonterminal(n) => productive.contains(n.as_str()),
                    _ => true,
                })
            });
            if ok {
                productive.insert(nt);
            }
        }
        if productive.len() == before {
            break;
        }
    }
    let mut warnings = Vec::new();
    for nt in productions.keys() {
        if !reachable.contains(nt) {
            warnings.push(format!("nonterminal `{nt}` is unreachable from `{start}`"));
        }
        if !productive.contains(nt.as_str()) {
            warnings.push(format!("nonterminal `{nt}` cannot derive a terminal string"));
        }
    }
    warnings
}

/// A grammar whose slots all have surface text.
#[derive(Debug, Clone)]
pub struct BoundGrammar<'g> {
    grammar: &'g Grammar,
    bindings: BTreeMap<String, String>,
}

impl<'g> BoundGrammar<'g> {
    pub fn grammar(&self) -> &'g Grammar {
        self.grammar
    }

    pub fn bindings(&self) -> &BTreeMap<String, String> {
        &self.bindings
    }

    pub fn binding(&self, slot: &SlotRef) -> Option<&str> {
        self.bindings.get(&slot.to_string()).map(String::as_str)
    }
}

/// Resolves every slot against the table's recorded attribute values.
pub fn bind_slots<'g>(grammar: &'g Grammar, table: &FactTable) -> Result<BoundGrammar<'g>, GrammarError> {
    bind_with(grammar, |slot| table.slot(slot).map(|v| v.surface.clone()))
}

/// Resolves every slot with a lookup function; unresolved slots are all
/// reported together.
pub fn bind_with<'g>(
    grammar: &'g Grammar,
    mut lookup: impl FnMut(&str) -> Option<String>,
) -> Result<BoundGrammar<'g>, GrammarError> {
    let mut bindings = BTreeMap::new();
    let mut missing = Vec::new();
    for slot in grammar.slots() {
        let name = slot.to_string();
        match lookup(&name) {
            Some(v) => {
                bindings.insert(name, v);
            }
            None => missing.push(name),
        }
    }
    if missing.is_empty() {
        Ok(BoundGrammar { grammar, bindings })
    } else {
        Err(GrammarError::UnboundSlots(missing))
    }
}

/// Leftmost derivation from the start symbol. Alternatives are chosen with
/// probability proportional to their weight.
pub fn derive<R: Rng + ?Sized>(bound: &BoundGrammar<'_>, rng: &mut R, max_depth: usize) -> Result<Vec<String>, GrammarError> {
    let start = [Symbol::Nonterminal(bound.grammar.start.clone())];
    derive_from(bound, &start, rng, max_depth, &mut |_| None)
}

/// Leftmost derivation of a symbol sequence. Before a nonterminal is
/// expanded, `redirect` may substitute another nonterminal for it (used for
/// first-mention/re-mention choices that depend on derivation order).
pub fn derive_from<R: Rng + ?Sized>(
    bound: &BoundGrammar<'_>,
    symbols: &[Symbol],
    rng: &mut R,
    max_depth: usize,
    redirect: &mut dyn FnMut(&str) -> Option<String>,
) -> Result<Vec<String>, GrammarError> {
    if max_depth == 0 {
        return Err(GrammarError::ZeroDepth);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(&Symbol, usize)> = symbols.iter().rev().map(|s| (s, 0)).collect();
    while let Some((sym, depth)) = stack.pop() {
        match sym {
            Symbol::Literal(s) => out.extend(s.split_whitespace().map(str::to_string)),
            Symbol::Slot(r) => {
                let v = bound.binding(r).ok_or_else(|| GrammarError::UnboundSlots(vec![r.to_string()]))?;
                out.extend(v.split_whitespace().map(str::to_string));
            }
            Symbol::Nonterminal(name) => {
                if depth >= max_depth {
                    return Err(GrammarError::DepthExceeded(max_depth));
                }
                let target = redirect(name).unwrap_or_else(|| name.clone());
                let alts = bound
                    .grammar
                    .productions
                    .get(&target)
                    .ok_or_else(|| GrammarError::UnknownNonterminal(target.clone()))?;
                let choice = if alts.len() == 1 {
                    0
                } else {
                    let dist = WeightedIndex::new(alts.iter().map(|a| a.weight)).expect("weights are positive");
                    dist.sample(rng)
                };
                for s in alts[choice].symbols.iter().rev() {
                    stack.push((s, depth + 1));
                }
            }
        }
    }
    Ok(out)
}
