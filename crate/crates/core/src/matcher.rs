//! Lexical matching of facts: synonyms, antonyms, taxonomy paths and
//! embedding similarity, plus the greedy one-to-one overlap between tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, ResourceError};
use crate::fact::{Fact, FactArg, FactTable, Lexeme, Pos};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    Synonym,
    Similar,
    AntonymConflict,
    NoMatch,
}

impl Verdict {
    pub fn is_match(self) -> bool {
        matches!(self, Verdict::Exact | Verdict::Synonym | Verdict::Similar)
    }

    /// Higher is a stronger match.
    pub fn rank(self) -> u8 {
        match self {
            Verdict::Exact => 4,
            Verdict::Synonym => 3,
            Verdict::Similar => 2,
            Verdict::NoMatch => 1,
            Verdict::AntonymConflict => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exact => "exact",
            Verdict::Synonym => "synonym",
            Verdict::Similar => "similar",
            Verdict::AntonymConflict => "antonym-conflict",
            Verdict::NoMatch => "no-match",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub verdict: Verdict,
    pub score: f64,
}

impl MatchResult {
    const EXACT: MatchResult = MatchResult { verdict: Verdict::Exact, score: 1.0 };
    const NONE: MatchResult = MatchResult { verdict: Verdict::NoMatch, score: 0.0 };
    const CONFLICT: MatchResult = MatchResult { verdict: Verdict::AntonymConflict, score: 0.0 };

    pub fn is_match(&self) -> bool {
        self.verdict.is_match()
    }
}

/// Immutable lexical resources. All lemmas are lowercased on load.
#[derive(Debug, Clone, Default)]
pub struct SemanticResources {
    synsets: BTreeMap<String, BTreeSet<String>>,
    antonyms: BTreeSet<(String, String)>,
    /// Undirected taxonomy edges (child-parent, both directions).
    edges: BTreeMap<String, BTreeSet<String>>,
    vectors: BTreeMap<String, Vec<f64>>,
    dim: usize,
    threshold: f64,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn two_columns<'a>(what: &'static str, line: usize, l: &'a str) -> Result<(&'a str, &'a str), FormatError> {
    match l.split('\t').collect::<Vec<_>>().as_slice() {
        [a, b] if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim(), b.trim())),
        cols => Err(FormatError::new(what, line, format!("expected 2 tab-separated columns, found {}", cols.len()))),
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl SemanticResources {
    /// Parses the four resource texts. Any of them may be empty.
    pub fn parse(synonyms: &str, antonyms: &str, taxonomy: &str, vectors: &str) -> Result<Self, ResourceError> {
        let mut res = SemanticResources { threshold: DEFAULT_THRESHOLD, ..Default::default() };
        for (n, l) in content_lines(synonyms) {
            let (lemma, ids) = two_columns("synonyms", n, l)?;
            let set = res.synsets.entry(lemma.to_lowercase()).or_default();
            for id in ids.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                set.insert(id.to_string());
            }
        }
        for (n, l) in content_lines(antonyms) {
            let (a, b) = two_columns("antonyms", n, l)?;
            res.antonyms.insert(ordered(&a.to_lowercase(), &b.to_lowercase()));
        }
        for (n, l) in content_lines(taxonomy) {
            let (child, parent) = two_columns("taxonomy", n, l)?;
            res.edges.entry(child.to_string()).or_default().insert(parent.to_string());
            res.edges.entry(parent.to_string()).or_default().insert(child.to_string());
        }
        for (n, l) in content_lines(vectors) {
            let mut parts = l.split_whitespace();
            let word = parts.next().unwrap_or_default().to_lowercase();
            let v = parts
                .map(|x| x.parse::<f64>().map_err(|_| FormatError::new("vectors", n, format!("bad number `{x}`"))))
                .collect::<Result<Vec<f64>, _>>()?;
            if v.is_empty() {
                return Err(FormatError::new("vectors", n, "no components").into());
            }
            if res.dim == 0 {
                res.dim = v.len();
            } else if v.len() != res.dim {
                return Err(ResourceError::DimensionMismatch { path: None, line: n, expected: res.dim, found: v.len() });
            }
            res.vectors.insert(word, v);
        }
        Ok(res)
    }

    /// Loads resources from files; errors name the offending path.
    pub fn load(synonyms: &Path, antonyms: &Path, taxonomy: &Path, vectors: &Path) -> Result<Self, ResourceError> {
        let read = |p: &Path| {
            fs::read_to_string(p)
                .map_err(|e| ResourceError::Format(FormatError::new("resource", 0, e.to_string()).at_path(p.display().to_string())))
        };
        let texts = [read(synonyms)?, read(antonyms)?, read(taxonomy)?, read(vectors)?];
        let paths = [synonyms, antonyms, taxonomy, vectors];
        Self::parse(&texts[0], &texts[1], &texts[2], &texts[3]).map_err(|e| match e {
            ResourceError::Format(f) => {
                let idx = ["synonyms", "antonyms", "taxonomy", "vectors"].iter().position(|w| *w == f.what).unwrap_or(0);
                ResourceError::Format(f.at_path(paths[idx].display().to_string()))
            }
            ResourceError::DimensionMismatch { line, expected, found, .. } => ResourceError::DimensionMismatch {
                path: Some(vectors.display().to_string()),
                line,
                expected,
                found,
            },
        })
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn synsets_of(&self, lemma: &str) -> Option<&BTreeSet<String>> {
        self.synsets.get(&lemma.to_lowercase())
    }

    pub fn synset_count(&self) -> usize {
        self.synsets.values().flatten().collect::<BTreeSet<_>>().len()
    }

    pub fn antonym_count(&self) -> usize {
        self.antonyms.len()
    }

    pub fn vector_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, lemma: &str) -> Option<&[f64]> {
        self.vectors.get(&lemma.to_lowercase()).map(Vec::as_slice)
    }

    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        self.antonyms.contains(&ordered(&a.to_lowercase(), &b.to_lowercase()))
    }

    /// Every lemma listed in the synonym file with the part of speech
    /// encoded in its first synset id (`name.n.01`, `name.v.01`, ...).
    pub fn lemmas_with_pos(&self) -> Vec<(&str, Pos)> {
        self.synsets
            .iter()
            .filter_map(|(lemma, ids)| {
                let code = ids.iter().next()?.split('.').nth(1)?;
                Some((lemma.as_str(), code.parse().ok()?))
            })
            .collect()
    }

    /// Shortest taxonomy path between any synset of `a` and any synset of `b`.
    pub fn path_length(&self, a: &str, b: &str) -> Option<usize> {
        let from = self.synsets_of(a)?;
        let to = self.synsets_of(b)?;
        let mut seen: BTreeSet<&str> = from.iter().map(String::as_str).collect();
        let mut queue: VecDeque<(&str, usize)> = from.iter().map(|s| (s.as_str(), 0)).collect();
        while let Some((node, d)) = queue.pop_front() {
            if to.contains(node) {
                return Some(d);
            }
            for next in self.edges.get(node).into_iter().flatten() {
                if seen.insert(next) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        None
    }

    /// Cosine similarity mapped to [0, 1].
    pub fn scaled_cosine(&self, a: &str, b: &str) -> Option<f64> {
        let (x, y) = (self.vector(a)?, self.vector(b)?);
        let dot: f64 = x.iter().zip(y).map(|(p, q)| p * q).sum();
        let norm = |v: &[f64]| v.iter().map(|p| p * p).sum::<f64>().sqrt();
        let denom = norm(x) * norm(y);
        if denom == 0.0 {
            return None;
        }
        Some(((dot / denom).clamp(-1.0, 1.0) + 1.0) / 2.0)
    }
}

enum Family {
    Taxonomy,
    Embedding,
    Other,
}

fn family(pos: Pos) -> Family {
    match pos {
        Pos::Noun | Pos::ProperNoun | Pos::Verb => Family::Taxonomy,
        Pos::Adjective | Pos::Adverb => Family::Embedding,
        _ => Family::Other,
    }
}

/// Compares two words.
pub fn term_match(a: &Lexeme, b: &Lexeme, res: &SemanticResources) -> MatchResult {
    let (la, lb) = (a.lemma().to_lowercase(), b.lemma().to_lowercase());
    if la == lb {
        return MatchResult::EXACT;
    }
    if let (Some(x), Some(y)) = (res.synsets_of(&la), res.synsets_of(&lb)) {
        if !x.is_disjoint(y) {
            return MatchResult { verdict: Verdict::Synonym, score: 1.0 };
        }
    }
    if res.are_antonyms(&la, &lb) {
        return MatchResult::CONFLICT;
    }
    let score = match (family(a.pos()), family(b.pos())) {
        (Family::Taxonomy, Family::Taxonomy) => res.path_length(&la, &lb).map(|d| 1.0 / (1.0 + d as f64)),
        (Family::Embedding, Family::Embedding) => res.scaled_cosine(&la, &lb),
        _ => None,
    };
    match score {
        Some(s) if s >= res.threshold => MatchResult { verdict: Verdict::Similar, score: s },
        Some(s) => MatchResult { verdict: Verdict::NoMatch, score: s },
        None => MatchResult::NONE,
    }
}

/// Folds per-position results: any conflict vetoes, any miss fails, and
/// otherwise the weakest verdict and lowest score win.
fn combine(results: impl IntoIterator<Item = MatchResult>) -> MatchResult {
    let mut out = MatchResult::EXACT;
    for r in results {
        if r.verdict == Verdict::AntonymConflict {
            return MatchResult::CONFLICT;
        }
        if r.verdict.rank() < out.verdict.rank() {
            out.verdict = r.verdict;
        }
        out.score = out.score.min(r.score);
    }
    out
}

fn seq_match(a: &[Lexeme], b: &[Lexeme], res: &SemanticResources) -> MatchResult {
    if a.len() != b.len() {
        let text = |s: &[Lexeme]| s.iter().map(|l| l.lemma().to_lowercase()).collect::<Vec<_>>().join(" ");
        return if text(a) == text(b) { MatchResult::EXACT } else { MatchResult::NONE };
    }
    let results: Vec<MatchResult> = a.iter().zip(b).map(|(x, y)| term_match(x, y, res)).collect();
    combine(results)
}

/// Compares two arguments position by position.
pub fn arg_match(a: &FactArg, b: &FactArg, res: &SemanticResources) -> MatchResult {
    match (a, b) {
        (FactArg::Empty, FactArg::Empty) => MatchResult::EXACT,
        (FactArg::Empty, _) | (_, FactArg::Empty) => MatchResult::NONE,
        (FactArg::Clause { noun: n1, verb: v1 }, FactArg::Clause { noun: n2, verb: v2 }) => {
            combine([seq_match(n1, n2, res), term_match(v1, v2, res)])
        }
        (FactArg::Clause { .. }, _) | (_, FactArg::Clause { .. }) => MatchResult::NONE,
        (FactArg::Conjunction(xs), FactArg::Conjunction(ys)) if xs.len() == ys.len() => {
            combine(xs.iter().zip(ys).map(|(x, y)| arg_match(x, y, res)).collect::<Vec<_>>())
        }
        (FactArg::Conjunction(_), _) | (_, FactArg::Conjunction(_)) => MatchResult::NONE,
        _ => seq_match(a.tokens(), b.tokens(), res),
    }
}

pub fn fact_match(f: &Fact, g: &Fact, res: &SemanticResources) -> MatchResult {
    if f.kind() != g.kind() || f.args().len() != g.args().len() {
        return MatchResult::NONE;
    }
    combine(f.args().iter().zip(g.args()).map(|(a, b)| arg_match(a, b, res)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchedPair {
    pub source: Fact,
    pub summary: Fact,
    pub result: MatchResult,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OverlapResult {
    pub matched: Vec<MatchedPair>,
    pub unmatched_summary: Vec<Fact>,
    pub unmatched_source: Vec<Fact>,
}

impl OverlapResult {
    pub fn overlap_count(&self) -> usize {
        self.matched.len()
    }
}

/// Greedy one-to-one matching. Summary facts, in table order, each claim the
/// best unclaimed source fact: highest score, then strongest verdict, then
/// earliest in table order.
pub fn overlap(source: &FactTable, summary: &FactTable, res: &SemanticResources) -> OverlapResult {
    let src: Vec<&Fact> = source.facts().collect();
    let mut claimed = vec![false; src.len()];
    let mut out = OverlapResult::default();
    for g in summary.facts() {
        let mut best: Option<(usize, MatchResult)> = None;
        for (i, f) in src.iter().enumerate() {
            if claimed[i] {
                continue;
            }
            let r = fact_match(f, g, res);
            if !r.is_match() {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, b)) => r.score > b.score || (r.score == b.score && r.verdict.rank() > b.verdict.rank()),
            };
            if better {
                best = Some((i, r));
            }
        }
        match best {
            Some((i, result)) => {
                claimed[i] = true;
                out.matched.push(MatchedPair { source: src[i].clone(), summary: g.clone(), result });
            }
            None => out.unmatched_summary.push(g.clone()),
        }
    }
    out.unmatched_source = src.iter().zip(&claimed).filter(|(_, c)| !**c).map(|(f, _)| (*f).clone()).collect();
    out
}
