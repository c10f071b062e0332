//! Scores, per-document reports and the aggregate table.
//!
//! ```text
//! consistency       = overlap / summary facts      (1.0, flagged, when there are none)
//! comprehensiveness = overlap / source facts
//! compression       = 100 * summary tokens / source tokens
//! overall           = weighted harmonic mean(consistency, comprehensiveness)
//!                     * max(0, 1 - w_cr * compression / 100), clamped to [0, 1]
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::extract::{extract_facts, ExtractionVocabulary};
use crate::fact::{Fact, FactTable};
use crate::matcher::{overlap, OverlapResult, SemanticResources, DEFAULT_THRESHOLD};
use crate::tokenize::tokenize;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 7] =
    ["id", "backend", "consistency", "comprehensiveness", "compression", "overall", "status"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreWeights {
    pub consistency: f64,
    pub comprehensiveness: f64,
    pub compression: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights { consistency: 1.0, comprehensiveness: 1.0, compression: 1.0 }
    }
}

/// Evaluation settings, read from the `[evaluation]` table of a run config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvaluationSettings {
    pub threshold: f64,
    pub weights: ScoreWeights,
}

impl Default for EvaluationSettings {
    fn default() -> Self {
        EvaluationSettings { threshold: DEFAULT_THRESHOLD, weights: ScoreWeights::default() }
    }
}

/// Overlap over summary facts. The flag is set for an empty summary table.
pub fn factual_consistency(overlap_count: usize, summary_facts: usize) -> (f64, bool) {
    if summary_facts == 0 {
        (1.0, true)
    } else {
        (overlap_count as f64 / summary_facts as f64, false)
    }
}

/// Overlap over source facts.
pub fn comprehensiveness(overlap_count: usize, source_facts: usize) -> Result<f64, EvalError> {
    if source_facts == 0 {
        return Err(EvalError::EmptySource);
    }
    Ok(overlap_count as f64 / source_facts as f64)
}

/// Summary tokens per 100 source tokens. May exceed 100 for summaries longer than the source.
pub fn compression_rate(source_tokens: usize, summary_tokens: usize) -> Result<f64, EvalError> {
    if source_tokens == 0 {
        return Err(EvalError::ZeroSourceTokens);
    }
    Ok(100.0 * summary_tokens as f64 / source_tokens as f64)
}

pub fn overall_score(consistency: f64, comprehensiveness: f64, compression: f64, w: &ScoreWeights) -> f64 {
    let total = w.consistency + w.comprehensiveness;
    let terms = [(w.consistency, consistency), (w.comprehensiveness, comprehensiveness)];
    if total <= 0.0 || terms.iter().any(|&(wt, x)| wt > 0.0 && x <= 0.0) {
        return 0.0;
    }
    let denom: f64 = terms.iter().filter(|(wt, _)| *wt > 0.0).map(|(wt, x)| wt / x).sum();
    let harmonic = total / denom;
    let penalty = (1.0 - w.compression * compression / 100.0).max(0.0);
    (harmonic * penalty).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub factual_consistency: f64,
    pub comprehensiveness: f64,
    pub compression_rate: f64,
    pub overall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub source_facts: usize,
    pub summary_facts: usize,
    pub overlap: usize,
    pub source_tokens: usize,
    pub summary_tokens: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub empty_summary: bool,
    pub over_length: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedEntry {
    pub source: String,
    pub summary: String,
    pub verdict: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Hallucinated {
    /// Every argument word occurs in the source document.
    pub intrinsic: Vec<String>,
    pub extrinsic: Vec<String>,
}

impl Hallucinated {
    pub fn len(&self) -> usize {
        self.intrinsic.len() + self.extrinsic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub document_id: String,
    pub backend_id: String,
    /// Set when the backend failed; scores are then absent.
    pub error: Option<String>,
    pub scores: Option<Scores>,
    pub counts: Counts,
    pub flags: Flags,
    pub weights: ScoreWeights,
    pub summary: String,
    pub matched: Vec<MatchedEntry>,
    pub hallucinated: Hallucinated,
    pub missed: Vec<String>,
}

/// The source side of an evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SourceDocument<'a> {
    pub id: &'a str,
    pub text: &'a str,
    pub truth: &'a FactTable,
}

impl EvaluationReport {
    pub fn failed(document_id: &str, backend_id: &str, error: &str, weights: ScoreWeights) -> Self {
        EvaluationReport {
            schema_version: SCHEMA_VERSION,
            document_id: document_id.to_string(),
            backend_id: backend_id.to_string(),
            error: Some(error.to_string()),
            scores: None,
            counts: Counts::default(),
            flags: Flags::default(),
            weights,
            summary: String::new(),
            matched: Vec::new(),
            hallucinated: Hallucinated::default(),
            missed: Vec::new(),
        }
    }

    pub fn is_failure(&self) -> bool {
        self.error.is_some()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn source_lemmas(text: &str, vocab: &ExtractionVocabulary) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = tokenize(text).iter().map(|t| t.to_lowercase()).collect();
    for u in vocab.vocabulary().units(text) {
        out.extend(u.lexemes.iter().map(|l| l.lemma().to_lowercase()));
    }
    out
}

fn is_intrinsic(f: &Fact, lemmas: &BTreeSet<String>) -> bool {
    f.args().iter().flat_map(|a| a.lexemes()).all(|l| lemmas.contains(&l.lemma().to_lowercase()))
}

/// Assembles a report from an overlap already computed.
pub fn build_report(
    doc: SourceDocument<'_>,
    summary: &str,
    summary_facts: &FactTable,
    overlap: &OverlapResult,
    backend_id: &str,
    vocab: &ExtractionVocabulary,
    weights: ScoreWeights,
) -> Result<EvaluationReport, EvalError> {
    let summary = summary.trim_end();
    let counts = Counts {
        source_facts: doc.truth.len(),
        summary_facts: summary_facts.len(),
        overlap: overlap.overlap_count(),
        source_tokens: tokenize(doc.text).len(),
        summary_tokens: tokenize(summary).len(),
    };
    let (consistency, empty_summary) = factual_consistency(counts.overlap, counts.summary_facts);
    let comp = comprehensiveness(counts.overlap, counts.source_facts)?;
    let cr = compression_rate(counts.source_tokens, counts.summary_tokens)?;
    let lemmas = source_lemmas(doc.text, vocab);
    let mut hallucinated = Hallucinated::default();
    for f in &overlap.unmatched_summary {
        let bucket = if is_intrinsic(f, &lemmas) { &mut hallucinated.intrinsic } else { &mut hallucinated.extrinsic };
        bucket.push(f.to_string());
    }
    Ok(EvaluationReport {
        schema_version: SCHEMA_VERSION,
        document_id: doc.id.to_string(),
        backend_id: backend_id.to_string(),
        error: None,
        scores: Some(Scores {
            factual_consistency: consistency,
            comprehensiveness: comp,
            compression_rate: cr,
            overall: overall_score(consistency, comp, cr, &weights),
        }),
        counts,
        flags: Flags { empty_summary, over_length: counts.summary_tokens > counts.source_tokens },
        weights,
        summary: summary.to_string(),
        matched: overlap
            .matched
            .iter()
            .map(|m| MatchedEntry {
                source: m.source.to_string(),
                summary: m.summary.to_string(),
                verdict: m.result.verdict.as_str().to_string(),
                score: m.result.score,
            })
            .collect(),
        hallucinated,
        missed: overlap.unmatched_source.iter().map(|f| f.to_string()).collect(),
    })
}

/// Extract, match and score one summary.
pub fn evaluate_summary(
    doc: SourceDocument<'_>,
    summary: &str,
    backend_id: &str,
    vocab: &ExtractionVocabulary,
    res: &SemanticResources,
    weights: ScoreWeights,
) -> Result<EvaluationReport, EvalError> {
    let summary = summary.trim_end();
    let facts = extract_facts(summary, vocab);
    let ov = overlap(doc.truth, &facts, res);
    build_report(doc, summary, &facts, &ov, backend_id, vocab, weights)
}

/// The aggregate table, rows sorted by document id then backend.
pub fn aggregate_csv(reports: &[EvaluationReport]) -> String {
    let mut sorted: Vec<&EvaluationReport> = reports.iter().collect();
    sorted.sort_by(|a, b| (&a.document_id, &a.backend_id).cmp(&(&b.document_id, &b.backend_id)));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in sorted {
        let mut row = vec![r.document_id.clone(), r.backend_id.clone()];
        match &r.scores {
            Some(s) => {
                row.extend(
                    [s.factual_consistency, s.comprehensiveness, s.compression_rate, s.overall].map(|x| x.to_string()),
                );
                row.push("ok".into());
            }
            None => {
                row.extend(std::iter::repeat_n(String::new(), 4));
                row.push("failed".into());
            }
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
