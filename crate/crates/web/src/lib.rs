//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every export takes and returns plain strings so the page needs no glue
//! beyond what wasm-bindgen emits. Errors surface as JavaScript exceptions.

use std::sync::OnceLock;

use factharness::evaluator::{evaluate_summary, ScoreWeights, SourceDocument};
use factharness::extract::{extract_facts, ExtractionVocabulary};
use factharness::generator::{generate_document, DomainPack, SyntheticDocument};
use factharness::matcher::SemanticResources;
use factharness::pack;
use wasm_bindgen::prelude::*;

struct Demo {
    pack: DomainPack,
    res: SemanticResources,
    vocab: ExtractionVocabulary,
}

fn demo() -> &'static Demo {
    static DEMO: OnceLock<Demo> = OnceLock::new();
    DEMO.get_or_init(|| {
        let pack = pack::crime_pack().expect("bundled pack is valid");
        let res = pack::bundled_resources();
        let vocab = pack::extraction_vocabulary(&pack, &res);
        Demo { pack, res, vocab }
    })
}

fn document(seed: u64) -> Result<SyntheticDocument, String> {
    let cfg = pack::crime_config();
    generate_document(&demo().pack, &format!("crime-{seed}"), seed, cfg.sentences, cfg.max_depth, "")
        .map_err(|e| e.to_string())
}

/// Document text for `seed`.
pub fn document_text(seed: u64) -> Result<String, String> {
    Ok(document(seed)?.text)
}

/// One fact per line, in table order.
pub fn fact_lines(text: &str) -> String {
    extract_facts(text, &demo().vocab).facts().map(|f| format!("{f}\n")).collect()
}

/// The evaluation report, as JSON, of `summary` against the document for `seed`.
pub fn report_json(seed: u64, summary: &str) -> Result<String, String> {
    let doc = document(seed)?;
    let d = demo();
    let src = SourceDocument { id: &doc.id, text: &doc.text, truth: &doc.truth };
    let report = evaluate_summary(src, summary, "demo", &d.vocab, &d.res, ScoreWeights::default())
        .map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

#[wasm_bindgen]
pub fn generate(seed: u64) -> Result<String, JsError> {
    document_text(seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn extract(text: &str) -> String {
    fact_lines(text)
}

#[wasm_bindgen]
pub fn evaluate(seed: u64, summary: &str) -> Result<String, JsError> {
    report_json(seed, summary).map_err(|e| JsError::new(&e))
}
