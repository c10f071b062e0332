//! The bundled crime-report domain.

use crate::error::GenerationError;
use crate::extract::ExtractionVocabulary;
use crate::generator::{DomainPack, GenerationConfig};
use crate::matcher::SemanticResources;

pub const CRIME_TREE: &str = include_str!("../fixtures/crime/tree.txt");
pub const CRIME_GRAMMAR: &str = include_str!("../fixtures/crime/grammar.cfg");
pub const CRIME_FREQUENCIES: &str = include_str!("../fixtures/crime/frequencies.tsv");
pub const CRIME_LEXICON: &str = include_str!("../fixtures/crime/lexicon.tsv");
pub const CRIME_CORPUS: &str = include_str!("../fixtures/crime/corpus.tsv");
pub const CRIME_CONFIG: &str = include_str!("../fixtures/crime/crime.toml");

pub fn crime_pack() -> Result<DomainPack, GenerationError> {
    DomainPack::from_sources("crime", CRIME_TREE, CRIME_GRAMMAR, CRIME_FREQUENCIES, CRIME_LEXICON)
}

pub fn crime_config() -> GenerationConfig {
    GenerationConfig::from_toml(CRIME_CONFIG).expect("bundled config is valid")
}

pub const SYNONYMS: &str = include_str!("../fixtures/resources/synonyms.tsv");
pub const ANTONYMS: &str = include_str!("../fixtures/resources/antonyms.tsv");
pub const TAXONOMY: &str = include_str!("../fixtures/resources/taxonomy.tsv");
pub const VECTORS: &str = include_str!("../fixtures/resources/vectors.txt");

/// The bundled lexical resources.
pub fn bundled_resources() -> SemanticResources {
    SemanticResources::parse(SYNONYMS, ANTONYMS, TAXONOMY, VECTORS).expect("bundled resources parse")
}

/// The pack lexicon plus every lemma the resources know.
pub fn extraction_vocabulary(pack: &DomainPack, res: &SemanticResources) -> ExtractionVocabulary {
    ExtractionVocabulary::new(pack.vocab.clone()).with_extra_lemmas(res.lemmas_with_pos())
}
