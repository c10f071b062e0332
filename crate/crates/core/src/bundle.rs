//! Document bundles on disk.
//!
//! ```text
//! <dir>/<id>.txt    document text
//! <dir>/<id>.facts  truth table (FactTable text format)
//! <dir>/<id>.meta   JSON: schema version, seed, config hash, token count,
//!                   sentence count and the fact -> sentence realization map
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::BundleError;
use crate::fact::FactTable;
use crate::generator::SyntheticDocument;

pub const META_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleMeta {
    pub schema_version: u32,
    pub id: String,
    pub seed: u64,
    pub config_hash: String,
    pub token_count: usize,
    pub sentence_count: usize,
    pub realization: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub id: String,
    pub text: String,
    pub truth: FactTable,
    pub meta: BundleMeta,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BundleError + '_ {
    move |source| BundleError::Io { path: path.display().to_string(), source }
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), BundleError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn meta_for(doc: &SyntheticDocument) -> BundleMeta {
    BundleMeta {
        schema_version: META_SCHEMA_VERSION,
        id: doc.id.clone(),
        seed: doc.provenance.seed,
        config_hash: doc.provenance.config_hash.clone(),
        token_count: doc.token_count,
        sentence_count: doc.sentences.len(),
        realization: doc.realization.clone(),
    }
}

pub fn write_bundle(dir: &Path, doc: &SyntheticDocument) -> Result<(), BundleError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let meta = serde_json::to_string_pretty(&meta_for(doc)).expect("meta serializes") + "\n";
    write_atomic(&dir.join(format!("{}.txt", doc.id)), &format!("{}\n", doc.text))?;
    write_atomic(&dir.join(format!("{}.facts", doc.id)), &doc.truth.to_text())?;
    write_atomic(&dir.join(format!("{}.meta", doc.id)), &meta)
}

pub fn read_bundle(dir: &Path, id: &str) -> Result<Bundle, BundleError> {
    let read = |ext: &str| {
        let p = dir.join(format!("{id}.{ext}"));
        fs::read_to_string(&p).map_err(io_err(&p)).map(|s| (p, s))
    };
    let (_, text) = read("txt")?;
    let (facts_path, facts) = read("facts")?;
    let (meta_path, meta) = read("meta")?;
    let truth = FactTable::parse(&facts).map_err(|e| e.at_path(facts_path.display().to_string()))?;
    let meta: BundleMeta = serde_json::from_str(&meta)
        .map_err(|e| BundleError::Meta { path: meta_path.display().to_string(), message: e.to_string() })?;
    Ok(Bundle { id: id.to_string(), text: text.trim_end_matches('\n').to_string(), truth, meta })
}

/// Ids of every `<id>.txt` that has a matching `.facts` file, sorted.
pub fn list_bundles(dir: &Path) -> Result<Vec<String>, BundleError> {
    let mut ids = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.extension().is_some_and(|e| e == "txt") && path.with_extension("facts").exists() {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                ids.push(stem.to_string());
            }
        }
    }
    ids.sort();
    Ok(ids)
}
