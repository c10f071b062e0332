//! Frequency mining over pre-annotated corpora, and frequency-weighted sampling.
//!
//! Corpus rows are tab-separated, one token per line:
//!
//! ```text
//! index  surface  lemma  pos  ne-label  head-index  dep-label
//! ```
//!
//! Blank lines separate sentences. `pos` uses universal tags (`NOUN`, `VERB`,
//! `ADJ`, `ADV`, `PROPN`, ...). `ne-label` is `O` or a BIO label such as
//! `B-GPE`; `head-index` is 1-based with 0 for the root. Adjectival modifiers
//! (`amod`) of nouns and adverbial modifiers (`advmod`) of verbs are counted
//! as modifier pairs keyed `modifier|head`.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{AnalyzerError, FormatError};
use crate::fact::{Lexeme, Pos};

pub const NE_PERSON: &str = "named-entity:person";
pub const NE_PLACE: &str = "named-entity:place";
pub const NE_ORG: &str = "named-entity:org";
pub const NOUN: &str = "noun";
pub const VERB: &str = "verb";
pub const ADJECTIVE: &str = "adjective";
pub const ADVERB: &str = "adverb";
pub const NOUN_MODIFIER_PAIR: &str = "noun-modifier-pair";
pub const VERB_MODIFIER_PAIR: &str = "verb-modifier-pair";

pub const CATEGORIES: [&str; 9] = [
    NE_PERSON,
    NE_PLACE,
    NE_ORG,
    NOUN,
    VERB,
    ADJECTIVE,
    ADVERB,
    NOUN_MODIFIER_PAIR,
    VERB_MODIFIER_PAIR,
];

/// Separator between modifier and head in pair keys.
pub const PAIR_SEPARATOR: char = '|';

/// Counts per (category, key). Keys iterate in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    entries: BTreeMap<String, BTreeMap<String, u64>>,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences; zero counts are ignored so every stored count is at least one.
    pub fn add(&mut self, category: &str, key: &str, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry(category.to_string()).or_default().entry(key.to_string()).or_insert(0) += count;
    }

    pub fn count(&self, category: &str, key: &str) -> u64 {
        self.entries.get(category).and_then(|c| c.get(key)).copied().unwrap_or(0)
    }

    pub fn total(&self, category: &str) -> u64 {
        self.entries.get(category).map_or(0, |c| c.values().sum())
    }

    pub fn category(&self, category: &str) -> impl Iterator<Item = (&str, u64)> {
        self.entries.get(category).into_iter().flat_map(|c| c.iter().map(|(k, v)| (k.as_str(), *v)))
    }

    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct (category, key) entries.
    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    /// Drops entries whose count is below `min_count`.
    pub fn filter_min_count(&self, min_count: u64) -> FrequencyTable {
        let mut out = FrequencyTable::new();
        for (cat, keys) in &self.entries {
            for (k, &v) in keys {
                if v >= min_count {
                    out.add(cat, k, v);
                }
            }
        }
        out
    }

    /// Persists as `category <TAB> key <TAB> count` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (cat, keys) in &self.entries {
            for (k, v) in keys {
                out.push_str(&format!("{cat}\t{k}\t{v}\n"));
            }
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<FrequencyTable, FormatError> {
        let mut table = FrequencyTable::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: String| FormatError::new("frequency table", i + 1, m);
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(err(format!("expected 3 columns, found {}", cols.len())));
            }
            let count: u64 = cols[2].trim().parse().map_err(|_| err(format!("bad count `{}`", cols[2])))?;
            if count == 0 {
                return Err(err("counts must be positive".to_string()));
            }
            table.add(cols[0], cols[1], count);
        }
        Ok(table)
    }
}

/// Pointwise sum of two tables.
pub fn merge(a: &FrequencyTable, b: &FrequencyTable) -> FrequencyTable {
    let mut out = a.clone();
    for (cat, keys) in &b.entries {
        for (k, &v) in keys {
            out.add(cat, k, v);
        }
    }
    out
}

#[derive(Debug, Clone)]
struct Row {
    surface: String,
    lemma: String,
    pos: String,
    ne: String,
    head: usize,
    dep: String,
}

fn parse_row(line: &str, line_no: usize) -> Result<Row, AnalyzerError> {
    let bad = |m: String| AnalyzerError::MalformedRow { line: line_no, message: m };
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 7 {
        return Err(bad(format!("expected 7 tab-separated columns, found {}", cols.len())));
    }
    cols[0].trim().parse::<usize>().map_err(|_| bad(format!("bad token index `{}`", cols[0])))?;
    let head = cols[5].trim().parse::<usize>().map_err(|_| bad(format!("bad head index `{}`", cols[5])))?;
    if cols[1].is_empty() || cols[2].is_empty() {
        return Err(bad("empty surface or lemma".to_string()));
    }
    Ok(Row {
        surface: cols[1].to_string(),
        lemma: cols[2].to_lowercase(),
        pos: cols[3].to_ascii_uppercase(),
        ne: cols[4].to_string(),
        head,
        dep: cols[6].to_string(),
    })
}

fn ne_category(label: &str) -> Option<&'static str> {
    match label {
        "PERSON" | "PER" => Some(NE_PERSON),
        "GPE" | "LOC" | "FAC" => Some(NE_PLACE),
        "ORG" => Some(NE_ORG),
        _ => None,
    }
}

fn count_sentence(rows: &[Row], table: &mut FrequencyTable, first_line: usize) -> Result<(), AnalyzerError> {
    let mut open_entity: Option<(&'static str, Vec<&str>)> = None;
    let flush = |open: &mut Option<(&'static str, Vec<&str>)>, table: &mut FrequencyTable| {
        if let Some((cat, words)) = open.take() {
            table.add(cat, &words.join(" "), 1);
        }
    };
    for (i, row) in rows.iter().enumerate() {
        if row.head > rows.len() {
            return Err(AnalyzerError::MalformedRow {
                line: first_line + i,
                message: format!("head index {} outside sentence of {} tokens", row.head, rows.len()),
            });
        }
        match row.ne.split_once('-') {
            Some(("B", label)) => {
                flush(&mut open_entity, table);
                open_entity = ne_category(label).map(|c| (c, vec![row.surface.as_str()]));
            }
            Some(("I", label)) => match open_entity.as_mut() {
                Some((cat, words)) if ne_category(label) == Some(*cat) => words.push(&row.surface),
                _ => {
                    flush(&mut open_entity, table);
                    open_entity = ne_category(label).map(|c| (c, vec![row.surface.as_str()]));
                }
            },
            _ => flush(&mut open_entity, table),
        }

        match row.pos.as_str() {
            "NOUN" => table.add(NOUN, &row.lemma, 1),
            "VERB" => table.add(VERB, &row.lemma, 1),
            "ADJ" => table.add(ADJECTIVE, &row.lemma, 1),
            "ADV" => table.add(ADVERB, &row.lemma, 1),
            _ => {}
        }

        if row.head == 0 {
            continue;
        }
        let head = &rows[row.head - 1];
        match (row.dep.as_str(), head.pos.as_str()) {
            ("amod", "NOUN" | "PROPN") => {
                table.add(NOUN_MODIFIER_PAIR, &format!("{}{PAIR_SEPARATOR}{}", row.lemma, head.lemma), 1)
            }
            ("advmod", "VERB") => {
                table.add(VERB_MODIFIER_PAIR, &format!("{}{PAIR_SEPARATOR}{}", row.lemma, head.lemma), 1)
            }
            _ => {}
        }
    }
    flush(&mut open_entity, table);
    Ok(())
}

/// Counts named entities, modifier pairs and open-class lemmas in an
/// annotated corpus. An empty stream yields an empty table.
pub fn ingest_annotated_corpus(text: &str) -> Result<FrequencyTable, AnalyzerError> {
    let mut table = FrequencyTable::new();
    let mut sentence: Vec<Row> = Vec::new();
    let mut first_line = 1;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            count_sentence(&sentence, &mut table, first_line)?;
            sentence.clear();
            first_line = line_no + 1;
            continue;
        }
        if line.starts_with('#') {
            if sentence.is_empty() {
                first_line = line_no + 1;
            }
            continue;
        }
        sentence.push(parse_row(line, line_no)?);
    }
    count_sentence(&sentence, &mut table, first_line)?;
    Ok(table)
}

fn weighted_pick<'a, R: Rng + ?Sized>(items: &[(&'a str, u64)], rng: &mut R) -> &'a str {
    let dist = WeightedIndex::new(items.iter().map(|(_, w)| *w)).expect("positive weights");
    items[dist.sample(rng)].0
}

fn category_pos(category: &str) -> Pos {
    match category {
        NE_PERSON | NE_PLACE | NE_ORG => Pos::ProperNoun,
        VERB => Pos::Verb,
        ADJECTIVE => Pos::Adjective,
        ADVERB => Pos::Adverb,
        _ => Pos::Noun,
    }
}

/// Draws one key of `category` with probability proportional to its count.
/// Entries are visited in lexicographic key order, so the draw depends only
/// on the table contents and the rng state.
pub fn sample_key<'a, R: Rng + ?Sized>(
    table: &'a FrequencyTable,
    category: &str,
    rng: &mut R,
) -> Result<&'a str, AnalyzerError> {
    let items: Vec<(&str, u64)> = table.category(category).collect();
    if items.is_empty() {
        return Err(AnalyzerError::EmptyCategory(category.to_string()));
    }
    Ok(weighted_pick(&items, rng))
}

/// Like [`sample_key`] but returns a lexeme whose lemma is the key. Pair
/// categories return the modifier half.
pub fn sample_lexeme<R: Rng + ?Sized>(
    table: &FrequencyTable,
    category: &str,
    rng: &mut R,
) -> Result<Lexeme, AnalyzerError> {
    let key = sample_key(table, category, rng)?;
    let word = key.split(PAIR_SEPARATOR).next().unwrap_or(key);
    Lexeme::new(word, word, category_pos(category))
        .map_err(|e| AnalyzerError::MalformedRow { line: 0, message: e.to_string() })
}

/// Draws a modifier for `head` from a pair category, weighted by pair count.
pub fn sample_modifier<'a, R: Rng + ?Sized>(
    table: &'a FrequencyTable,
    pair_category: &str,
    head: &str,
    rng: &mut R,
) -> Result<&'a str, AnalyzerError> {
    let head = head.to_lowercase();
    let items: Vec<(&str, u64)> = table
        .category(pair_category)
        .filter_map(|(k, v)| match k.split_once(PAIR_SEPARATOR) {
            Some((modifier, h)) if h == head => Some((modifier, v)),
            _ => None,
        })
        .collect();
    if items.is_empty() {
        return Err(AnalyzerError::NoPairing { category: pair_category.to_string(), head });
    }
    Ok(weighted_pick(&items, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const ROWS: &str = "\
1\tA\ta\tDET\tO\t3\tdet
2\tblue\tblue\tADJ\tO\t3\tamod
3\tjacket\tjacket\tNOUN\tO\t0\troot

1\tPolice\tpolice\tNOUN\tO\t3\tnsubj
2\tquickly\tquickly\tADV\tO\t3\tadvmod
3\tarrived\tarrive\tVERB\tO\t0\troot
4\tin\tin\tADP\tO\t5\tcase
5\tNew\tNew\tPROPN\tB-GPE\t3\tobl
6\tJersey\tJersey\tPROPN\tI-GPE\t5\tflat
";

    #[test]
    fn counts_pairs_entities_and_lemmas() {
        let t = ingest_annotated_corpus(ROWS).unwrap();
        assert_eq!(t.count(NOUN_MODIFIER_PAIR, "blue|jacket"), 1);
        assert_eq!(t.count(VERB_MODIFIER_PAIR, "quickly|arrive"), 1);
        assert_eq!(t.count(NE_PLACE, "New Jersey"), 1);
        assert_eq!(t.count(NOUN, "jacket"), 1);
        assert_eq!(t.count(NOUN, "police"), 1);
        assert_eq!(t.count(ADJECTIVE, "blue"), 1);
        assert_eq!(t.total(NOUN), 2);
    }

    #[test]
    fn empty_stream_is_an_empty_table() {
        let t = ingest_annotated_corpus("").unwrap();
        assert!(t.is_empty());
        for cat in CATEGORIES {
            assert_eq!(t.total(cat), 0);
        }
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let err = ingest_annotated_corpus("1\ta\ta\tDET\tO\t0\troot\n2\tbroken\n").unwrap_err();
        assert_eq!(err, AnalyzerError::MalformedRow { line: 2, message: "expected 7 tab-separated columns, found 2".into() });
        let err = ingest_annotated_corpus("1\ta\ta\tDET\tO\t9\troot\n").unwrap_err();
        assert!(matches!(err, AnalyzerError::MalformedRow { line: 1, .. }));
    }

    #[test]
    fn merge_identity_and_doubling() {
        let t = ingest_annotated_corpus(ROWS).unwrap();
        assert_eq!(merge(&t, &FrequencyTable::new()), t);
        let doubled = merge(&t, &t);
        for cat in CATEGORIES {
            for (k, v) in t.category(cat) {
                assert_eq!(doubled.count(cat, k), 2 * v);
            }
        }
    }

    #[test]
    fn tsv_round_trip() {
        let t = ingest_annotated_corpus(ROWS).unwrap();
        assert_eq!(FrequencyTable::parse_tsv(&t.to_tsv()).unwrap(), t);
        assert!(FrequencyTable::parse_tsv("noun\tx\t0\n").is_err());
    }

    #[test]
    fn single_entry_category_is_always_drawn() {
        let mut t = FrequencyTable::new();
        t.add(NOUN, "only", 5);
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(sample_lexeme(&t, NOUN, &mut rng).unwrap().lemma(), "only");
        }
    }

    #[test]
    fn empty_category_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = sample_lexeme(&FrequencyTable::new(), NOUN, &mut rng).unwrap_err();
        assert_eq!(err, AnalyzerError::EmptyCategory(NOUN.into()));
    }

    #[test]
    fn modifiers_are_drawn_for_the_requested_head() {
        let mut t = FrequencyTable::new();
        t.add(NOUN_MODIFIER_PAIR, "asian|restaurant", 2);
        t.add(NOUN_MODIFIER_PAIR, "busy|bar", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert_eq!(sample_modifier(&t, NOUN_MODIFIER_PAIR, "restaurant", &mut rng).unwrap(), "asian");
        }
        assert!(sample_modifier(&t, NOUN_MODIFIER_PAIR, "store", &mut rng).is_err());
    }

    #[test]
    fn min_count_filter() {
        let mut t = FrequencyTable::new();
        t.add(NOUN, "a", 1);
        t.add(NOUN, "b", 3);
        let f = t.filter_min_count(2);
        assert_eq!(f.count(NOUN, "a"), 0);
        assert_eq!(f.count(NOUN, "b"), 3);
    }
}
