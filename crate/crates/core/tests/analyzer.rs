use factharness::analyzer::*;
use factharness::pack::{CRIME_CORPUS, CRIME_FREQUENCIES};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const HAND: &str = include_str!("fixtures/hand_corpus.tsv");

#[test]
fn crime_corpus_matches_independently_computed_counts() {
    // frequencies.tsv was counted by a separate script from the same rows.
    let expected = FrequencyTable::parse_tsv(CRIME_FREQUENCIES).unwrap();
    assert_eq!(ingest_annotated_corpus(CRIME_CORPUS).unwrap(), expected);
}

#[test]
fn hand_counted_corpus() {
    let t = ingest_annotated_corpus(HAND).unwrap();
    let expected: &[(&str, &[(&str, u64)])] = &[
        (NOUN, &[("car", 1), ("man", 2), ("police", 2), ("woman", 1)]),
        (VERB, &[("arrest", 1), ("flee", 1), ("stop", 1), ("visit", 1), ("work", 1)]),
        (ADJECTIVE, &[("old", 1), ("tall", 2)]),
        (ADVERB, &[("quickly", 1), ("slowly", 1)]),
        (NE_PLACE, &[("Boston", 1), ("New York", 1)]),
        (NE_PERSON, &[("John Smith", 1)]),
        (NE_ORG, &[("Acme Corp", 1)]),
        (NOUN_MODIFIER_PAIR, &[("old|car", 1), ("tall|man", 1), ("tall|woman", 1)]),
        (VERB_MODIFIER_PAIR, &[("quickly|flee", 1), ("slowly|stop", 1)]),
    ];
    for (cat, entries) in expected {
        let got: Vec<(&str, u64)> = t.category(cat).collect();
        assert_eq!(&got, entries, "{cat}");
    }
    assert_eq!(t.len(), expected.iter().map(|(_, e)| e.len()).sum::<usize>());
}

#[test]
fn modifier_sampling_is_restricted_to_the_head() {
    let t = ingest_annotated_corpus(HAND).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        assert_eq!(sample_modifier(&t, NOUN_MODIFIER_PAIR, "car", &mut rng).unwrap(), "old");
    }
    assert!(sample_modifier(&t, NOUN_MODIFIER_PAIR, "bicycle", &mut rng).is_err());
}

fn sentences() -> Vec<String> {
    HAND.split("\n\n").map(|s| format!("{}\n", s.trim_end())).collect()
}

proptest! {
    #[test]
    fn concatenation_is_merge(split in 0usize..=5) {
        let s = sentences();
        let (a, b) = s.split_at(split);
        let ta = ingest_annotated_corpus(&a.join("\n")).unwrap();
        let tb = ingest_annotated_corpus(&b.join("\n")).unwrap();
        prop_assert_eq!(merge(&ta, &tb), ingest_annotated_corpus(HAND).unwrap());
    }

    #[test]
    fn tsv_round_trip(entries in proptest::collection::vec((0usize..9, "[a-z]{1,8}", 1u64..1000), 0..40)) {
        let mut t = FrequencyTable::new();
        for (c, k, n) in &entries {
            t.add(CATEGORIES[*c], k, *n);
        }
        prop_assert_eq!(FrequencyTable::parse_tsv(&t.to_tsv()).unwrap(), t);
    }

    #[test]
    fn sampling_only_returns_present_keys(seed in any::<u64>(), weights in proptest::collection::vec(1u64..20, 1..6)) {
        let mut t = FrequencyTable::new();
        for (i, w) in weights.iter().enumerate() {
            t.add(NOUN, &format!("k{i}"), *w);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = sample_key(&t, NOUN, &mut rng).unwrap();
        prop_assert!(t.count(NOUN, k) > 0);
    }

    #[test]
    fn filtering_keeps_exactly_the_frequent_keys(min in 1u64..5, weights in proptest::collection::vec(1u64..8, 0..10)) {
        let mut t = FrequencyTable::new();
        for (i, w) in weights.iter().enumerate() {
            t.add(VERB, &format!("v{i}"), *w);
        }
        let f = t.filter_min_count(min);
        prop_assert_eq!(f.len(), weights.iter().filter(|&&w| w >= min).count());
    }
}
