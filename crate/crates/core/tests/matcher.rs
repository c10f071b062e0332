use factharness::fact::{make_fact, Fact, FactArg, FactTable, Lexeme, Pos, RelationKind};
use factharness::generator::generate_documents;
use factharness::matcher::*;
use factharness::pack::{self, bundled_resources, crime_config, crime_pack};
use proptest::prelude::*;
use std::sync::OnceLock;

fn lx(surface: &str, lemma: &str, pos: Pos) -> Lexeme {
    Lexeme::new(surface, lemma, pos).unwrap()
}

fn word(w: &str, pos: Pos) -> FactArg {
    FactArg::word(lx(w, w, pos))
}

fn svo(s: &str, v: &str, o: Option<&str>) -> Fact {
    let obj = o.map_or(FactArg::Empty, |o| word(o, Pos::Noun));
    make_fact(RelationKind::SubjectVerbObject, vec![word(s, Pos::Noun), word(v, Pos::Verb), obj]).unwrap()
}

fn nm(modifier: Vec<Lexeme>, head: &str) -> Fact {
    make_fact(RelationKind::NounModifier, vec![FactArg::phrase(modifier), word(head, Pos::Noun)]).unwrap()
}

fn crime_facts() -> &'static [Fact] {
    static FACTS: OnceLock<Vec<Fact>> = OnceLock::new();
    FACTS.get_or_init(|| {
        let mut cfg = crime_config();
        cfg.documents = 20;
        let docs = generate_documents(&crime_pack().unwrap(), &cfg, "").unwrap();
        docs.iter().flat_map(|d| d.truth.facts().cloned().collect::<Vec<_>>()).collect()
    })
}

#[test]
fn bundled_resource_sizes() {
    let r = bundled_resources();
    assert_eq!(r.synset_count(), 30);
    assert_eq!(r.antonym_count(), 10);
    assert_eq!((r.vector_count(), r.dimension()), (50, 50));
    assert!(r.synsets_of("large").is_some_and(|s| !s.is_empty()));
    assert_eq!(r.threshold(), DEFAULT_THRESHOLD);
}

#[test]
fn resources_load_from_files_with_paths_in_errors() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/resources");
    let r = SemanticResources::load(
        &dir.join("synonyms.tsv"),
        &dir.join("antonyms.tsv"),
        &dir.join("taxonomy.tsv"),
        &dir.join("vectors.txt"),
    )
    .unwrap();
    assert_eq!(r.synset_count(), bundled_resources().synset_count());
    let missing = dir.join("nope.tsv");
    let err = SemanticResources::load(&missing, &missing, &missing, &missing).unwrap_err();
    assert!(err.to_string().contains("nope.tsv"), "{err}");
}

#[test]
fn identical_intransitive_facts_are_exact() {
    let f = svo("woman", "kill", None);
    assert_eq!(fact_match(&f, &f, &bundled_resources()).verdict, Verdict::Exact);
}

#[test]
fn age_modifier_matches_across_synonymous_heads() {
    let age = || vec![lx("44", "44", Pos::Adjective), lx("years", "years", Pos::Adjective), lx("old", "old", Pos::Adjective)];
    let m = fact_match(&nm(age(), "woman"), &nm(age(), "victim"), &bundled_resources());
    assert_eq!(m.verdict, Verdict::Synonym);
}

#[test]
fn stabbed_and_injured_do_not_match() {
    let m = fact_match(&svo("woman", "stab", None), &svo("woman", "injure", None), &bundled_resources());
    assert_eq!(m.verdict, Verdict::NoMatch);
}

#[test]
fn antonym_vetoes_even_with_matching_head() {
    let r = bundled_resources();
    let f = nm(vec![lx("male", "male", Pos::Adjective)], "victim");
    let g = nm(vec![lx("female", "female", Pos::Adjective)], "victim");
    assert_eq!(fact_match(&f, &g, &r).verdict, Verdict::AntonymConflict);
    assert!(r.are_antonyms("female", "male"));
}

#[test]
fn empty_object_only_matches_empty_object() {
    let r = bundled_resources();
    assert!(!fact_match(&svo("man", "stab", None), &svo("man", "stab", Some("victim")), &r).is_match());
}

#[test]
fn conflict_instance_matches_enumeration() {
    // 3 source facts, 2 summary facts, one of which contradicts a source fact.
    let r = bundled_resources();
    let male = nm(vec![lx("male", "male", Pos::Adjective)], "victim");
    let female = nm(vec![lx("female", "female", Pos::Adjective)], "victim");
    let source = FactTable::new().with(male).with(svo("man", "stab", Some("victim"))).with(svo("police", "arrest", Some("man")));
    let summary = FactTable::new().with(female).with(svo("man", "stab", Some("victim")));
    let o = overlap(&source, &summary, &r);
    assert_eq!((o.overlap_count(), o.unmatched_summary.len(), o.unmatched_source.len()), (1, 1, 2));
}

fn lemmas() -> Vec<(String, Pos)> {
    bundled_resources().lemmas_with_pos().into_iter().map(|(l, p)| (l.to_string(), p)).collect()
}

proptest! {
    #[test]
    fn term_match_is_symmetric(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let r = bundled_resources();
        let ls = lemmas();
        let (a, pa) = i.get(&ls);
        let (b, _) = j.get(&ls);
        // Same part of speech on both sides so that the pos-family rules apply.
        let (x, y) = (lx(a, a, *pa), lx(b, b, *pa));
        prop_assert_eq!(term_match(&x, &y, &r), term_match(&y, &x, &r));
    }

    #[test]
    fn facts_match_themselves_exactly(i in any::<prop::sample::Index>()) {
        let facts = crime_facts();
        let f = i.get(facts);
        let m = fact_match(f, f, &bundled_resources());
        prop_assert_eq!((m.verdict, m.score), (Verdict::Exact, 1.0));
    }

    #[test]
    fn fact_score_is_bounded_by_argument_scores(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let r = bundled_resources();
        let facts = crime_facts();
        let (f, g) = (i.get(facts), j.get(facts));
        let m = fact_match(f, g, &r);
        if f.kind() == g.kind() {
            for (a, b) in f.args().iter().zip(g.args()) {
                prop_assert!(m.score <= arg_match(a, b, &r).score);
            }
        } else {
            prop_assert!(!m.is_match());
        }
    }

    #[test]
    fn overlap_is_bounded_and_partitions(picks in proptest::collection::vec((any::<bool>(), any::<prop::sample::Index>()), 0..16)) {
        let r = bundled_resources();
        let facts = crime_facts();
        let (mut src, mut sum) = (FactTable::new(), FactTable::new());
        for (side, i) in &picks {
            if *side { src.insert(i.get(facts).clone()) } else { sum.insert(i.get(facts).clone()) }
        }
        let o = overlap(&src, &sum, &r);
        prop_assert!(o.overlap_count() <= src.len().min(sum.len()));
        prop_assert_eq!(o.overlap_count() + o.unmatched_summary.len(), sum.len());
        prop_assert_eq!(o.overlap_count() + o.unmatched_source.len(), src.len());
        prop_assert!(o.matched.iter().all(|p| p.result.is_match()));
        prop_assert_eq!(overlap(&src, &src, &r).overlap_count(), src.len());
    }

    #[test]
    fn similar_verdicts_meet_the_threshold(t in 0.0f64..=1.0, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let r = bundled_resources().with_threshold(t);
        let ls = lemmas();
        let (a, pa) = i.get(&ls);
        let (b, _) = j.get(&ls);
        let m = term_match(&lx(a, a, *pa), &lx(b, b, *pa), &r);
        if m.verdict == Verdict::Similar {
            prop_assert!(m.score >= t);
        }
    }
}

#[test]
fn extraction_vocabulary_knows_resource_lemmas() {
    let p = crime_pack().unwrap();
    let v = pack::extraction_vocabulary(&p, &bundled_resources());
    assert!(v.vocabulary().by_lemma("casualty", None).is_some());
}
