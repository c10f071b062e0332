//! Acceptance suite. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use factharness::analyzer::{sample_key, FrequencyTable, NOUN};
use factharness::evaluator::{
    build_report, compression_rate, evaluate_summary, EvaluationReport, ScoreWeights, SourceDocument,
};
use factharness::extract::{extract_facts, ExtractionVocabulary};
use factharness::fact::{Fact, FactTable};
use factharness::generator::{generate_document, generate_documents, DomainPack, SentenceRange};
use factharness::matcher::{fact_match, overlap, SemanticResources};
use factharness::pack;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn(&mut Ctx) -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// Eight one-fact clauses; the fabrication pack uses disjoint names and verbs.
const MINI_TREE: &str = "\
node e1 verb literal(laughed, smiled) clause=C1
  agent subject ref(p1)
node p1 noun literal(Alice, Anna) mention=P1
node e2 verb literal(waved, nodded) clause=C2
  agent subject ref(p2)
node p2 noun literal(Boris, Bruno) mention=P2
node e3 verb literal(jumped, danced) clause=C3
  agent subject ref(p3)
node p3 noun literal(Carla, Cindy) mention=P3
node e4 verb literal(sang, hummed) clause=C4
  agent subject ref(p4)
node p4 noun literal(Dmitri, Duncan) mention=P4
node e5 verb literal(slept, rested) clause=C5
  agent subject ref(p5)
node p5 noun literal(Elsa, Emma) mention=P5
node e6 verb literal(cried, sighed) clause=C6
  agent subject ref(p6)
node p6 noun literal(Felix, Finn) mention=P6
node e7 verb literal(walked, marched) clause=C7
  agent subject ref(p7)
node p7 noun literal(Gina, Greta) mention=P7
node e8 verb literal(swam, climbed) clause=C8
  agent subject ref(p8)
node p8 noun literal(Hugo, Hank) mention=P8
";

const FAB_TREE: &str = "\
node e1 verb literal(coughed, sneezed) clause=C1
  agent subject ref(p1)
node p1 noun literal(Ivan, Iris) mention=P1
node e2 verb literal(yawned, shouted) clause=C2
  agent subject ref(p2)
node p2 noun literal(Jonas, June) mention=P2
node e3 verb literal(whistled, knocked) clause=C3
  agent subject ref(p3)
node p3 noun literal(Kurt, Kate) mention=P3
node e4 verb literal(painted, cooked) clause=C4
  agent subject ref(p4)
node p4 noun literal(Leon, Lola) mention=P4
";

fn mini_grammar(clauses: usize) -> String {
    let mut g = String::from("Sentence -> Clause Stop\nStop -> \".\"\nClause -> ");
    g.push_str(&(1..=clauses).map(|i| format!("C{i}")).collect::<Vec<_>>().join(" | "));
    g.push('\n');
    for i in 1..=clauses {
        g.push_str(&format!("C{i} -> P{i} {{e{i}.head}}\n"));
        g.push_str(&format!("P{i} -> P{i}_first | P{i}_ref\nP{i}_first -> {{p{i}.head}}\nP{i}_ref -> {{p{i}.head}}\n"));
    }
    g
}

fn mini_lexicon() -> String {
    let names = "Alice Anna Boris Bruno Carla Cindy Dmitri Duncan Elsa Emma Felix Finn Gina Greta Hugo Hank \
                 Ivan Iris Jonas June Kurt Kate Leon Lola";
    let verbs = [
        ("laughed", "laugh"), ("smiled", "smile"), ("waved", "wave"), ("nodded", "nod"), ("jumped", "jump"),
        ("danced", "dance"), ("sang", "sing"), ("hummed", "hum"), ("slept", "sleep"), ("rested", "rest"),
        ("cried", "cry"), ("sighed", "sigh"), ("walked", "walk"), ("marched", "march"), ("swam", "swim"),
        ("climbed", "climb"), ("coughed", "cough"), ("sneezed", "sneeze"), ("yawned", "yawn"),
        ("shouted", "shout"), ("whistled", "whistle"), ("knocked", "knock"), ("painted", "paint"),
        ("cooked", "cook"),
    ];
    let mut lex: String = names.split_whitespace().map(|n| format!("{n}\t{n}\tpropn\tperson\n")).collect();
    lex.extend(verbs.iter().map(|(s, l)| format!("{s}\t{l}\tverb\n")));
    lex
}

fn mini_pack(name: &str, tree: &str, clauses: usize) -> DomainPack {
    DomainPack::from_sources(name, tree, &mini_grammar(clauses), "", &mini_lexicon()).expect("mini pack")
}

fn table(facts: &[Fact]) -> FactTable {
    facts.iter().cloned().fold(FactTable::new(), FactTable::with)
}

/// Maximum one-to-one matching by exhaustive search over the match relation.
fn brute_force_max_matching(source: &[Fact], summary: &[Fact], res: &SemanticResources) -> usize {
    let ok: Vec<Vec<bool>> =
        summary.iter().map(|s| source.iter().map(|f| fact_match(f, s, res).is_match()).collect()).collect();
    fn go(i: usize, used: &mut Vec<bool>, ok: &[Vec<bool>]) -> usize {
        if i == ok.len() {
            return 0;
        }
        let mut best = go(i + 1, used, ok);
        for j in 0..used.len() {
            if ok[i][j] && !used[j] {
                used[j] = true;
                best = best.max(1 + go(i + 1, used, ok));
                used[j] = false;
            }
        }
        best
    }
    go(0, &mut vec![false; source.len()], &ok)
}

struct Ctx {
    res: SemanticResources,
    crime: DomainPack,
    crime_vocab: ExtractionVocabulary,
    tmp: TempDir,
    reports: Vec<EvaluationReport>,
}

fn criterion_1(ctx: &mut Ctx) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for seed in 0..10u64 {
        let mut cfg = pack::crime_config();
        cfg.seed = 1000 * seed + 1;
        cfg.documents = 10;
        for doc in generate_documents(&ctx.crime, &cfg, "").map_err(|e| e.to_string())? {
            total += 1;
            if extract_facts(&doc.text, &ctx.crime_vocab) != doc.truth {
                mismatches.push(format!("seed {} {}", cfg.seed, doc.id));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        total == 100 && mismatches.is_empty() && elapsed.as_secs_f64() < 10.0,
        format!("{total} documents, {} mismatches {:?}, {:.2}s", mismatches.len(), mismatches, elapsed.as_secs_f64()),
    )
}

fn criterion_2(ctx: &mut Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in &ctx.reports {
        let Some(s) = &r.scores else { continue };
        checked += 1;
        let c = &r.counts;
        let cons = if c.summary_facts == 0 { 1.0 } else { c.overlap as f64 / c.summary_facts as f64 };
        let comp = c.overlap as f64 / c.source_facts as f64;
        let cr = c.summary_tokens as f64 / c.source_tokens as f64 * 100.0;
        let diffs = [s.factual_consistency - cons, s.comprehensiveness - comp, s.compression_rate - cr];
        if diffs.iter().any(|d| d.abs() > 1e-9) {
            bad.push(format!("{}.{}", r.document_id, r.backend_id));
        }
    }
    check(checked > 0 && bad.is_empty(), format!("{checked} reports recomputed, {} off by more than 1e-9 {bad:?}", bad.len()))
}

fn echo_binary() -> Result<PathBuf, String> {
    let cli = PathBuf::from(env!("CARGO_BIN_EXE_factharness"));
    let echo = cli.with_file_name(format!("factharness-echo{}", std::env::consts::EXE_SUFFIX));
    if !echo.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "-q", "-p", "factharness-bridge", "--bin", "factharness-echo"])
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() || !echo.exists() {
            return Err(format!("could not build {}", echo.display()));
        }
    }
    Ok(echo)
}

fn read_reports(dir: &Path) -> Vec<EvaluationReport> {
    let mut paths: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths.iter().map(|p| EvaluationReport::from_json(&fs::read_to_string(p).unwrap()).unwrap()).collect()
}

fn cli(args: &[&str]) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_factharness"))
        .env_remove("FACTHARNESS_RESOURCES")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if o.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&o.stderr).into_owned())
    }
}

fn criterion_3(ctx: &mut Ctx) -> Outcome {
    let echo = echo_binary()?;
    let out = ctx.tmp.path().join("echo");
    let backend = format!("echo=subprocess:{}", echo.display());
    cli(&["--jobs", "4", "run", "--out", out.to_str().unwrap(), "--count", "20", "--backend", &backend])?;
    let reports = read_reports(&out.join("reports"));
    let exact = reports
        .iter()
        .filter(|r| {
            r.scores.as_ref().is_some_and(|s| {
                (s.factual_consistency, s.comprehensiveness, s.compression_rate, s.overall) == (1.0, 1.0, 100.0, 0.0)
            })
        })
        .count();
    let n = reports.len();
    ctx.reports.extend(reports);
    check(n == 20 && exact == 20, format!("{exact}/{n} echo reports at 1/1/100/0"))
}

fn criterion_4(ctx: &mut Ctx) -> Outcome {
    let source_pack = mini_pack("mini", MINI_TREE, 8);
    let fab_pack = mini_pack("fab", FAB_TREE, 4);
    let all = SentenceRange { min: 8, max: 8 };
    let doc = generate_document(&source_pack, "mini-0000", 3, all, 50, "").map_err(|e| e.to_string())?;
    let fab = generate_document(&fab_pack, "fab-0000", 4, SentenceRange { min: 4, max: 4 }, 50, "")
        .map_err(|e| e.to_string())?;
    let n = doc.truth.len();
    if n != 8 || fab.truth.len() != 4 {
        return Err(format!("mini pack produced {n} source facts and {} fabricated facts", fab.truth.len()));
    }
    let vocab = pack::extraction_vocabulary(&source_pack, &ctx.res);
    let fab_vocab = pack::extraction_vocabulary(&fab_pack, &ctx.res);
    let src_facts: Vec<Fact> = doc.truth.facts().cloned().collect();
    let mut lines = Vec::new();
    let mut ok = true;
    for k in [1usize, 2, 4] {
        let added = &fab.sentences[..k];
        let each_one = added
            .iter()
            .all(|s| extract_facts(s, &fab_vocab).len() == 1 && !doc.truth.contains(extract_facts(s, &fab_vocab).facts().next().unwrap()));
        let summary = format!("{} {}", doc.text, added.join(" "));
        let src = SourceDocument { id: &doc.id, text: &doc.text, truth: &doc.truth };
        let r = evaluate_summary(src, &summary, "fab", &vocab, &ctx.res, ScoreWeights::default())
            .map_err(|e| e.to_string())?;
        let sum_facts: Vec<Fact> = extract_facts(&summary, &vocab).facts().cloned().collect();
        let oracle = brute_force_max_matching(&src_facts, &sum_facts, &ctx.res) as f64 / sum_facts.len() as f64;
        let got = r.scores.as_ref().map(|s| s.factual_consistency).unwrap_or(f64::NAN);
        let want = n as f64 / (n + k) as f64;
        ok &= each_one && got == want && oracle == want;
        lines.push(format!("k={k}: {got} (want {want}, oracle {oracle})"));
        ctx.reports.push(r);
    }
    check(ok, format!("n={n}; {}", lines.join("; ")))
}

fn criterion_5(ctx: &mut Ctx) -> Outcome {
    let pack = mini_pack("mini", MINI_TREE, 8);
    let doc = generate_document(&pack, "mini-0001", 9, SentenceRange { min: 8, max: 8 }, 50, "")
        .map_err(|e| e.to_string())?;
    let n = doc.truth.len();
    if n != 8 {
        return Err(format!("mini pack produced {n} facts"));
    }
    let vocab = pack::extraction_vocabulary(&pack, &ctx.res);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut lines = Vec::new();
    let mut ok = true;
    for m in [2usize, 4, 8] {
        let mut keep = sample(&mut rng, doc.sentences.len(), m).into_vec();
        keep.sort_unstable();
        let summary = keep.iter().map(|&i| doc.sentences[i].as_str()).collect::<Vec<_>>().join(" ");
        let src = SourceDocument { id: &doc.id, text: &doc.text, truth: &doc.truth };
        let r = evaluate_summary(src, &summary, "omit", &vocab, &ctx.res, ScoreWeights::default())
            .map_err(|e| e.to_string())?;
        let s = r.scores.ok_or("no scores")?;
        let want = m as f64 / n as f64;
        ok &= s.comprehensiveness == want && s.factual_consistency == 1.0;
        lines.push(format!("m={m}: comprehensiveness {} consistency {}", s.comprehensiveness, s.factual_consistency));
        ctx.reports.push(r);
    }
    check(ok, lines.join("; "))
}

fn criterion_6(ctx: &mut Ctx) -> Outcome {
    let rates: Vec<f64> = [(100, 20), (100, 100), (100, 120)]
        .iter()
        .map(|&(s, t)| compression_rate(s, t).unwrap())
        .collect();
    // Five tokens per sentence: Alice, laughed, quietly, today, period.
    let text = |k: usize| vec!["Alice laughed quietly today."; k].join(" ");
    let pack = mini_pack("mini", MINI_TREE, 8);
    let vocab = pack::extraction_vocabulary(&pack, &ctx.res);
    let source = text(20);
    let truth = extract_facts(&source, &vocab);
    let mut flags = Vec::new();
    let mut report_rates = Vec::new();
    for k in [4, 20, 24] {
        let summary = text(k);
        let facts = extract_facts(&summary, &vocab);
        let ov = overlap(&truth, &facts, &ctx.res);
        let src = SourceDocument { id: "len", text: &source, truth: &truth };
        let r = build_report(src, &summary, &facts, &ov, "len", &vocab, ScoreWeights::default())
            .map_err(|e| e.to_string())?;
        flags.push(r.flags.over_length);
        report_rates.push(r.scores.as_ref().map(|s| s.compression_rate).unwrap_or(f64::NAN));
        ctx.reports.push(r);
    }
    check(
        rates == [20.0, 100.0, 120.0] && report_rates == rates && flags == [false, false, true],
        format!("rates {rates:?}, via reports {report_rates:?}, over-length {flags:?}"),
    )
}

fn criterion_7(ctx: &mut Ctx) -> Outcome {
    let mut cfg = pack::crime_config();
    cfg.seed = 77;
    cfg.documents = 30;
    let pool: Vec<Fact> = generate_documents(&ctx.crime, &cfg, "")
        .map_err(|e| e.to_string())?
        .iter()
        .flat_map(|d| d.truth.facts().cloned().collect::<Vec<_>>())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut discrepancies = Vec::new();
    let mut nontrivial = 0;
    for i in 0..50 {
        // Draw both sides from a narrow window so that near-duplicates collide.
        let start = rng.random_range(0..pool.len() - 12);
        let window = &pool[start..start + 12];
        let pick = |rng: &mut ChaCha8Rng| {
            let n = rng.random_range(1..=6);
            table(&sample(rng, window.len(), n).iter().map(|j| window[j].clone()).collect::<Vec<_>>())
        };
        let (source, summary) = (pick(&mut rng), pick(&mut rng));
        let src: Vec<Fact> = source.facts().cloned().collect();
        let sum: Vec<Fact> = summary.facts().cloned().collect();
        let greedy = overlap(&source, &summary, &ctx.res).overlap_count();
        let best = brute_force_max_matching(&src, &sum, &ctx.res);
        nontrivial += usize::from(best > 0);
        if greedy != best {
            discrepancies.push(format!("instance {i}: greedy {greedy}, optimal {best}"));
        }
    }
    check(
        discrepancies.is_empty(),
        format!("50 instances ({nontrivial} with a nonempty matching), {} discrepancies {discrepancies:?}", discrepancies.len()),
    )
}

fn criterion_8(ctx: &mut Ctx) -> Outcome {
    let docs = generate_documents(&ctx.crime, &pack::crime_config(), "").map_err(|e| e.to_string())?;
    let summaries = ctx.tmp.path().join("lead2");
    fs::create_dir_all(&summaries).map_err(|e| e.to_string())?;
    for d in &docs {
        let lead = d.sentences.iter().take(2).cloned().collect::<Vec<_>>().join(" ");
        fs::write(summaries.join(format!("{}.summary", d.id)), lead + "\n").map_err(|e| e.to_string())?;
    }
    let authored = Path::new(env!("CARGO_MANIFEST_DIR")).join("../bridge/fixtures/summaries/bart-large-cnn");
    let mut csvs = Vec::new();
    for (i, jobs) in ["1", "4"].iter().enumerate() {
        let out = ctx.tmp.path().join(format!("det{i}"));
        cli(&[
            "--seed",
            "7",
            "--jobs",
            jobs,
            "run",
            "--out",
            out.to_str().unwrap(),
            "--summaries-dir",
            summaries.to_str().unwrap(),
            "--backend",
            &format!("bart-large-cnn=file:{}", authored.display()),
            "--retries",
            "0",
        ])?;
        csvs.push(fs::read(out.join("aggregate.csv")).map_err(|e| e.to_string())?);
        if i == 0 {
            ctx.reports.extend(read_reports(&out.join("reports")));
        }
    }
    let rows = String::from_utf8_lossy(&csvs[0]).lines().count() - 1;
    check(csvs[0] == csvs[1] && rows == 20, format!("{rows} rows, identical: {}", csvs[0] == csvs[1]))
}

fn criterion_9(_: &mut Ctx) -> Outcome {
    let mut t = FrequencyTable::new();
    t.add(NOUN, "a", 3);
    t.add(NOUN, "b", 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let draws = 10_000;
    let mut a = 0;
    for _ in 0..draws {
        if sample_key(&t, NOUN, &mut rng).map_err(|e| e.to_string())? == "a" {
            a += 1;
        }
    }
    let freq = a as f64 / draws as f64;
    check((0.72..=0.78).contains(&freq), format!("frequency of a = {freq:.4} over {draws} draws"))
}

fn main() -> ExitCode {
    let res = pack::bundled_resources();
    let crime = pack::crime_pack().expect("crime pack");
    let crime_vocab = pack::extraction_vocabulary(&crime, &res);
    let mut ctx = Ctx { res, crime, crime_vocab, tmp: TempDir::new().expect("tempdir"), reports: Vec::new() };
    // Criterion 2 checks the reports produced by the others, so it runs last.
    let criteria: [Criterion; 9] = [
        (1, "round-trip extraction", criterion_1),
        (3, "echo summary", criterion_3),
        (4, "fabrication", criterion_4),
        (5, "omission", criterion_5),
        (6, "compression", criterion_6),
        (7, "greedy vs optimal overlap", criterion_7),
        (8, "determinism", criterion_8),
        (9, "weighted sampling", criterion_9),
        (2, "score identities", criterion_2),
    ];
    let mut results: Vec<(u8, &str, Outcome)> = criteria.iter().map(|(n, name, f)| (*n, *name, f(&mut ctx))).collect();
    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(d) => println!("criterion {n} PASS  {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
