use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use factharness::analyzer::ingest_annotated_corpus;
use factharness::bundle::{list_bundles, read_bundle, write_atomic, write_bundle};
use factharness::evaluator::{aggregate_csv, evaluate_summary, EvaluationReport, SourceDocument};
use factharness::extract::ExtractionVocabulary;
use factharness::generator::{generate_documents, DomainPack, GenerationConfig};
use factharness::matcher::SemanticResources;
use factharness::pack;
use factharness_bridge::{Backend, BackendSpec};

#[derive(Parser)]
#[command(name = "factharness", version, about = "Reference-free summarization evaluation on synthetic documents")]
struct Cli {
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for generation and evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Generation config (TOML). Defaults to the bundled crime pack.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count entities, modifier pairs and lemmas in an annotated corpus.
    Analyze {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write document bundles.
    Generate {
        #[arg(long)]
        out: PathBuf,
        /// Overrides the configured document count.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Summarize bundles and score the summaries.
    Evaluate {
        #[arg(long)]
        bundles: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Generate, then evaluate into one output directory.
    Run {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        eval: EvalArgs,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// `file:<dir>`, `subprocess:<command>` or an http(s) URL, optionally
    /// prefixed with `<name>=`. Repeatable.
    #[arg(long = "backend")]
    backends: Vec<String>,
    /// Precomputed `<id>.summary` files (file transport).
    #[arg(long)]
    summaries_dir: Option<PathBuf>,
    /// Directory with synonyms.tsv, antonyms.tsv, taxonomy.tsv and vectors.txt.
    #[arg(long, env = "FACTHARNESS_RESOURCES")]
    resources: Option<PathBuf>,
    /// Per-request timeout in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, default_value_t = 2)]
    retries: u32,
}

struct Loaded {
    config: GenerationConfig,
    pack: DomainPack,
    hash: String,
}

fn load_config(path: Option<&Path>, seed: Option<u64>) -> Result<Loaded> {
    let (text, base) = match path {
        Some(p) => (
            fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?,
            Some(p.parent().unwrap_or(Path::new(".")).to_path_buf()),
        ),
        None => (pack::CRIME_CONFIG.to_string(), None),
    };
    let mut config = GenerationConfig::from_toml(&text).context("invalid config")?;
    let artifacts = match &base {
        Some(dir) => {
            let read = |f: &str| {
                let p = dir.join(f);
                fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))
            };
            [read(&config.tree)?, read(&config.grammar)?, read(&config.frequencies)?, read(&config.lexicon)?]
        }
        None => [pack::CRIME_TREE, pack::CRIME_GRAMMAR, pack::CRIME_FREQUENCIES, pack::CRIME_LEXICON].map(String::from),
    };
    let pack = DomainPack::from_sources(&config.domain, &artifacts[0], &artifacts[1], &artifacts[2], &artifacts[3])
        .context("loading domain pack")?;
    let mut h = Sha256::new();
    for part in std::iter::once(&text).chain(&artifacts) {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(Loaded { config, pack, hash: hex::encode(h.finalize()) })
}

fn load_resources(dir: Option<&Path>, threshold: f64) -> Result<SemanticResources> {
    let res = match dir {
        Some(d) => SemanticResources::load(
            &d.join("synonyms.tsv"),
            &d.join("antonyms.tsv"),
            &d.join("taxonomy.tsv"),
            &d.join("vectors.txt"),
        )
        .with_context(|| format!("loading resources from {}", d.display()))?,
        None => pack::bundled_resources(),
    };
    Ok(res.with_threshold(threshold))
}

fn generate(loaded: &Loaded, out: &Path, count: Option<usize>) -> Result<usize> {
    let mut config = loaded.config.clone();
    if let Some(n) = count {
        config.documents = n;
    }
    let docs = generate_documents(&loaded.pack, &config, &loaded.hash).context("generation failed")?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    docs.par_iter().try_for_each(|d| write_bundle(out, d)).context("writing bundles")?;
    Ok(docs.len())
}

fn backends(eval: &EvalArgs) -> Result<Vec<Backend>> {
    if !(eval.timeout.is_finite() && eval.timeout > 0.0) {
        bail!("--timeout must be a positive number of seconds");
    }
    let timeout = Duration::from_secs_f64(eval.timeout);
    let mut specs: Vec<String> = eval.backends.clone();
    if let Some(dir) = &eval.summaries_dir {
        specs.push(format!("file:{}", dir.display()));
    }
    if specs.is_empty() {
        bail!("no backend: pass --backend or --summaries-dir");
    }
    specs
        .iter()
        .map(|s| Ok(Backend::new(BackendSpec::parse(s, timeout, eval.retries)?)))
        .collect()
}

/// Returns the number of reports and of failed reports.
fn evaluate(loaded: &Loaded, bundles: &Path, out: &Path, eval: &EvalArgs) -> Result<(usize, usize)> {
    let backends = backends(eval)?;
    let settings = loaded.config.evaluation;
    let res = load_resources(eval.resources.as_deref(), settings.threshold)?;
    let vocab: ExtractionVocabulary = pack::extraction_vocabulary(&loaded.pack, &res);
    let ids = list_bundles(bundles).with_context(|| format!("listing bundles in {}", bundles.display()))?;
    let docs = ids.iter().map(|id| read_bundle(bundles, id)).collect::<Result<Vec<_>, _>>()?;
    let reports_dir = out.join("reports");
    fs::create_dir_all(&reports_dir).with_context(|| format!("creating {}", reports_dir.display()))?;
    let jobs: Vec<(usize, usize)> = (0..docs.len()).flat_map(|d| (0..backends.len()).map(move |b| (d, b))).collect();
    let reports: Vec<EvaluationReport> = jobs
        .par_iter()
        .map(|&(d, b)| {
            let (doc, backend) = (&docs[d], &backends[b]);
            let source = SourceDocument { id: &doc.id, text: &doc.text, truth: &doc.truth };
            let report = match backend.summarize(&doc.id, &doc.text) {
                Ok(summary) => evaluate_summary(source, &summary, backend.id(), &vocab, &res, settings.weights)
                    .unwrap_or_else(|e| EvaluationReport::failed(&doc.id, backend.id(), &e.to_string(), settings.weights)),
                Err(e) => EvaluationReport::failed(&doc.id, backend.id(), &e.to_string(), settings.weights),
            };
            let path = reports_dir.join(format!("{}.{}.json", doc.id, backend.id()));
            write_atomic(&path, &report.to_json())?;
            Ok(report)
        })
        .collect::<Result<_>>()?;
    write_atomic(&out.join("aggregate.csv"), &aggregate_csv(&reports))?;
    let failed = reports.iter().filter(|r| r.is_failure()).count();
    for r in reports.iter().filter(|r| r.is_failure()) {
        eprintln!("warning: {}: {}", r.backend_id, r.error.as_deref().unwrap_or_default());
    }
    Ok((reports.len(), failed))
}

fn finish(total: usize, failed: usize) -> ExitCode {
    eprintln!("{} report(s), {failed} failed", total);
    if total > 0 && failed == total {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global().ok();
    match &cli.command {
        Command::Analyze { corpus, out } => {
            let text = fs::read_to_string(corpus).with_context(|| format!("reading corpus {}", corpus.display()))?;
            let table = ingest_annotated_corpus(&text).with_context(|| format!("parsing {}", corpus.display()))?;
            write_atomic(out, &table.to_tsv())?;
            eprintln!("{} entries written to {}", table.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { out, count } => {
            let loaded = load_config(cli.config.as_deref(), cli.seed)?;
            let n = generate(&loaded, out, *count)?;
            eprintln!("{n} bundle(s) written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Evaluate { bundles, out, eval } => {
            let loaded = load_config(cli.config.as_deref(), cli.seed)?;
            let (total, failed) = evaluate(&loaded, bundles, out, eval)?;
            Ok(finish(total, failed))
        }
        Command::Run { out, count, eval } => {
            let loaded = load_config(cli.config.as_deref(), cli.seed)?;
            let bundles = out.join("bundles");
            generate(&loaded, &bundles, *count)?;
            let (total, failed) = evaluate(&loaded, &bundles, out, eval)?;
            Ok(finish(total, failed))
        }
    }
}
