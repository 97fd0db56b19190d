//! Command-line pipeline: ingest a publication dump, rank candidate experts
//! per judged topic with CombSUM/CombMNZ feature fusion, and evaluate the
//! ranked lists.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error.

mod config;

use anyhow::Context;
use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};
use config::{resolve_data_path, RunConfigFile};
use expertrank_core::aggregate::FusionMethod;
use expertrank_core::catalog::FeatureCatalog;
use expertrank_core::corpus::persist::{load_corpus, read_header, save_corpus};
use expertrank_core::corpus::{load_judgments, parse_corpus, CorpusFormat, VenueClassifier};
use expertrank_core::graphmetrics::EdgeWeighting;
use expertrank_core::pipeline::{evaluate_run_dir, rank_to_dir, write_report_files, RunSettings};
use expertrank_core::textindex::Bm25Aggregation;
use expertrank_core::{fixture, Score};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "expertrank", version, about = "Expert search via unsupervised rank aggregation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a flat publication dump into the persisted corpus format.
    Ingest(IngestArgs),
    /// Rank candidate experts for every judged topic and write a run directory.
    Rank(RankArgs),
    /// Evaluate one or more run directories (P@k, MAP).
    Eval(EvalArgs),
    /// Write the bundled synthetic corpus and judgments (for tests and demos).
    Fixture(FixtureArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Flat-file publication dump.
    #[arg(long)]
    corpus: PathBuf,
    /// Output path for the persisted corpus.
    #[arg(long)]
    out: PathBuf,
    /// Venue classification patterns (journal/conference<TAB>substring lines).
    #[arg(long)]
    venue_patterns: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    /// Run configuration file (TOML); flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Persisted corpus (from `ingest`).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Judgments file: `Q<TAB>query` then one author name or id per line.
    #[arg(long)]
    judgments: Option<PathBuf>,
    /// Fusion method: combsum or combmnz.
    #[arg(long)]
    method: Option<String>,
    /// Feature selection: `all`, group names, or feature ids, comma-separated.
    #[arg(long)]
    features: Option<String>,
    /// Seed for the negative-augmentation sampling (mandatory).
    #[arg(long)]
    seed: Option<u64>,
    /// Reference year for age-discounted indexes (default: corpus max year).
    #[arg(long)]
    now_year: Option<i32>,
    #[arg(long)]
    pagerank_tolerance: Option<Score>,
    #[arg(long)]
    pagerank_max_iterations: Option<usize>,
    /// Author-level BM25 aggregation: sum or max.
    #[arg(long)]
    bm25_aggregation: Option<String>,
    /// Citation edge weight side: citing or cited (α = 1/authors).
    #[arg(long)]
    edge_weighting: Option<String>,
    /// Also dump per-publication PageRank scores into the run directory.
    #[arg(long)]
    dump_pagerank: bool,
    /// Run output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Run directories produced by `rank`.
    #[arg(required = true)]
    runs: Vec<PathBuf>,
    /// Optional directory for the combined report table.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FixtureArgs {
    /// Directory for `corpus.flat.txt` and `judgments.tsv`.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = fixture::DEFAULT_SEED)]
    seed: u64,
}

/// Failures sorted by exit code: configuration (1) vs data (2).
enum Failure {
    Config(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Rank(args) => cmd_rank(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Fixture(args) => cmd_fixture(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_ingest(args: IngestArgs) -> Result<(), Failure> {
    let classifier = match &args.venue_patterns {
        Some(path) => VenueClassifier::from_pattern_file(path)
            .map_err(|e| Failure::Config(format!("bad venue pattern file: {e}")))?,
        None => VenueClassifier::default(),
    };
    let corpus_path = resolve_data_path(&args.corpus);
    let (corpus, diagnostics) =
        parse_corpus(&corpus_path, CorpusFormat::ArnetminerFlat, &classifier)
            .with_context(|| format!("ingesting {}", corpus_path.display()))?;
    save_corpus(&corpus, &args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;

    let diag_path = args.out.with_extension("diagnostics.txt");
    std::fs::write(&diag_path, format!("{diagnostics}\n"))
        .with_context(|| format!("writing {}", diag_path.display()))?;

    let stats = corpus.stats();
    println!(
        "ingested publications={} authors={} citation_links={} with_abstract={} \
         conference={} journal={} unknown_venue={} skipped_records={} dropped_references={}",
        stats.publications,
        stats.authors,
        stats.citation_links,
        stats.with_abstract,
        stats.conference,
        stats.journal,
        stats.unknown_venue,
        diagnostics.records_skipped,
        diagnostics.references_dropped_unresolved + diagnostics.references_dropped_self,
    );
    println!("corpus written to {}", args.out.display());
    println!("diagnostics written to {}", diag_path.display());
    Ok(())
}

fn cmd_rank(args: RankArgs) -> Result<(), Failure> {
    let file = match &args.config {
        Some(path) => RunConfigFile::load(path)
            .map_err(|e| Failure::Config(format!("config {}: {e}", path.display())))?,
        None => RunConfigFile::default(),
    };

    // Validate the whole configuration before touching any data.
    let mut problems: Vec<String> = Vec::new();
    let corpus_path = args.corpus.or(file.corpus.map(PathBuf::from));
    if corpus_path.is_none() {
        problems.push("no corpus given (--corpus or config `corpus`)".into());
    }
    let judgments_path = args.judgments.or(file.judgments.map(PathBuf::from));
    if judgments_path.is_none() {
        problems.push("no judgments given (--judgments or config `judgments`)".into());
    }
    let out_dir = args.out.or(file.out.map(PathBuf::from));
    if out_dir.is_none() {
        problems.push("no output directory given (--out or config `out`)".into());
    }
    let seed = args.seed.or(file.seed);
    if seed.is_none() {
        problems.push("no seed given (--seed or config `seed`); negative augmentation requires one".into());
    }
    let method = match args.method.or(file.method) {
        None => Some(FusionMethod::default()),
        Some(name) => match FusionMethod::parse(&name) {
            Some(m) => Some(m),
            None => {
                problems.push(format!("unknown method {name:?}; use combsum or combmnz"));
                None
            }
        },
    };
    let catalog = match args.features.or(file.features) {
        None => Some(FeatureCatalog::full()),
        Some(sel) => match FeatureCatalog::from_selection(&sel) {
            Ok(c) => Some(c),
            Err(e) => {
                problems.push(e.to_string());
                None
            }
        },
    };
    let bm25_aggregation = match args
        .bm25_aggregation
        .or(file.bm25_aggregation)
        .as_deref()
    {
        None | Some("sum") => Some(Bm25Aggregation::Sum),
        Some("max") => Some(Bm25Aggregation::Max),
        Some(other) => {
            problems.push(format!("unknown bm25_aggregation {other:?}; use sum or max"));
            None
        }
    };
    let edge_weighting = match args.edge_weighting.or(file.edge_weighting).as_deref() {
        None | Some("citing") => Some(EdgeWeighting::CitingAuthors),
        Some("cited") => Some(EdgeWeighting::CitedAuthors),
        Some(other) => {
            problems.push(format!("unknown edge_weighting {other:?}; use citing or cited"));
            None
        }
    };
    if !problems.is_empty() {
        return Err(Failure::Config(problems.join("\n       ")));
    }

    let corpus_path = resolve_data_path(&corpus_path.unwrap());
    let judgments_path = resolve_data_path(&judgments_path.unwrap());
    let out_dir = out_dir.unwrap();
    let settings = RunSettings {
        method: method.unwrap(),
        catalog: catalog.unwrap(),
        seed: seed.unwrap(),
        now_year: args.now_year.or(file.now_year),
        pagerank_tolerance: args
            .pagerank_tolerance
            .or(file.pagerank_tolerance)
            .unwrap_or(expertrank_core::graphmetrics::DEFAULT_TOLERANCE),
        pagerank_max_iterations: args
            .pagerank_max_iterations
            .or(file.pagerank_max_iterations)
            .unwrap_or(expertrank_core::graphmetrics::DEFAULT_MAX_ITERATIONS),
        bm25_aggregation: bm25_aggregation.unwrap(),
        edge_weighting: edge_weighting.unwrap(),
        dump_pagerank: args.dump_pagerank || file.dump_pagerank.unwrap_or(false),
    };

    let corpus = load_corpus(&corpus_path)
        .with_context(|| format!("loading corpus {}", corpus_path.display()))?;
    let header = read_header(&corpus_path)
        .with_context(|| format!("reading corpus header {}", corpus_path.display()))?;
    let (judgments, jdiag) = load_judgments(&judgments_path, &corpus)
        .with_context(|| format!("loading judgments {}", judgments_path.display()))?;
    if !jdiag.unresolved.is_empty() || !jdiag.excluded_topics.is_empty() {
        eprint!("{jdiag}");
    }

    let corpus_label = format!(
        "{} (format v{}, {} publications, {} authors)",
        corpus_path.display(),
        header.version,
        header.publications,
        header.authors
    );
    let outcome = rank_to_dir(
        &corpus,
        &judgments,
        &settings,
        &corpus_label,
        &judgments_path.display().to_string(),
        &out_dir,
    )
    .map_err(|e| Failure::Data(anyhow::Error::new(e)))?;

    println!(
        "ranked {} topics with {} ({} features enabled) into {}",
        outcome.lists.len(),
        settings.method,
        settings.catalog.enabled_count(),
        out_dir.display()
    );
    if !outcome.unavailable.is_empty() {
        let ids: Vec<String> = outcome.unavailable.iter().map(|f| f.id()).collect();
        println!("excluded unavailable features: {}", ids.join(","));
    }
    if !outcome.pagerank.converged {
        eprintln!(
            "warning: pagerank did not converge within {} iterations",
            settings.pagerank_max_iterations
        );
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let mut rows = Vec::new();
    println!("{}", expertrank_core::eval::EvaluationReport::<Score>::table_header());
    for run in &args.runs {
        let report =
            evaluate_run_dir(run).with_context(|| format!("evaluating {}", run.display()))?;
        write_report_files(&report, run)
            .with_context(|| format!("writing report into {}", run.display()))?;
        println!("{}", report.table_row());
        rows.push(report.table_row());
        for skipped in &report.skipped {
            eprintln!("warning: query skipped (no positives in pool): {skipped}");
        }
    }
    if let Some(out) = &args.out {
        std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        let mut table = expertrank_core::eval::EvaluationReport::<Score>::table_header();
        table.push('\n');
        for row in &rows {
            table.push_str(row);
            table.push('\n');
        }
        std::fs::write(out.join("report.tsv"), table)
            .with_context(|| format!("writing {}", out.join("report.tsv").display()))?;
    }
    Ok(())
}

fn cmd_fixture(args: FixtureArgs) -> Result<(), Failure> {
    let fx = fixture::generate(args.seed);
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let corpus_path = args.out.join("corpus.flat.txt");
    let judgments_path = args.out.join("judgments.tsv");
    std::fs::write(&corpus_path, &fx.corpus_flat)
        .with_context(|| format!("writing {}", corpus_path.display()))?;
    std::fs::write(&judgments_path, &fx.judgments)
        .with_context(|| format!("writing {}", judgments_path.display()))?;
    println!(
        "fixture seed={} publications={} authors={} citation_links={} topics={}",
        args.seed,
        fx.manifest.publications,
        fx.manifest.authors,
        fx.manifest.citation_links,
        fx.manifest.topics.len()
    );
    println!("corpus written to {}", corpus_path.display());
    println!("judgments written to {}", judgments_path.display());
    Ok(())
}
