//! End-to-end orchestration: augment judgments, extract features, fuse,
//! write run directories, and evaluate them.
//!
//! A run directory holds `manifest.txt` (key=value, enough to re-run),
//! `pools.tsv` (the augmented judgment set), `ranked/q<NNN>.csv` per topic
//! (`query_id,rank,expert_id,score`), `matrix/q<NNN>.csv` audit dumps with
//! raw and normalized values, and optionally `pagerank.tsv`. Everything is
//! written deterministically: the same corpus, judgments, settings, and seed
//! produce byte-identical files.

use crate::aggregate::{
    FeatureExtractor, FeatureMatrix, FusionError, FusionMethod, RankedList,
};
use crate::catalog::{Feature, FeatureCatalog};
use crate::corpus::judgments::{read_pool_file, write_pool_file};
use crate::corpus::{augment_negatives, AuthorId, Corpus, JudgmentError, JudgmentSet};
use crate::eval::{evaluate_run, EvalError, EvaluationReport};
use crate::graphmetrics::{pagerank, write_pagerank_scores, CitationGraph, EdgeWeighting};
use crate::textindex::{Bm25Aggregation, InvertedIndex, Stream};
use crate::Score;
use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Judgments(#[from] JudgmentError),
    #[error("query {query:?}: {source}")]
    Fusion {
        query: String,
        source: FusionError,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("bad ranked-list file {path}: line {line}")]
    BadRankedFile { path: PathBuf, line: usize },
    #[error("run directory {0} has no ranked lists")]
    EmptyRunDir(PathBuf),
    #[error("run directory {0} is missing {1}")]
    MissingRunFile(PathBuf, &'static str),
}

/// Everything a ranking run needs beyond the data itself.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub method: FusionMethod,
    pub catalog: FeatureCatalog,
    pub seed: u64,
    /// Reference year for the age-discounted indexes; defaults to the latest
    /// known publication year in the corpus.
    pub now_year: Option<i32>,
    pub pagerank_tolerance: Score,
    pub pagerank_max_iterations: usize,
    pub bm25_aggregation: Bm25Aggregation,
    pub edge_weighting: EdgeWeighting,
    /// Also dump per-publication PageRank scores into the run directory.
    pub dump_pagerank: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            method: FusionMethod::default(),
            catalog: FeatureCatalog::full(),
            seed: 0,
            now_year: None,
            pagerank_tolerance: crate::graphmetrics::DEFAULT_TOLERANCE,
            pagerank_max_iterations: crate::graphmetrics::DEFAULT_MAX_ITERATIONS,
            bm25_aggregation: Bm25Aggregation::default(),
            edge_weighting: EdgeWeighting::default(),
            dump_pagerank: false,
        }
    }
}

/// In-memory result of a ranking run.
pub struct RankOutcome {
    /// One ranked list per topic, `query_id` = topic index.
    pub lists: Vec<RankedList>,
    /// The raw feature matrices behind the lists, for auditing.
    pub matrices: Vec<FeatureMatrix>,
    /// The augmented judgment set (positives + sampled negatives).
    pub pools: JudgmentSet,
    /// Enabled features excluded because the corpus lacks their data.
    pub unavailable: Vec<Feature>,
    pub pagerank: crate::graphmetrics::PageRankScores,
    pub now_year: i32,
}

/// Author-level BM25 ranking used for negative augmentation: document BM25
/// summed over the author's publications and both streams, descending, ties
/// by ascending author id. Zero-score authors are omitted.
pub fn bm25_author_ranking(
    corpus: &Corpus,
    index: &InvertedIndex,
    query: &str,
) -> Vec<AuthorId> {
    let view = index.query(query);
    let mut scores: HashMap<AuthorId, Score> = HashMap::new();
    for stream in Stream::ALL {
        // Iterating the matching set in ascending pub order keeps float
        // accumulation deterministic.
        for &pid in view.matching_docs(stream) {
            let s: Score = view.bm25_doc(pid, stream);
            if s > 0.0 {
                let p = corpus.publication(pid).expect("matching doc resolvable");
                for &aid in &p.author_ids {
                    *scores.entry(aid).or_insert(0.0) += s;
                }
            }
        }
    }
    let mut ranked: Vec<(AuthorId, Score)> =
        scores.into_iter().filter(|&(_, s)| s > 0.0).collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });
    ranked.into_iter().map(|(id, _)| id).collect()
}

/// Run the full ranking stage: build indexes and the citation graph, compute
/// PageRank, augment negatives, extract features, and fuse per topic.
pub fn run_rank(
    corpus: &Corpus,
    judgments: &JudgmentSet,
    settings: &RunSettings,
) -> Result<RankOutcome, PipelineError> {
    let index = InvertedIndex::build(corpus);
    let graph: CitationGraph = CitationGraph::build(corpus, settings.edge_weighting);
    let pr = pagerank(
        &graph,
        settings.pagerank_tolerance,
        settings.pagerank_max_iterations,
    );
    let now_year = settings
        .now_year
        .or_else(|| corpus.max_year())
        .unwrap_or(0);

    let pools = augment_negatives(
        judgments,
        corpus,
        |q| bm25_author_ranking(corpus, &index, q),
        settings.seed,
    )?;

    let extractor = FeatureExtractor {
        corpus,
        index: &index,
        graph: &graph,
        pagerank: &pr,
        now_year,
        bm25_aggregation: settings.bm25_aggregation,
    };
    let mut lists = Vec::with_capacity(pools.topics.len());
    let mut matrices = Vec::with_capacity(pools.topics.len());
    let mut unavailable = Vec::new();
    for (i, topic) in pools.topics.iter().enumerate() {
        let candidates = topic.candidates();
        let (list, matrix) = extractor
            .rank(i, &topic.query, &candidates, &settings.catalog, settings.method)
            .map_err(|source| PipelineError::Fusion {
                query: topic.query.clone(),
                source,
            })?;
        if i == 0 {
            unavailable = matrix.unavailable.clone();
        }
        lists.push(list);
        matrices.push(matrix);
    }

    Ok(RankOutcome {
        lists,
        matrices,
        pools,
        unavailable,
        pagerank: pr,
        now_year,
    })
}

/// Run the ranking stage and write the run directory.
pub fn rank_to_dir(
    corpus: &Corpus,
    judgments: &JudgmentSet,
    settings: &RunSettings,
    corpus_label: &str,
    judgments_label: &str,
    out_dir: &Path,
) -> Result<RankOutcome, PipelineError> {
    let outcome = run_rank(corpus, judgments, settings)?;

    fs::create_dir_all(out_dir)?;
    write_pool_file(&outcome.pools, &out_dir.join("pools.tsv"))?;

    let ranked_dir = out_dir.join("ranked");
    fs::create_dir_all(&ranked_dir)?;
    for list in &outcome.lists {
        write_ranked_list(list, &ranked_dir.join(ranked_file_name(list.query_id)))?;
    }

    let matrix_dir = out_dir.join("matrix");
    fs::create_dir_all(&matrix_dir)?;
    for matrix in &outcome.matrices {
        write_matrix(matrix, &matrix_dir.join(ranked_file_name(matrix.query_id)))?;
    }

    if settings.dump_pagerank {
        write_pagerank_scores(&outcome.pagerank, &out_dir.join("pagerank.tsv"))?;
    }

    let manifest = render_manifest(settings, corpus_label, judgments_label, &outcome);
    fs::write(out_dir.join("manifest.txt"), manifest)?;
    Ok(outcome)
}

fn ranked_file_name(query_id: usize) -> String {
    format!("q{query_id:03}.csv")
}

fn write_ranked_list(list: &RankedList, path: &Path) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "query_id,rank,expert_id,score")?;
    for (rank, (id, score)) in list.entries.iter().enumerate() {
        writeln!(out, "{},{},{},{}", list.query_id, rank + 1, id, score)?;
    }
    out.flush()
}

fn write_matrix(matrix: &FeatureMatrix, path: &Path) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    let (normalized, _) = matrix.normalized_columns();
    write!(out, "expert_id")?;
    for f in &matrix.features {
        write!(out, ",{}:raw,{}:norm", f.id(), f.id())?;
    }
    writeln!(out)?;
    for (row, id) in matrix.candidates.iter().enumerate() {
        write!(out, "{id}")?;
        for (col, norm) in normalized.iter().enumerate() {
            write!(out, ",{},{}", matrix.raw(row, col), norm[row])?;
        }
        writeln!(out)?;
    }
    out.flush()
}

fn render_manifest(
    settings: &RunSettings,
    corpus_label: &str,
    judgments_label: &str,
    outcome: &RankOutcome,
) -> String {
    let features: Vec<String> = settings.catalog.enabled().map(|f| f.id()).collect();
    let groups: Vec<&str> = settings
        .catalog
        .enabled_groups()
        .iter()
        .map(|g| g.name())
        .collect();
    let unavailable: Vec<String> = outcome.unavailable.iter().map(|f| f.id()).collect();
    let mut m = String::new();
    m.push_str("format=expertrank-run.v1\n");
    m.push_str(&format!("corpus={corpus_label}\n"));
    m.push_str(&format!("judgments={judgments_label}\n"));
    m.push_str(&format!("method={}\n", settings.method));
    m.push_str(&format!("groups={}\n", groups.join(",")));
    m.push_str(&format!("features={}\n", features.join(",")));
    m.push_str(&format!("seed={}\n", settings.seed));
    m.push_str(&format!("now_year={}\n", outcome.now_year));
    m.push_str(&format!(
        "pagerank_tolerance={}\n",
        settings.pagerank_tolerance
    ));
    m.push_str(&format!(
        "pagerank_max_iterations={}\n",
        settings.pagerank_max_iterations
    ));
    m.push_str(&format!(
        "pagerank_converged={}\n",
        outcome.pagerank.converged
    ));
    m.push_str(&format!(
        "bm25_aggregation={}\n",
        match settings.bm25_aggregation {
            Bm25Aggregation::Sum => "sum",
            Bm25Aggregation::Max => "max",
        }
    ));
    m.push_str(&format!(
        "edge_weighting={}\n",
        match settings.edge_weighting {
            EdgeWeighting::CitingAuthors => "citing",
            EdgeWeighting::CitedAuthors => "cited",
        }
    ));
    m.push_str(&format!("topics={}\n", outcome.pools.topics.len()));
    m.push_str(&format!("unavailable_features={}\n", unavailable.join(",")));
    m
}

/// Read one manifest value (used by evaluation to label report rows).
fn manifest_value(manifest: &str, key: &str) -> Option<String> {
    manifest.lines().find_map(|l| {
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_string)
    })
}

/// Load the ranked lists from a run directory's `ranked/` folder.
pub fn load_ranked_lists(run_dir: &Path) -> Result<Vec<RankedList>, PipelineError> {
    let ranked_dir = run_dir.join("ranked");
    if !ranked_dir.is_dir() {
        return Err(PipelineError::MissingRunFile(run_dir.to_path_buf(), "ranked/"));
    }
    let mut files: Vec<PathBuf> = fs::read_dir(&ranked_dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(PipelineError::EmptyRunDir(run_dir.to_path_buf()));
    }
    let mut lists = Vec::with_capacity(files.len());
    for path in files {
        lists.push(read_ranked_list(&path)?);
    }
    Ok(lists)
}

fn read_ranked_list(path: &Path) -> Result<RankedList, PipelineError> {
    let text = fs::read_to_string(path)?;
    let bad = |line: usize| PipelineError::BadRankedFile {
        path: path.to_path_buf(),
        line,
    };
    let mut query_id = None;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != "query_id,rank,expert_id,score" {
                return Err(bad(1));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let qid: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(i + 1))?;
        let _rank = parts.next().ok_or_else(|| bad(i + 1))?;
        let expert: u64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(i + 1))?;
        let score: Score = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(i + 1))?;
        if *query_id.get_or_insert(qid) != qid {
            return Err(bad(i + 1));
        }
        entries.push((AuthorId(expert), score));
    }
    let query_id = query_id.ok_or_else(|| bad(1))?;
    Ok(RankedList {
        query_id,
        query: String::new(),
        entries,
    })
}

/// Evaluate a run directory against its own pool file, returning the report.
pub fn evaluate_run_dir(run_dir: &Path) -> Result<EvaluationReport, PipelineError> {
    let pools_path = run_dir.join("pools.tsv");
    if !pools_path.is_file() {
        return Err(PipelineError::MissingRunFile(run_dir.to_path_buf(), "pools.tsv"));
    }
    let pools = read_pool_file(&pools_path)?;
    let lists = load_ranked_lists(run_dir)?;

    let manifest = fs::read_to_string(run_dir.join("manifest.txt")).unwrap_or_default();
    let method = manifest_value(&manifest, "method").unwrap_or_else(|| "unknown".into());
    let features = manifest_value(&manifest, "groups").unwrap_or_else(|| "unknown".into());
    let seed = manifest_value(&manifest, "seed").and_then(|s| s.parse().ok());

    Ok(evaluate_run(&lists, &pools, method, features, seed)?)
}

/// Write `report.tsv` (the table row) and `report_queries.tsv` (per-query
/// breakdown) into a directory.
pub fn write_report_files(report: &EvaluationReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut table = String::new();
    table.push_str(&EvaluationReport::<Score>::table_header());
    table.push('\n');
    table.push_str(&report.table_row());
    table.push('\n');
    fs::write(dir.join("report.tsv"), table)?;

    let mut per_query = String::new();
    per_query.push_str("query_id\tpositives\tpool\tAP\tP@5\tP@10\tP@15\tP@20\tquery\n");
    for q in &report.per_query {
        per_query.push_str(&format!(
            "{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{}\n",
            q.query_id,
            q.positives,
            q.pool_size,
            q.average_precision,
            q.precision_at[0],
            q.precision_at[1],
            q.precision_at[2],
            q.precision_at[3],
            q.query
        ));
    }
    for skipped in &report.skipped {
        per_query.push_str(&format!("# skipped (no positives in pool): {skipped}\n"));
    }
    fs::write(dir.join("report_queries.tsv"), per_query)?;
    Ok(())
}
