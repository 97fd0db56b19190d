//! Ranking quality metrics (P@k, average precision) and run-level reports.

use crate::aggregate::RankedList;
use crate::corpus::{AuthorId, JudgmentSet};
use crate::scalar::Scalar;
use std::collections::BTreeSet;
use thiserror::Error;

/// Report cutoffs, mirroring the usual P@5/P@10/P@15/P@20 table columns.
pub const REPORT_CUTOFFS: [usize; 4] = [5, 10, 15, 20];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("precision cutoff k must be at least 1")]
    ZeroCutoff,
    #[error("no ranked list for judged query {query:?}")]
    MissingRankedList { query: String },
    #[error("nothing to evaluate: no judged topics")]
    NoTopics,
}

/// Precision at rank k: relevant-in-top-k divided by k. Lists shorter than
/// `k` keep the denominator at `k` (missing slots are misses).
pub fn precision_at_k<F: Scalar>(
    ranked: &[AuthorId],
    positives: &BTreeSet<AuthorId>,
    k: usize,
) -> Result<F, EvalError> {
    if k == 0 {
        return Err(EvalError::ZeroCutoff);
    }
    let hits = ranked
        .iter()
        .take(k)
        .filter(|id| positives.contains(id))
        .count();
    Ok(F::from_count(hits) / F::from_count(k))
}

/// Average precision: the mean of P@k over the ranks of the relevant items,
/// divided by the number of relevant items present in the list. `None` when
/// no positive appears in the list (the query is then skipped).
pub fn average_precision<F: Scalar>(
    ranked: &[AuthorId],
    positives: &BTreeSet<AuthorId>,
) -> Option<F> {
    let present = ranked.iter().filter(|id| positives.contains(id)).count();
    if present == 0 {
        return None;
    }
    let mut hits = 0usize;
    let mut sum = F::zero();
    for (i, id) in ranked.iter().enumerate() {
        if positives.contains(id) {
            hits += 1;
            sum = sum + F::from_count(hits) / F::from_count(i + 1);
        }
    }
    Some(sum / F::from_count(present))
}

/// Per-query evaluation row.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryEvaluation<F = crate::Score> {
    pub query_id: usize,
    pub query: String,
    pub positives: usize,
    pub pool_size: usize,
    pub average_precision: F,
    pub precision_at: [F; 4],
}

/// Macro-averaged metrics for one run, plus the per-query breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport<F = crate::Score> {
    /// Run metadata: fusion method and enabled feature groups.
    pub method: String,
    pub features: String,
    pub seed: Option<u64>,
    pub per_query: Vec<QueryEvaluation<F>>,
    /// Queries skipped because no positive was present in the pool.
    pub skipped: Vec<String>,
    pub precision_at: [F; 4],
    pub map: F,
}

impl<F: Scalar> EvaluationReport<F> {
    pub fn table_header() -> String {
        "run\tP@5\tP@10\tP@15\tP@20\tMAP".to_string()
    }

    /// One table row shaped like the usual results tables.
    pub fn table_row(&self) -> String {
        let p = &self.precision_at;
        format!(
            "{}[{}]\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}",
            self.method, self.features, p[0], p[1], p[2], p[3], self.map
        )
    }
}

/// Evaluate ranked lists against judgments, macro-averaging over queries.
///
/// The i-th judged topic is matched to the ranked list with `query_id = i`.
/// A missing list is an error naming the query; topics whose pool contains
/// no positive are skipped with a note in the report.
pub fn evaluate_run<F: Scalar>(
    lists: &[RankedList<F>],
    judgments: &JudgmentSet,
    method: impl Into<String>,
    features: impl Into<String>,
    seed: Option<u64>,
) -> Result<EvaluationReport<F>, EvalError> {
    if judgments.topics.is_empty() {
        return Err(EvalError::NoTopics);
    }
    let mut per_query = Vec::new();
    let mut skipped = Vec::new();
    for (i, topic) in judgments.topics.iter().enumerate() {
        let list = lists
            .iter()
            .find(|l| l.query_id == i)
            .ok_or_else(|| EvalError::MissingRankedList {
                query: topic.query.clone(),
            })?;
        let ranking = list.ranking();
        let positives: BTreeSet<AuthorId> = topic.positives.iter().copied().collect();
        let Some(ap) = average_precision::<F>(&ranking, &positives) else {
            skipped.push(topic.query.clone());
            continue;
        };
        let mut precision_at = [F::zero(); 4];
        for (slot, &k) in REPORT_CUTOFFS.iter().enumerate() {
            precision_at[slot] = precision_at_k(&ranking, &positives, k)?;
        }
        per_query.push(QueryEvaluation {
            query_id: i,
            query: topic.query.clone(),
            positives: positives.len(),
            pool_size: ranking.len(),
            average_precision: ap,
            precision_at,
        });
    }
    if per_query.is_empty() {
        return Err(EvalError::NoTopics);
    }

    let n = F::from_count(per_query.len());
    let map = per_query
        .iter()
        .map(|q| q.average_precision)
        .fold(F::zero(), |a, b| a + b)
        / n;
    let mut precision_at = [F::zero(); 4];
    for (slot, avg) in precision_at.iter_mut().enumerate() {
        *avg = per_query
            .iter()
            .map(|q| q.precision_at[slot])
            .fold(F::zero(), |a, b| a + b)
            / n;
    }
    Ok(EvaluationReport {
        method: method.into(),
        features: features.into(),
        seed,
        per_query,
        skipped,
        precision_at,
        map,
    })
}
