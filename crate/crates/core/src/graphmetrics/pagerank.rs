//! Weighted PageRank over the citation graph.
//!
//! Fixed-point iteration of `Pr_i = 0.5/N + 0.5 Σ_j α_j Pr_j / outlinks(j)`
//! over the incoming links of each node, started from the uniform vector.
//! The damping/jump constant is 0.5 exactly, and dangling-node mass is *not*
//! redistributed; the printed recurrence is iterated as-is. Mass is hence
//! conserved only on dangling-free graphs with unit edge weights.

use super::CitationGraph;
use crate::corpus::{AuthorId, Corpus, PubId};
use crate::scalar::Scalar;
use crate::textindex::QueryView;
use std::collections::BTreeMap;
use std::io::{BufWriter, Write};
use std::path::Path;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 100;

/// Converged (or last) PageRank iterate per publication.
#[derive(Debug, Clone, PartialEq)]
pub struct PageRankScores<F = crate::Score> {
    scores: BTreeMap<PubId, F>,
    /// False when `max_iterations` ran out before the L1 change dropped
    /// below the tolerance.
    pub converged: bool,
    pub iterations: usize,
}

impl<F: Scalar> PageRankScores<F> {
    pub fn score(&self, id: PubId) -> F {
        self.scores.get(&id).copied().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (PubId, F)> + '_ {
        self.scores.iter().map(|(&id, &s)| (id, s))
    }

    pub fn total_mass(&self) -> F {
        self.scores.values().copied().sum()
    }
}

/// Iterate the recurrence until the L1 change between iterates drops below
/// `tolerance`, or for at most `max_iterations` rounds (the last iterate is
/// returned with `converged = false`).
pub fn pagerank<F: Scalar>(
    graph: &CitationGraph<F>,
    tolerance: F,
    max_iterations: usize,
) -> PageRankScores<F> {
    let n = graph.node_count();
    if n == 0 {
        return PageRankScores {
            scores: BTreeMap::new(),
            converged: true,
            iterations: 0,
        };
    }
    let n_f = F::from_count(n);
    let jump = F::constant(0.5) / n_f;
    let damping = F::constant(0.5);

    let mut current = vec![F::one() / n_f; n];
    let mut next = vec![F::zero(); n];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        let mut delta = F::zero();
        for i in 0..n {
            let mut acc = F::zero();
            for &(j, alpha) in graph.in_edges_of(i) {
                acc = acc + alpha * current[j] / F::from_count(graph.out_degree(j));
            }
            next[i] = jump + damping * acc;
            delta = delta + (next[i] - current[i]).abs();
        }
        std::mem::swap(&mut current, &mut next);
        if delta < tolerance {
            converged = true;
            break;
        }
    }

    let scores = current
        .into_iter()
        .enumerate()
        .map(|(i, s)| (graph.node_pub(i), s))
        .collect();
    PageRankScores {
        scores,
        converged,
        iterations,
    }
}

/// Sum and mean of the PageRank values over the author's query-matching
/// papers; (0, 0) without matches.
pub fn pagerank_features<F: Scalar>(
    corpus: &Corpus,
    view: &QueryView<'_>,
    scores: &PageRankScores<F>,
    author: AuthorId,
) -> (F, F) {
    let Some(a) = corpus.author(author) else {
        return (F::zero(), F::zero());
    };
    let mut sum = F::zero();
    let mut count = 0usize;
    for &pid in &a.pub_ids {
        if view.matches_contents(pid) {
            sum = sum + scores.score(pid);
            count += 1;
        }
    }
    if count == 0 {
        (F::zero(), F::zero())
    } else {
        (sum, sum / F::from_count(count))
    }
}

/// Debug dump: one `pub_id<TAB>score` line per publication.
pub fn write_pagerank_scores<F: Scalar>(
    scores: &PageRankScores<F>,
    path: &Path,
) -> std::io::Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    for (id, s) in scores.iter() {
        writeln!(out, "{id}\t{s}")?;
    }
    out.flush()
}
