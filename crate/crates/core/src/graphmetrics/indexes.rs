//! The academic index family (Hirsch and friends) plus citation-count
//! features. All operations are pure functions of the graph and corpus.

use super::CitationGraph;
use crate::corpus::{AuthorId, Corpus, PubId};
use crate::scalar::Scalar;
use crate::textindex::QueryView;
use std::collections::BTreeSet;

/// Age-weighting scale γ for the contemporary and trend indexes; the decay
/// exponent δ is 1, i.e. a reciprocal age weight.
pub const CONTEMPORARY_GAMMA: f64 = 4.0;

/// Per-author citation statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuthorCitationStats {
    /// (citations, paper author count), citations descending, ties broken by
    /// ascending publication id so the h-core is deterministic.
    pub per_paper: Vec<(u64, u32)>,
    pub total_citations: u64,
}

impl AuthorCitationStats {
    pub fn for_author<F: Scalar>(
        corpus: &Corpus,
        graph: &CitationGraph<F>,
        author: AuthorId,
    ) -> AuthorCitationStats {
        let Some(a) = corpus.author(author) else {
            return AuthorCitationStats::default();
        };
        let mut rows: Vec<(u64, u32, PubId)> = a
            .pub_ids
            .iter()
            .map(|&pid| {
                (
                    graph.citations(pid) as u64,
                    graph.author_count(pid).max(1),
                    pid,
                )
            })
            .collect();
        rows.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        let total_citations = rows.iter().map(|r| r.0).sum();
        AuthorCitationStats {
            per_paper: rows.into_iter().map(|(c, n, _)| (c, n)).collect(),
            total_citations,
        }
    }

    /// Citation counts, descending.
    pub fn citation_counts(&self) -> Vec<u64> {
        self.per_paper.iter().map(|&(c, _)| c).collect()
    }

    pub fn h(&self) -> usize {
        h_index(&self.citation_counts())
    }
}

/// Hirsch index: the largest `h` such that `h` papers have at least `h`
/// citations each. The vector is sorted internally, so any input order works.
pub fn h_index(citations: &[u64]) -> usize {
    let mut sorted = citations.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut h = 0;
    for (i, &c) in sorted.iter().enumerate() {
        if c >= (i + 1) as u64 {
            h = i + 1;
        } else {
            break;
        }
    }
    h
}

/// g-index: the largest `g` (at most the number of papers) such that the top
/// `g` papers hold at least `g²` citations in total.
pub fn g_index(citations: &[u64]) -> usize {
    let mut sorted = citations.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut g = 0;
    let mut cumulative: u64 = 0;
    for (i, &c) in sorted.iter().enumerate() {
        cumulative += c;
        let rank = (i + 1) as u64;
        if cumulative >= rank * rank {
            g = i + 1;
        }
    }
    g
}

/// a-index: total citations divided by h². Zero when h is zero.
pub fn a_index<F: Scalar>(stats: &AuthorCitationStats) -> F {
    let h = stats.h();
    if h == 0 {
        return F::zero();
    }
    let h_f = F::from_count(h);
    F::from_u64(stats.total_citations).unwrap() / (h_f * h_f)
}

/// e-index: `√(Σ_{j=1..h} cit_j − h²)`, the h-core's citations in excess of
/// h². Zero when h is zero.
pub fn e_index<F: Scalar>(citations: &[u64]) -> F {
    let mut sorted = citations.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let h = h_index(&sorted);
    if h == 0 {
        return F::zero();
    }
    let core_sum: u64 = sorted[..h].iter().sum();
    let h2 = (h * h) as u64;
    F::from_u64(core_sum - h2).unwrap().sqrt()
}

/// Individual Hirsch index: h divided by the mean author count of the
/// h-core papers. Zero when h is zero.
pub fn individual_h_index<F: Scalar>(stats: &AuthorCitationStats) -> F {
    let h = stats.h();
    if h == 0 {
        return F::zero();
    }
    let core_authors: u64 = stats.per_paper[..h].iter().map(|&(_, n)| u64::from(n)).sum();
    let mean = F::from_u64(core_authors).unwrap() / F::from_count(h);
    F::from_count(h) / mean
}

fn age_decay<F: Scalar>(year: Option<i32>, now_year: i32) -> F {
    // (Y(now) − Y + 1)^{-δ} with δ = 1; unknown and future years clamp to
    // age 1.
    let age = match year {
        Some(y) => (now_year - y + 1).max(1),
        None => 1,
    };
    F::one() / F::from_i32(age).unwrap()
}

/// Age-discounted paper score for the contemporary index:
/// `γ · (Y(now) − Y(i) + 1)^{-δ} · |CitationsTo(i)|`.
pub fn contemporary_score<F: Scalar>(citations: usize, year: Option<i32>, now_year: i32) -> F {
    F::constant(CONTEMPORARY_GAMMA) * age_decay(year, now_year) * F::from_count(citations)
}

/// Citation-age-discounted paper score for the trend index:
/// `γ · Σ_{x ∈ C(i)} (Y(now) − Y(x) + 1)^{-δ}`.
pub fn trend_score<F: Scalar>(citing_years: &[Option<i32>], now_year: i32) -> F {
    let sum: F = citing_years
        .iter()
        .map(|&y| age_decay::<F>(y, now_year))
        .sum();
    F::constant(CONTEMPORARY_GAMMA) * sum
}

/// h-style threshold over real-valued paper scores: the largest `h` such
/// that `h` scores are at least `h`. This is what the contemporary and trend
/// indexes apply to their age-discounted scores.
pub fn h_index_over_scores<F: Scalar>(mut scores: Vec<F>) -> usize {
    scores.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut h = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s >= F::from_count(i + 1) {
            h = i + 1;
        } else {
            break;
        }
    }
    h
}

/// Contemporary Hirsch index: h-style threshold over the age-discounted
/// scores of the author's papers.
pub fn contemporary_h_index<F: Scalar>(
    corpus: &Corpus,
    graph: &CitationGraph<F>,
    author: AuthorId,
    now_year: i32,
) -> usize {
    let Some(a) = corpus.author(author) else {
        return 0;
    };
    let scores: Vec<F> = a
        .pub_ids
        .iter()
        .map(|&pid| contemporary_score(graph.citations(pid), graph.year(pid), now_year))
        .collect();
    h_index_over_scores(scores)
}

/// Trend Hirsch index: h-style threshold over citation-age-discounted paper
/// scores.
pub fn trend_h_index<F: Scalar>(
    corpus: &Corpus,
    graph: &CitationGraph<F>,
    author: AuthorId,
    now_year: i32,
) -> usize {
    let Some(a) = corpus.author(author) else {
        return 0;
    };
    let scores: Vec<F> = a
        .pub_ids
        .iter()
        .map(|&pid| trend_score(&graph.citing_years(pid), now_year))
        .collect();
    h_index_over_scores(scores)
}

/// h-b-index: Hirsch index over the citation counts of *all* corpus papers
/// matching the query (title or abstract). Candidate-independent.
pub fn hb_index<F: Scalar>(view: &QueryView<'_>, graph: &CitationGraph<F>) -> usize {
    let counts: Vec<u64> = view
        .matching_docs_any()
        .iter()
        .map(|&pid| graph.citations(pid) as u64)
        .collect();
    h_index(&counts)
}

/// Hirsch index of an institution: over the citation counts of all papers
/// with at least one author from that institution. Authors without
/// institution data contribute to no institution.
pub fn institution_h_index<F: Scalar>(
    institution: &str,
    corpus: &Corpus,
    graph: &CitationGraph<F>,
) -> usize {
    let mut papers: BTreeSet<PubId> = BTreeSet::new();
    for a in corpus.authors() {
        if a.institution.as_deref() == Some(institution) {
            papers.extend(a.pub_ids.iter().copied());
        }
    }
    let counts: Vec<u64> = papers
        .iter()
        .map(|&pid| graph.citations(pid) as u64)
        .collect();
    h_index(&counts)
}

/// Citation-count features for one (query, author) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CitationCountFeatures<F = crate::Score> {
    /// Total citations of the author's query-matching papers.
    pub topical_total: u64,
    /// Mean citations over the query-matching papers (zero without matches).
    pub topical_avg: F,
    /// Maximum citations among the query-matching papers.
    pub topical_max: u64,
    /// Citations to all the author's papers per active career year.
    pub citations_per_year: F,
    /// Distinct co-authors over all the author's papers.
    pub collaborators: usize,
}

pub fn citation_count_features<F: Scalar>(
    corpus: &Corpus,
    graph: &CitationGraph<F>,
    view: &QueryView<'_>,
    author: AuthorId,
) -> CitationCountFeatures<F> {
    let zero = CitationCountFeatures {
        topical_total: 0,
        topical_avg: F::zero(),
        topical_max: 0,
        citations_per_year: F::zero(),
        collaborators: 0,
    };
    let Some(a) = corpus.author(author) else {
        return zero;
    };

    let mut topical_total: u64 = 0;
    let mut topical_max: u64 = 0;
    let mut topical_count: usize = 0;
    let mut all_citations: u64 = 0;
    let mut collaborators: BTreeSet<AuthorId> = BTreeSet::new();
    for &pid in &a.pub_ids {
        let c = graph.citations(pid) as u64;
        all_citations += c;
        if view.matches_contents(pid) {
            topical_total += c;
            topical_max = topical_max.max(c);
            topical_count += 1;
        }
        let p = corpus.publication(pid).expect("pub ids resolvable");
        collaborators.extend(p.author_ids.iter().copied());
    }
    collaborators.remove(&author);

    let topical_avg = if topical_count == 0 {
        F::zero()
    } else {
        F::from_u64(topical_total).unwrap() / F::from_count(topical_count)
    };
    let active_years = F::from_i64(corpus.career_span_years(author) + 1).unwrap();
    CitationCountFeatures {
        topical_total,
        topical_avg,
        topical_max,
        citations_per_year: F::from_u64(all_citations).unwrap() / active_years,
        collaborators: collaborators.len(),
    }
}
