//! Per-query feature matrix assembly, min-max normalization, and fusion with
//! CombSUM or CombMNZ.
//!
//! Normalization scope is per query, per feature column, across that query's
//! candidate pool. A degenerate column (max = min) normalizes to all zero and
//! is excluded from the CombMNZ non-zero count: a constant column carries no
//! ranking information and must not inflate `r_e`.

use crate::catalog::{Feature, FeatureCatalog, FeatureGroup};
use crate::corpus::{AuthorId, Corpus};
use crate::graphmetrics::{
    a_index, citation_count_features, contemporary_h_index, e_index, hb_index,
    individual_h_index, institution_h_index, pagerank_features, trend_h_index,
    AuthorCitationStats, CitationGraph, PageRankScores,
};
use crate::profile::profile_features;
use crate::scalar::Scalar;
use crate::textindex::{Bm25Aggregation, InvertedIndex, QueryView};
use std::collections::BTreeSet;
use thiserror::Error;

/// The two fusion methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FusionMethod {
    CombSum,
    #[default]
    CombMnz,
}

impl FusionMethod {
    pub const ALL: [FusionMethod; 2] = [FusionMethod::CombSum, FusionMethod::CombMnz];

    pub fn name(self) -> &'static str {
        match self {
            FusionMethod::CombSum => "combsum",
            FusionMethod::CombMnz => "combmnz",
        }
    }

    pub fn parse(s: &str) -> Option<FusionMethod> {
        FusionMethod::ALL.into_iter().find(|m| m.name() == s)
    }
}

impl std::fmt::Display for FusionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("no available feature columns enabled")]
    NoColumns,
    #[error("empty candidate pool")]
    EmptyPool,
    #[error("candidate {0} appears twice in the pool")]
    DuplicateCandidate(AuthorId),
}

/// Raw feature values for one query: rows are the candidate pool, columns
/// the enabled *available* features; enabled features that turned out
/// unavailable (no data corpus-wide) are listed separately.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix<F = crate::Score> {
    pub query_id: usize,
    pub query: String,
    pub candidates: Vec<AuthorId>,
    pub features: Vec<Feature>,
    pub unavailable: Vec<Feature>,
    /// Row-major: `values[row * features.len() + col]`.
    values: Vec<F>,
}

impl<F: Scalar> FeatureMatrix<F> {
    /// Assemble a matrix from raw rows (used by fusion tests and audits; the
    /// pipeline goes through [`FeatureExtractor`]).
    pub fn from_raw(
        query_id: usize,
        query: impl Into<String>,
        candidates: Vec<AuthorId>,
        features: Vec<Feature>,
        rows: Vec<Vec<F>>,
    ) -> Result<FeatureMatrix<F>, FusionError> {
        if candidates.is_empty() {
            return Err(FusionError::EmptyPool);
        }
        if features.is_empty() {
            return Err(FusionError::NoColumns);
        }
        let mut seen = BTreeSet::new();
        for &c in &candidates {
            if !seen.insert(c) {
                return Err(FusionError::DuplicateCandidate(c));
            }
        }
        assert_eq!(rows.len(), candidates.len(), "one row per candidate");
        let mut values = Vec::with_capacity(candidates.len() * features.len());
        for row in rows {
            assert_eq!(row.len(), features.len(), "one value per feature");
            values.extend(row);
        }
        Ok(FeatureMatrix {
            query_id,
            query: query.into(),
            candidates,
            features,
            unavailable: Vec::new(),
            values,
        })
    }

    pub fn raw(&self, row: usize, col: usize) -> F {
        self.values[row * self.features.len() + col]
    }

    pub fn column(&self, col: usize) -> Vec<F> {
        (0..self.candidates.len()).map(|r| self.raw(r, col)).collect()
    }

    /// Min-max-normalized columns, plus the degenerate flag per column.
    pub fn normalized_columns(&self) -> (Vec<Vec<F>>, Vec<bool>) {
        let mut columns = Vec::with_capacity(self.features.len());
        let mut degenerate = Vec::with_capacity(self.features.len());
        for c in 0..self.features.len() {
            let raw = self.column(c);
            let min = raw.iter().copied().fold(F::infinity(), F::min);
            let max = raw.iter().copied().fold(F::neg_infinity(), F::max);
            degenerate.push(max == min);
            columns.push(minmax_normalize(&raw));
        }
        (columns, degenerate)
    }
}

/// Min-max normalization: `(v − min) / (max − min)`, mapping the column into
/// [0, 1]. A constant column maps to all zero.
pub fn minmax_normalize<F: Scalar>(column: &[F]) -> Vec<F> {
    assert!(!column.is_empty(), "normalization needs a non-empty column");
    let min = column.iter().copied().fold(F::infinity(), F::min);
    let max = column.iter().copied().fold(F::neg_infinity(), F::max);
    if max == min {
        return vec![F::zero(); column.len()];
    }
    let range = max - min;
    column.iter().map(|&v| (v - min) / range).collect()
}

/// Ordered candidates with their aggregated scores: descending score, ties
/// broken by ascending author id.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList<F = crate::Score> {
    pub query_id: usize,
    pub query: String,
    pub entries: Vec<(AuthorId, F)>,
}

impl<F: Scalar> RankedList<F> {
    pub fn ranking(&self) -> Vec<AuthorId> {
        self.entries.iter().map(|&(id, _)| id).collect()
    }

    pub fn rank_of(&self, id: AuthorId) -> Option<usize> {
        self.entries.iter().position(|&(e, _)| e == id).map(|p| p + 1)
    }
}

fn ranked<F: Scalar>(matrix: &FeatureMatrix<F>, scores: Vec<F>) -> RankedList<F> {
    let mut entries: Vec<(AuthorId, F)> =
        matrix.candidates.iter().copied().zip(scores).collect();
    entries.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });
    RankedList {
        query_id: matrix.query_id,
        query: matrix.query.clone(),
        entries,
    }
}

fn comb_sum_scores<F: Scalar>(matrix: &FeatureMatrix<F>) -> Result<Vec<F>, FusionError> {
    if matrix.features.is_empty() {
        return Err(FusionError::NoColumns);
    }
    if matrix.candidates.is_empty() {
        return Err(FusionError::EmptyPool);
    }
    let (columns, _) = matrix.normalized_columns();
    let scores = (0..matrix.candidates.len())
        .map(|r| columns.iter().map(|col| col[r]).sum())
        .collect();
    Ok(scores)
}

/// CombSUM: each candidate's sum of min-max-normalized feature scores.
pub fn comb_sum<F: Scalar>(matrix: &FeatureMatrix<F>) -> Result<RankedList<F>, FusionError> {
    Ok(ranked(matrix, comb_sum_scores(matrix)?))
}

/// CombMNZ: CombSUM times `r_e`, the number of non-degenerate columns with a
/// non-zero *raw* value for the candidate.
pub fn comb_mnz<F: Scalar>(matrix: &FeatureMatrix<F>) -> Result<RankedList<F>, FusionError> {
    let sums = comb_sum_scores(matrix)?;
    let (_, degenerate) = matrix.normalized_columns();
    let scores = sums
        .into_iter()
        .enumerate()
        .map(|(r, sum)| {
            let r_e = (0..matrix.features.len())
                .filter(|&c| !degenerate[c] && matrix.raw(r, c) != F::zero())
                .count();
            sum * F::from_count(r_e)
        })
        .collect();
    Ok(ranked(matrix, scores))
}

/// Everything feature extraction reads: the corpus, its indexes, the citation
/// graph with PageRank scores, and the extraction settings.
pub struct FeatureExtractor<'a, F: Scalar = crate::Score> {
    pub corpus: &'a Corpus,
    pub index: &'a InvertedIndex,
    pub graph: &'a CitationGraph<F>,
    pub pagerank: &'a PageRankScores<F>,
    pub now_year: i32,
    pub bm25_aggregation: Bm25Aggregation,
}

impl<F: Scalar> FeatureExtractor<'_, F> {
    /// Compute the raw feature matrix for one query over a candidate pool.
    pub fn build_matrix(
        &self,
        query_id: usize,
        query: &str,
        candidates: &[AuthorId],
        catalog: &FeatureCatalog,
    ) -> Result<FeatureMatrix<F>, FusionError> {
        if candidates.is_empty() {
            return Err(FusionError::EmptyPool);
        }
        let mut seen = BTreeSet::new();
        for &c in candidates {
            if !seen.insert(c) {
                return Err(FusionError::DuplicateCandidate(c));
            }
        }

        let mut features = Vec::new();
        let mut unavailable = Vec::new();
        for f in catalog.enabled() {
            if f == Feature::InstitutionHIndex && !self.corpus.has_institutions() {
                unavailable.push(f);
            } else {
                features.push(f);
            }
        }
        if features.is_empty() {
            return Err(FusionError::NoColumns);
        }

        let view = self.index.query(query);
        let need_profile = features.iter().any(|f| f.group() == FeatureGroup::Profile);
        let need_network = features.iter().any(|f| f.group() == FeatureGroup::Network);
        // Candidate-independent values, once per query.
        let hb = if need_network {
            F::from_count(hb_index(&view, self.graph))
        } else {
            F::zero()
        };

        let mut values = Vec::with_capacity(candidates.len() * features.len());
        for &candidate in candidates {
            let stats = need_network
                .then(|| AuthorCitationStats::for_author(self.corpus, self.graph, candidate));
            let cites = need_network
                .then(|| citation_count_features(self.corpus, self.graph, &view, candidate));
            let pr = need_network
                .then(|| pagerank_features(self.corpus, &view, self.pagerank, candidate));
            let prof = need_profile
                .then(|| profile_features::<F>(self.corpus, &view, candidate));

            for &feature in &features {
                values.push(self.extract(feature, &view, candidate, hb, &stats, &cites, &pr, &prof));
            }
        }

        Ok(FeatureMatrix {
            query_id,
            query: query.to_string(),
            candidates: candidates.to_vec(),
            features,
            unavailable,
            values,
        })
    }

    /// Build the matrix and fuse it with the chosen method.
    pub fn rank(
        &self,
        query_id: usize,
        query: &str,
        candidates: &[AuthorId],
        catalog: &FeatureCatalog,
        method: FusionMethod,
    ) -> Result<(RankedList<F>, FeatureMatrix<F>), FusionError> {
        let matrix = self.build_matrix(query_id, query, candidates, catalog)?;
        let list = match method {
            FusionMethod::CombSum => comb_sum(&matrix)?,
            FusionMethod::CombMnz => comb_mnz(&matrix)?,
        };
        Ok((list, matrix))
    }

    #[allow(clippy::too_many_arguments)]
    fn extract(
        &self,
        feature: Feature,
        view: &QueryView<'_>,
        candidate: AuthorId,
        hb: F,
        stats: &Option<AuthorCitationStats>,
        cites: &Option<crate::graphmetrics::CitationCountFeatures<F>>,
        pr: &Option<(F, F)>,
        prof: &Option<crate::profile::ProfileFeatures<F>>,
    ) -> F {
        use Feature::*;
        match feature {
            Bm25(s) => view.author_bm25(self.corpus, candidate, s, self.bm25_aggregation),
            TermFrequency(s) => view.author_tf(self.corpus, candidate, s),
            QueryIdf(s) => view.query_idf(s),
            MatchingAuthors(s) => {
                F::from_count(view.simple_text_features(self.corpus, candidate, s).matching_authors)
            }
            MatchYearRange(s) => F::from_i64(
                view.simple_text_features(self.corpus, candidate, s).year_range,
            )
            .unwrap(),
            MatchLength(s) => F::from_u64(
                view.simple_text_features(self.corpus, candidate, s).match_length,
            )
            .unwrap(),
            ConfPubsTopical => F::from_count(prof.as_ref().unwrap().conf_pubs_with_topic),
            JournalPubsTopical => F::from_count(prof.as_ref().unwrap().journal_pubs_with_topic),
            ConfPubsTotal => F::from_count(prof.as_ref().unwrap().conf_pubs_total),
            JournalPubsTotal => F::from_count(prof.as_ref().unwrap().journal_pubs_total),
            PubsPerYear => prof.as_ref().unwrap().avg_pubs_per_year,
            CareerSpan => F::from_i64(prof.as_ref().unwrap().career_span_years).unwrap(),
            TopicalCitationsTotal => F::from_u64(cites.as_ref().unwrap().topical_total).unwrap(),
            TopicalCitationsAvg => cites.as_ref().unwrap().topical_avg,
            TopicalCitationsMax => F::from_u64(cites.as_ref().unwrap().topical_max).unwrap(),
            CitationsPerYear => cites.as_ref().unwrap().citations_per_year,
            Collaborators => F::from_count(cites.as_ref().unwrap().collaborators),
            HIndex => F::from_count(stats.as_ref().unwrap().h()),
            InstitutionHIndex => {
                let inst = self
                    .corpus
                    .author(candidate)
                    .and_then(|a| a.institution.clone());
                match inst {
                    Some(inst) => {
                        F::from_count(institution_h_index(&inst, self.corpus, self.graph))
                    }
                    None => F::zero(),
                }
            }
            HbIndex => hb,
            ContemporaryHIndex => F::from_count(contemporary_h_index(
                self.corpus,
                self.graph,
                candidate,
                self.now_year,
            )),
            TrendHIndex => F::from_count(trend_h_index(
                self.corpus,
                self.graph,
                candidate,
                self.now_year,
            )),
            IndividualHIndex => individual_h_index(stats.as_ref().unwrap()),
            AIndex => a_index(stats.as_ref().unwrap()),
            GIndex => {
                F::from_count(crate::graphmetrics::g_index(&stats.as_ref().unwrap().citation_counts()))
            }
            EIndex => e_index(&stats.as_ref().unwrap().citation_counts()),
            PagerankTopicalSum => pr.as_ref().unwrap().0,
            PagerankTopicalAvg => pr.as_ref().unwrap().1,
        }
    }
}
