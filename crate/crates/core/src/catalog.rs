//! The feature catalog: every expertise estimator the pipeline can compute,
//! its group tag, and the per-run enabled set.

use crate::textindex::Stream;
use std::fmt;
use thiserror::Error;

/// The three feature groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureGroup {
    Text,
    Profile,
    Network,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 3] =
        [FeatureGroup::Text, FeatureGroup::Profile, FeatureGroup::Network];

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroup::Text => "text",
            FeatureGroup::Profile => "profile",
            FeatureGroup::Network => "network",
        }
    }

    pub fn parse(s: &str) -> Option<FeatureGroup> {
        FeatureGroup::ALL.into_iter().find(|g| g.name() == s)
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One column of the feature matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Bm25(Stream),
    TermFrequency(Stream),
    QueryIdf(Stream),
    MatchingAuthors(Stream),
    MatchYearRange(Stream),
    MatchLength(Stream),
    ConfPubsTopical,
    JournalPubsTopical,
    ConfPubsTotal,
    JournalPubsTotal,
    PubsPerYear,
    CareerSpan,
    TopicalCitationsTotal,
    TopicalCitationsAvg,
    TopicalCitationsMax,
    CitationsPerYear,
    Collaborators,
    HIndex,
    InstitutionHIndex,
    HbIndex,
    ContemporaryHIndex,
    TrendHIndex,
    IndividualHIndex,
    AIndex,
    GIndex,
    EIndex,
    PagerankTopicalSum,
    PagerankTopicalAvg,
}

impl Feature {
    /// The full catalog in its canonical column order.
    pub fn all() -> Vec<Feature> {
        use Feature::*;
        let mut features = Vec::with_capacity(34);
        for s in Stream::ALL {
            features.extend([
                Bm25(s),
                TermFrequency(s),
                QueryIdf(s),
                MatchingAuthors(s),
                MatchYearRange(s),
                MatchLength(s),
            ]);
        }
        features.extend([
            ConfPubsTopical,
            JournalPubsTopical,
            ConfPubsTotal,
            JournalPubsTotal,
            PubsPerYear,
            CareerSpan,
            TopicalCitationsTotal,
            TopicalCitationsAvg,
            TopicalCitationsMax,
            CitationsPerYear,
            Collaborators,
            HIndex,
            InstitutionHIndex,
            HbIndex,
            ContemporaryHIndex,
            TrendHIndex,
            IndividualHIndex,
            AIndex,
            GIndex,
            EIndex,
            PagerankTopicalSum,
            PagerankTopicalAvg,
        ]);
        features
    }

    pub fn group(self) -> FeatureGroup {
        use Feature::*;
        match self {
            Bm25(_) | TermFrequency(_) | QueryIdf(_) | MatchingAuthors(_) | MatchYearRange(_)
            | MatchLength(_) => FeatureGroup::Text,
            ConfPubsTopical | JournalPubsTopical | ConfPubsTotal | JournalPubsTotal
            | PubsPerYear | CareerSpan => FeatureGroup::Profile,
            _ => FeatureGroup::Network,
        }
    }

    /// Catalog id, e.g. `text.bm25.title` or `network.h_index`.
    pub fn id(self) -> String {
        use Feature::*;
        match self {
            Bm25(s) => format!("text.bm25.{}", s.name()),
            TermFrequency(s) => format!("text.tf.{}", s.name()),
            QueryIdf(s) => format!("text.idf.{}", s.name()),
            MatchingAuthors(s) => format!("text.matching_authors.{}", s.name()),
            MatchYearRange(s) => format!("text.year_range.{}", s.name()),
            MatchLength(s) => format!("text.match_length.{}", s.name()),
            ConfPubsTopical => "profile.conf_pubs_topical".into(),
            JournalPubsTopical => "profile.journal_pubs_topical".into(),
            ConfPubsTotal => "profile.conf_pubs_total".into(),
            JournalPubsTotal => "profile.journal_pubs_total".into(),
            PubsPerYear => "profile.pubs_per_year".into(),
            CareerSpan => "profile.career_span".into(),
            TopicalCitationsTotal => "network.citations_topical_total".into(),
            TopicalCitationsAvg => "network.citations_topical_avg".into(),
            TopicalCitationsMax => "network.citations_topical_max".into(),
            CitationsPerYear => "network.citations_per_year".into(),
            Collaborators => "network.collaborators".into(),
            HIndex => "network.h_index".into(),
            InstitutionHIndex => "network.institution_h_index".into(),
            HbIndex => "network.hb_index".into(),
            ContemporaryHIndex => "network.contemporary_h_index".into(),
            TrendHIndex => "network.trend_h_index".into(),
            IndividualHIndex => "network.individual_h_index".into(),
            AIndex => "network.a_index".into(),
            GIndex => "network.g_index".into(),
            EIndex => "network.e_index".into(),
            PagerankTopicalSum => "network.pagerank_topical_sum".into(),
            PagerankTopicalAvg => "network.pagerank_topical_avg".into(),
        }
    }

    pub fn parse(id: &str) -> Option<Feature> {
        Feature::all().into_iter().find(|f| f.id() == id)
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown feature or group {token:?}; valid groups: all, text, profile, network")]
    UnknownToken { token: String },
    #[error("feature selection is empty")]
    Empty,
}

/// The ordered feature list with a per-run enabled set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCatalog {
    features: Vec<Feature>,
    enabled: Vec<bool>,
}

impl Default for FeatureCatalog {
    fn default() -> Self {
        FeatureCatalog::full()
    }
}

impl FeatureCatalog {
    /// Everything enabled.
    pub fn full() -> FeatureCatalog {
        let features = Feature::all();
        let enabled = vec![true; features.len()];
        FeatureCatalog { features, enabled }
    }

    /// Enable only the given groups (the ablation runs).
    pub fn with_groups(groups: &[FeatureGroup]) -> FeatureCatalog {
        let features = Feature::all();
        let enabled = features.iter().map(|f| groups.contains(&f.group())).collect();
        FeatureCatalog { features, enabled }
    }

    /// Parse a selection: comma-separated group names, feature ids, or
    /// `all`. Unknown tokens are rejected.
    pub fn from_selection(selection: &str) -> Result<FeatureCatalog, CatalogError> {
        let features = Feature::all();
        let mut enabled = vec![false; features.len()];
        let mut any = false;
        for token in selection.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            any = true;
            if token == "all" {
                enabled.iter_mut().for_each(|e| *e = true);
            } else if let Some(group) = FeatureGroup::parse(token) {
                for (i, f) in features.iter().enumerate() {
                    if f.group() == group {
                        enabled[i] = true;
                    }
                }
            } else if let Some(feature) = Feature::parse(token) {
                let i = features.iter().position(|f| *f == feature).unwrap();
                enabled[i] = true;
            } else {
                return Err(CatalogError::UnknownToken {
                    token: token.to_string(),
                });
            }
        }
        if !any {
            return Err(CatalogError::Empty);
        }
        Ok(FeatureCatalog { features, enabled })
    }

    /// Enabled features in catalog order.
    pub fn enabled(&self) -> impl Iterator<Item = Feature> + '_ {
        self.features
            .iter()
            .zip(&self.enabled)
            .filter(|(_, &e)| e)
            .map(|(&f, _)| f)
    }

    pub fn enabled_count(&self) -> usize {
        self.enabled.iter().filter(|&&e| e).count()
    }

    /// Enabled groups, in canonical order.
    pub fn enabled_groups(&self) -> Vec<FeatureGroup> {
        FeatureGroup::ALL
            .into_iter()
            .filter(|g| self.enabled().any(|f| f.group() == *g))
            .collect()
    }
}
