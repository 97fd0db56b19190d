//! Productivity and profile features for an author.

use crate::corpus::{AuthorId, Corpus, VenueKind};
use crate::scalar::Scalar;
use crate::textindex::QueryView;

/// Publication-record features: venue-kind counts with and without the query
/// topic, publication rate, and career span. Most fields are
/// query-independent; only the `*_with_topic` counts depend on the query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileFeatures<F = crate::Score> {
    pub conf_pubs_with_topic: usize,
    pub journal_pubs_with_topic: usize,
    pub conf_pubs_total: usize,
    pub journal_pubs_total: usize,
    /// Publications per active year: total / (career span + 1).
    pub avg_pubs_per_year: F,
    /// Last minus first known publication year.
    pub career_span_years: i64,
}

impl<F: Scalar> Default for ProfileFeatures<F> {
    fn default() -> Self {
        ProfileFeatures {
            conf_pubs_with_topic: 0,
            journal_pubs_with_topic: 0,
            conf_pubs_total: 0,
            journal_pubs_total: 0,
            avg_pubs_per_year: F::zero(),
            career_span_years: 0,
        }
    }
}

/// Compute the profile features for one author.
///
/// A publication "has the topic" when at least one query term occurs in its
/// title or abstract. `Unknown` venues count as conferences. An author with
/// no publications gets all-zero features.
pub fn profile_features<F: Scalar>(
    corpus: &Corpus,
    view: &QueryView<'_>,
    author: AuthorId,
) -> ProfileFeatures<F> {
    let Some(a) = corpus.author(author) else {
        return ProfileFeatures::default();
    };
    if a.pub_ids.is_empty() {
        return ProfileFeatures::default();
    }

    let mut features = ProfileFeatures::<F>::default();
    for &pid in &a.pub_ids {
        let p = corpus.publication(pid).expect("pub ids resolvable");
        let topical = view.matches_contents(pid);
        match p.venue_kind {
            VenueKind::Journal => {
                features.journal_pubs_total += 1;
                if topical {
                    features.journal_pubs_with_topic += 1;
                }
            }
            VenueKind::Conference | VenueKind::Unknown => {
                features.conf_pubs_total += 1;
                if topical {
                    features.conf_pubs_with_topic += 1;
                }
            }
        }
    }
    features.career_span_years = corpus.career_span_years(author);
    let active_years = F::from_i64(features.career_span_years + 1).unwrap();
    features.avg_pubs_per_year = F::from_count(a.pub_ids.len()) / active_years;
    features
}
