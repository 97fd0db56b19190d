//! Publication corpus: domain types, flat-file ingestion, persistence, and
//! relevance judgments.
//!
//! A [`Corpus`] is built once (single writer) and immutable afterwards; every
//! downstream consumer (indexes, graphs, feature extraction) only reads it.

pub mod arnetminer;
pub mod judgments;
pub mod persist;

use crate::scalar::Scalar;
use crate::textindex;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

pub use arnetminer::{parse_corpus, CorpusFormat, IngestDiagnostics, IngestError};
pub use judgments::{
    augment_negatives, load_judgments, JudgmentDiagnostics, JudgmentError, JudgmentSet, Topic,
};

/// Publication identifier, unique within a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PubId(pub u64);

/// Author identifier, unique within a corpus. Assigned at ingestion in order
/// of first appearance of the canonical author name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AuthorId(pub u64);

impl fmt::Display for PubId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for AuthorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Venue classification. Datasets carry no explicit flag, so the kind is
/// derived from the venue string by [`VenueClassifier`]; `Unknown` venues are
/// counted under conferences by the profile features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VenueKind {
    Conference,
    Journal,
    Unknown,
}

/// A single publication record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Publication {
    pub pub_id: PubId,
    pub title: String,
    /// Absent for a large share of real dumps; the title stream is always
    /// indexed, the abstract stream only when present.
    pub abstract_text: Option<String>,
    /// Calendar year; `None` when the record carries no (parseable) year.
    pub year: Option<i32>,
    pub venue_name: String,
    pub venue_kind: VenueKind,
    /// Ordered, duplicate-free, non-empty.
    pub author_ids: Vec<AuthorId>,
    /// Outgoing citations; deduplicated, no self-reference, every id
    /// resolvable within the corpus.
    pub reference_ids: Vec<PubId>,
}

/// An author with their publication list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Author {
    pub author_id: AuthorId,
    /// Canonical name: whitespace-normalized, case preserved.
    pub name: String,
    /// Ascending by publication id; consistent with `Publication::author_ids`.
    pub pub_ids: Vec<PubId>,
    pub institution: Option<String>,
}

/// Per-stream token statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamStats {
    /// Documents with a non-empty stream.
    pub doc_count: usize,
    pub total_tokens: u64,
}

impl StreamStats {
    /// Mean token length over documents with a non-empty stream; zero for an
    /// empty stream.
    pub fn avg_len<F: Scalar>(&self) -> F {
        if self.doc_count == 0 {
            F::zero()
        } else {
            F::from_u64(self.total_tokens).unwrap() / F::from_count(self.doc_count)
        }
    }
}

/// Corpus-level statistics, recomputed deterministically from contents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub publications: usize,
    pub authors: usize,
    pub citation_links: usize,
    pub with_abstract: usize,
    pub conference: usize,
    pub journal: usize,
    pub unknown_venue: usize,
    pub missing_year: usize,
    pub title_stream: StreamStats,
    pub abstract_stream: StreamStats,
}

/// Violations of the corpus construction invariants.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("duplicate publication id {0}")]
    DuplicatePubId(PubId),
    #[error("duplicate author id {0}")]
    DuplicateAuthorId(AuthorId),
    #[error("publication {0} has no authors")]
    NoAuthors(PubId),
    #[error("publication {pub_id} lists author {author_id} more than once")]
    DuplicateAuthor { pub_id: PubId, author_id: AuthorId },
    #[error("publication {pub_id} references itself")]
    SelfReference { pub_id: PubId },
    #[error("publication {pub_id} references unknown publication {referenced}")]
    UnresolvedReference { pub_id: PubId, referenced: PubId },
    #[error("publication {pub_id} names unknown author {author_id}")]
    UnknownAuthor { pub_id: PubId, author_id: AuthorId },
    #[error("author {author_id} and publication {pub_id} disagree on authorship")]
    InconsistentAuthorship { author_id: AuthorId, pub_id: PubId },
}

/// Immutable store of publications, authors, and their associations.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    publications: BTreeMap<PubId, Publication>,
    authors: BTreeMap<AuthorId, Author>,
    name_to_author: HashMap<String, AuthorId>,
    folded_to_author: HashMap<String, AuthorId>,
    stats: CorpusStats,
}

impl Corpus {
    /// Assemble a corpus from already-resolved parts, enforcing every
    /// structural invariant and recomputing the statistics.
    pub fn from_parts(
        publications: Vec<Publication>,
        authors: Vec<Author>,
    ) -> Result<Corpus, CorpusError> {
        let mut pub_map = BTreeMap::new();
        for p in publications {
            let id = p.pub_id;
            if pub_map.insert(id, p).is_some() {
                return Err(CorpusError::DuplicatePubId(id));
            }
        }
        let mut author_map = BTreeMap::new();
        for a in authors {
            let id = a.author_id;
            if author_map.insert(id, a).is_some() {
                return Err(CorpusError::DuplicateAuthorId(id));
            }
        }

        for p in pub_map.values() {
            if p.author_ids.is_empty() {
                return Err(CorpusError::NoAuthors(p.pub_id));
            }
            let mut seen = BTreeSet::new();
            for &aid in &p.author_ids {
                if !seen.insert(aid) {
                    return Err(CorpusError::DuplicateAuthor {
                        pub_id: p.pub_id,
                        author_id: aid,
                    });
                }
                let author = author_map
                    .get(&aid)
                    .ok_or(CorpusError::UnknownAuthor {
                        pub_id: p.pub_id,
                        author_id: aid,
                    })?;
                if !author.pub_ids.contains(&p.pub_id) {
                    return Err(CorpusError::InconsistentAuthorship {
                        author_id: aid,
                        pub_id: p.pub_id,
                    });
                }
            }
            for &rid in &p.reference_ids {
                if rid == p.pub_id {
                    return Err(CorpusError::SelfReference { pub_id: p.pub_id });
                }
                if !pub_map.contains_key(&rid) {
                    return Err(CorpusError::UnresolvedReference {
                        pub_id: p.pub_id,
                        referenced: rid,
                    });
                }
            }
        }
        for a in author_map.values() {
            for &pid in &a.pub_ids {
                let p = pub_map
                    .get(&pid)
                    .ok_or(CorpusError::InconsistentAuthorship {
                        author_id: a.author_id,
                        pub_id: pid,
                    })?;
                if !p.author_ids.contains(&a.author_id) {
                    return Err(CorpusError::InconsistentAuthorship {
                        author_id: a.author_id,
                        pub_id: pid,
                    });
                }
            }
        }

        // Ambiguous names (only possible through case folding, or through
        // hand-built corpora) resolve to the smallest author id.
        let mut name_to_author: HashMap<String, AuthorId> = HashMap::new();
        let mut folded_to_author: HashMap<String, AuthorId> = HashMap::new();
        for a in author_map.values() {
            name_to_author
                .entry(a.name.clone())
                .and_modify(|id| *id = (*id).min(a.author_id))
                .or_insert(a.author_id);
            folded_to_author
                .entry(folded_name(&a.name))
                .and_modify(|id| *id = (*id).min(a.author_id))
                .or_insert(a.author_id);
        }

        let stats = compute_stats(&pub_map, &author_map);
        Ok(Corpus {
            publications: pub_map,
            authors: author_map,
            name_to_author,
            folded_to_author,
            stats,
        })
    }

    pub fn publications(&self) -> impl Iterator<Item = &Publication> {
        self.publications.values()
    }

    pub fn authors(&self) -> impl Iterator<Item = &Author> {
        self.authors.values()
    }

    pub fn publication(&self, id: PubId) -> Option<&Publication> {
        self.publications.get(&id)
    }

    pub fn author(&self, id: AuthorId) -> Option<&Author> {
        self.authors.get(&id)
    }

    /// Exact canonical-name lookup (whitespace-normalized, case-sensitive).
    pub fn author_by_name(&self, name: &str) -> Option<AuthorId> {
        self.name_to_author.get(&canonical_name(name)).copied()
    }

    /// Whitespace- and case-normalized lookup, used for judgment resolution.
    pub fn author_by_folded_name(&self, name: &str) -> Option<AuthorId> {
        self.folded_to_author.get(&folded_name(name)).copied()
    }

    pub fn stats(&self) -> &CorpusStats {
        &self.stats
    }

    pub fn publication_count(&self) -> usize {
        self.publications.len()
    }

    pub fn author_count(&self) -> usize {
        self.authors.len()
    }

    /// Latest known publication year, if any record carries one.
    pub fn max_year(&self) -> Option<i32> {
        self.publications.values().filter_map(|p| p.year).max()
    }

    /// Career span of an author: last minus first known publication year.
    /// Zero for unknown authors, yearless records, or single-year careers.
    pub fn career_span_years(&self, author: AuthorId) -> i64 {
        let Some(a) = self.authors.get(&author) else {
            return 0;
        };
        let years = a
            .pub_ids
            .iter()
            .filter_map(|pid| self.publications.get(pid).and_then(|p| p.year));
        match (years.clone().min(), years.max()) {
            (Some(lo), Some(hi)) => i64::from(hi) - i64::from(lo),
            _ => 0,
        }
    }

    /// Whether any author carries institution data (controls availability of
    /// the institution-level features).
    pub fn has_institutions(&self) -> bool {
        self.authors.values().any(|a| a.institution.is_some())
    }

    /// Attach institution data to an author during the build phase.
    pub fn set_institution(&mut self, author: AuthorId, institution: &str) {
        if let Some(a) = self.authors.get_mut(&author) {
            a.institution = Some(institution.to_string());
        }
    }
}

fn compute_stats(
    publications: &BTreeMap<PubId, Publication>,
    authors: &BTreeMap<AuthorId, Author>,
) -> CorpusStats {
    let mut stats = CorpusStats {
        publications: publications.len(),
        authors: authors.len(),
        ..CorpusStats::default()
    };
    for p in publications.values() {
        stats.citation_links += p.reference_ids.len();
        match p.venue_kind {
            VenueKind::Conference => stats.conference += 1,
            VenueKind::Journal => stats.journal += 1,
            VenueKind::Unknown => stats.unknown_venue += 1,
        }
        if p.year.is_none() {
            stats.missing_year += 1;
        }
        let title_tokens = textindex::tokenize(&p.title).len();
        if title_tokens > 0 {
            stats.title_stream.doc_count += 1;
            stats.title_stream.total_tokens += title_tokens as u64;
        }
        if let Some(ref text) = p.abstract_text {
            stats.with_abstract += 1;
            let tokens = textindex::tokenize(text).len();
            if tokens > 0 {
                stats.abstract_stream.doc_count += 1;
                stats.abstract_stream.total_tokens += tokens as u64;
            }
        }
    }
    stats
}

/// Whitespace normalization: trim and collapse internal runs to one space.
pub fn canonical_name(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Canonical name lowered for case-insensitive matching.
pub fn folded_name(raw: &str) -> String {
    canonical_name(raw).to_lowercase()
}

/// Maps venue strings to [`VenueKind`] via case-insensitive substring
/// patterns. The built-in patterns cover the usual English venue naming;
/// a pattern file replaces them entirely.
#[derive(Debug, Clone)]
pub struct VenueClassifier {
    journal_patterns: Vec<String>,
    conference_patterns: Vec<String>,
}

impl Default for VenueClassifier {
    fn default() -> Self {
        let journal = [
            "journal",
            "transactions",
            "trans.",
            "magazine",
            "letters",
            "bulletin",
            "review",
            "quarterly",
            "annals",
        ];
        let conference = [
            "proceedings",
            "conference",
            "conf.",
            "symposium",
            "workshop",
            "congress",
            "colloquium",
            "meeting",
            "summit",
        ];
        VenueClassifier {
            journal_patterns: journal.iter().map(|s| s.to_string()).collect(),
            conference_patterns: conference.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl VenueClassifier {
    /// Build from a pattern file: one `journal<TAB>pattern` or
    /// `conference<TAB>pattern` per line, `#` comments and blank lines
    /// ignored. Patterns are matched as case-insensitive substrings.
    pub fn from_pattern_file(path: &std::path::Path) -> std::io::Result<VenueClassifier> {
        let text = std::fs::read_to_string(path)?;
        let mut journal_patterns = Vec::new();
        let mut conference_patterns = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.split_once('\t') {
                Some(("journal", pat)) => journal_patterns.push(pat.trim().to_lowercase()),
                Some(("conference", pat)) => conference_patterns.push(pat.trim().to_lowercase()),
                _ => {
                    return Err(std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("bad venue pattern line: {line:?}"),
                    ))
                }
            }
        }
        Ok(VenueClassifier {
            journal_patterns,
            conference_patterns,
        })
    }

    pub fn classify(&self, venue: &str) -> VenueKind {
        let lowered = venue.to_lowercase();
        if self.journal_patterns.iter().any(|p| lowered.contains(p)) {
            VenueKind::Journal
        } else if self
            .conference_patterns
            .iter()
            .any(|p| lowered.contains(p))
        {
            VenueKind::Conference
        } else {
            VenueKind::Unknown
        }
    }
}
