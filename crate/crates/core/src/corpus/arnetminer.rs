//! Flat-file corpus ingestion.
//!
//! The supported input is the flat text format used by enriched DBLP dumps:
//! records separated by blank lines, one field per line with a prefix —
//! `#*` title, `#@` semicolon-separated authors, `#t` year, `#c` venue,
//! `#index` publication id, `#%` referenced publication id (repeatable),
//! `#!` abstract.
//!
//! Malformed records are skipped and counted, references that cannot be
//! resolved inside the dump are dropped and counted; nothing disappears
//! silently.

use super::{
    canonical_name, Author, AuthorId, Corpus, CorpusError, PubId, Publication, VenueClassifier,
};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use thiserror::Error;

/// Supported corpus input formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    ArnetminerFlat,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read corpus file: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus invariant violated after ingestion: {0}")]
    Corpus(#[from] CorpusError),
}

/// Counts of everything the parser skipped, dropped, or patched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestDiagnostics {
    /// Record blocks seen in the file.
    pub records_total: usize,
    pub records_ingested: usize,
    pub records_skipped: usize,
    pub skipped_missing_id: usize,
    pub skipped_duplicate_id: usize,
    pub skipped_missing_title: usize,
    pub skipped_no_authors: usize,
    /// References pointing outside the dump.
    pub references_dropped_unresolved: usize,
    pub references_dropped_self: usize,
    pub references_deduplicated: usize,
    pub references_malformed: usize,
    pub duplicate_authors_in_record: usize,
    pub missing_year: usize,
    pub unrecognized_lines: usize,
}

impl fmt::Display for IngestDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ingestion diagnostics")?;
        writeln!(f, "  records_total                {}", self.records_total)?;
        writeln!(f, "  records_ingested             {}", self.records_ingested)?;
        writeln!(f, "  records_skipped              {}", self.records_skipped)?;
        writeln!(f, "    missing_id                 {}", self.skipped_missing_id)?;
        writeln!(f, "    duplicate_id               {}", self.skipped_duplicate_id)?;
        writeln!(f, "    missing_title              {}", self.skipped_missing_title)?;
        writeln!(f, "    no_authors                 {}", self.skipped_no_authors)?;
        writeln!(
            f,
            "  references_dropped_unresolved {}",
            self.references_dropped_unresolved
        )?;
        writeln!(f, "  references_dropped_self     {}", self.references_dropped_self)?;
        writeln!(f, "  references_deduplicated     {}", self.references_deduplicated)?;
        writeln!(f, "  references_malformed        {}", self.references_malformed)?;
        writeln!(
            f,
            "  duplicate_authors_in_record {}",
            self.duplicate_authors_in_record
        )?;
        writeln!(f, "  missing_year                {}", self.missing_year)?;
        write!(f, "  unrecognized_lines          {}", self.unrecognized_lines)
    }
}

#[derive(Debug, Default)]
struct RawRecord {
    index: Option<u64>,
    title: Option<String>,
    authors: Vec<String>,
    year: Option<i32>,
    venue: String,
    refs: Vec<u64>,
    abstract_text: Option<String>,
}

/// Parse a corpus file from disk.
///
/// Returns the corpus together with the ingestion diagnostics. Fails only on
/// unreadable input (I/O or non-UTF-8); malformed records are skipped and
/// counted instead.
pub fn parse_corpus(
    path: &Path,
    format: CorpusFormat,
    classifier: &VenueClassifier,
) -> Result<(Corpus, IngestDiagnostics), IngestError> {
    match format {
        CorpusFormat::ArnetminerFlat => parse_flat(path, classifier),
    }
}

fn parse_flat(
    path: &Path,
    classifier: &VenueClassifier,
) -> Result<(Corpus, IngestDiagnostics), IngestError> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut diag = IngestDiagnostics::default();

    let mut records: Vec<RawRecord> = Vec::new();
    let mut seen_ids: HashSet<u64> = HashSet::new();
    let mut current: Option<RawRecord> = None;
    let mut line = String::new();
    loop {
        line.clear();
        let n = reader.read_line(&mut line)?;
        let text = line.trim_end_matches(['\n', '\r']);
        if n == 0 || text.trim().is_empty() {
            if let Some(rec) = current.take() {
                flush_record(rec, &mut records, &mut seen_ids, &mut diag);
            }
            if n == 0 {
                break;
            }
            continue;
        }
        let rec = current.get_or_insert_with(RawRecord::default);
        parse_field(text, rec, &mut diag);
    }

    let known_ids: HashSet<u64> = records.iter().filter_map(|r| r.index).collect();

    // Author ids in order of first appearance of the canonical name.
    let mut name_to_id: HashMap<String, AuthorId> = HashMap::new();
    let mut authors: Vec<Author> = Vec::new();

    let mut publications: Vec<Publication> = Vec::new();
    for rec in &mut records {
        let pub_id = PubId(rec.index.expect("flushed records carry an id"));

        let mut author_ids: Vec<AuthorId> = Vec::new();
        for name in &rec.authors {
            let id = *name_to_id.entry(name.clone()).or_insert_with(|| {
                let id = AuthorId(authors.len() as u64);
                authors.push(Author {
                    author_id: id,
                    name: name.clone(),
                    pub_ids: Vec::new(),
                    institution: None,
                });
                id
            });
            if author_ids.contains(&id) {
                diag.duplicate_authors_in_record += 1;
            } else {
                author_ids.push(id);
            }
        }

        let mut reference_ids: Vec<PubId> = Vec::new();
        for &r in &rec.refs {
            if r == pub_id.0 {
                diag.references_dropped_self += 1;
            } else if !known_ids.contains(&r) {
                diag.references_dropped_unresolved += 1;
            } else if reference_ids.contains(&PubId(r)) {
                diag.references_deduplicated += 1;
            } else {
                reference_ids.push(PubId(r));
            }
        }

        if rec.year.is_none() {
            diag.missing_year += 1;
        }

        publications.push(Publication {
            pub_id,
            title: rec.title.take().expect("flushed records carry a title"),
            abstract_text: rec.abstract_text.take(),
            year: rec.year,
            venue_name: rec.venue.clone(),
            venue_kind: classifier.classify(&rec.venue),
            author_ids,
            reference_ids,
        });
    }

    for p in &publications {
        for &aid in &p.author_ids {
            authors[aid.0 as usize].pub_ids.push(p.pub_id);
        }
    }
    for a in &mut authors {
        a.pub_ids.sort_unstable();
        a.pub_ids.dedup();
    }

    let corpus = Corpus::from_parts(publications, authors)?;
    diag.records_ingested = corpus.publication_count();
    Ok((corpus, diag))
}

fn parse_field(line: &str, rec: &mut RawRecord, diag: &mut IngestDiagnostics) {
    if let Some(rest) = line.strip_prefix("#index") {
        match rest.trim().parse::<u64>() {
            Ok(id) => rec.index = rec.index.or(Some(id)),
            Err(_) => diag.unrecognized_lines += 1,
        }
    } else if let Some(rest) = line.strip_prefix("#*") {
        let title = rest.trim();
        if !title.is_empty() && rec.title.is_none() {
            rec.title = Some(title.to_string());
        }
    } else if let Some(rest) = line.strip_prefix("#@") {
        for name in rest.split(';') {
            let canonical = canonical_name(name);
            if !canonical.is_empty() {
                rec.authors.push(canonical);
            }
        }
    } else if let Some(rest) = line.strip_prefix("#t") {
        rec.year = rec.year.or_else(|| rest.trim().parse::<i32>().ok());
    } else if let Some(rest) = line.strip_prefix("#c") {
        if rec.venue.is_empty() {
            rec.venue = rest.trim().to_string();
        }
    } else if let Some(rest) = line.strip_prefix("#%") {
        match rest.trim().parse::<u64>() {
            Ok(id) => rec.refs.push(id),
            Err(_) => diag.references_malformed += 1,
        }
    } else if let Some(rest) = line.strip_prefix("#!") {
        let text = rest.trim();
        if !text.is_empty() && rec.abstract_text.is_none() {
            rec.abstract_text = Some(text.to_string());
        }
    } else {
        diag.unrecognized_lines += 1;
    }
}

fn flush_record(
    rec: RawRecord,
    records: &mut Vec<RawRecord>,
    seen_ids: &mut HashSet<u64>,
    diag: &mut IngestDiagnostics,
) {
    diag.records_total += 1;
    let Some(id) = rec.index else {
        diag.records_skipped += 1;
        diag.skipped_missing_id += 1;
        return;
    };
    if rec.title.is_none() {
        diag.records_skipped += 1;
        diag.skipped_missing_title += 1;
        return;
    }
    if rec.authors.is_empty() {
        diag.records_skipped += 1;
        diag.skipped_no_authors += 1;
        return;
    }
    if !seen_ids.insert(id) {
        diag.records_skipped += 1;
        diag.skipped_duplicate_id += 1;
        return;
    }
    records.push(rec);
}
