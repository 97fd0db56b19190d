//! Tokenization and per-stream inverted indexes over titles and abstracts.
//!
//! Indexing is a single-writer build step; the resulting [`InvertedIndex`]
//! is immutable and all scoring (see [`QueryView`]) is read-only.

mod query;

pub use query::{Bm25Aggregation, QueryView, SimpleTextFeatures, BM25_B, BM25_K1};

use crate::corpus::{Corpus, PubId, Publication};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Document evidence streams. Textual features are computed once per stream
/// and carry the stream name in their catalog id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stream {
    Title,
    Abstract,
}

impl Stream {
    pub const ALL: [Stream; 2] = [Stream::Title, Stream::Abstract];

    pub fn name(self) -> &'static str {
        match self {
            Stream::Title => "title",
            Stream::Abstract => "abstract",
        }
    }

    fn text(self, p: &Publication) -> Option<&str> {
        match self {
            Stream::Title => Some(&p.title),
            Stream::Abstract => p.abstract_text.as_deref(),
        }
    }
}

/// Lowercase terms split on any non-alphanumeric character; empty tokens
/// removed, no stemming, no stopword removal.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

/// Index for one stream: term postings, per-document lengths, and totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamIndex {
    /// term -> (pub_id, term frequency), ascending by pub id. The posting
    /// list length is the term's document frequency.
    postings: BTreeMap<String, Vec<(PubId, u32)>>,
    /// Token count per document with a non-empty stream.
    doc_len: BTreeMap<PubId, u32>,
    total_tokens: u64,
}

impl StreamIndex {
    /// Collection size |D|: documents with a non-empty stream.
    pub fn doc_count(&self) -> usize {
        self.doc_len.len()
    }

    /// Document frequency of a term within this stream.
    pub fn doc_freq(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn doc_len(&self, id: PubId) -> Option<u32> {
        self.doc_len.get(&id).copied()
    }

    /// Average document length over the stream's collection.
    pub fn avg_len<F: Scalar>(&self) -> F {
        if self.doc_len.is_empty() {
            F::zero()
        } else {
            F::from_u64(self.total_tokens).unwrap() / F::from_count(self.doc_len.len())
        }
    }

    pub fn postings(&self, term: &str) -> &[(PubId, u32)] {
        self.postings.get(term).map_or(&[], Vec::as_slice)
    }
}

/// Per-stream inverted indexes for a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedIndex {
    title: StreamIndex,
    abstracts: StreamIndex,
}

impl InvertedIndex {
    /// Build both stream indexes. Deterministic: rebuilding from the same
    /// corpus yields a structurally identical index.
    pub fn build(corpus: &Corpus) -> InvertedIndex {
        let mut index = InvertedIndex {
            title: StreamIndex::default(),
            abstracts: StreamIndex::default(),
        };
        for p in corpus.publications() {
            for stream in Stream::ALL {
                if let Some(text) = stream.text(p) {
                    index.stream_mut(stream).add_doc(p.pub_id, text);
                }
            }
        }
        index
    }

    pub fn stream(&self, s: Stream) -> &StreamIndex {
        match s {
            Stream::Title => &self.title,
            Stream::Abstract => &self.abstracts,
        }
    }

    fn stream_mut(&mut self, s: Stream) -> &mut StreamIndex {
        match s {
            Stream::Title => &mut self.title,
            Stream::Abstract => &mut self.abstracts,
        }
    }

    /// Tokenize a query and precompute everything scoring needs.
    pub fn query(&self, query_text: &str) -> QueryView<'_> {
        QueryView::new(self, query_text)
    }
}

impl StreamIndex {
    fn add_doc(&mut self, id: PubId, text: &str) {
        let tokens = tokenize(text);
        if tokens.is_empty() {
            return;
        }
        let mut freqs: BTreeMap<String, u32> = BTreeMap::new();
        for t in tokens.iter() {
            *freqs.entry(t.clone()).or_insert(0) += 1;
        }
        for (term, f) in freqs {
            self.postings.entry(term).or_default().push((id, f));
        }
        self.doc_len.insert(id, tokens.len() as u32);
        self.total_tokens += tokens.len() as u64;
    }
}
