//! Query-side scoring: BM25, term frequency, inverse document frequency,
//! and the simple per-stream textual features.
//!
//! A [`QueryView`] precomputes, per stream, the posting lookups and the set
//! of documents matching at least one query term, so that scoring any number
//! of candidate experts only touches per-author publication lists.

use super::{InvertedIndex, Stream, StreamIndex};
use crate::corpus::{AuthorId, Corpus, PubId};
use crate::scalar::Scalar;
use std::collections::{BTreeSet, HashMap};

pub const BM25_K1: f64 = 1.2;
pub const BM25_B: f64 = 0.75;

/// How document BM25 scores aggregate to an author score.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Bm25Aggregation {
    /// Sum over the author's documents (the default).
    #[default]
    Sum,
    /// Maximum over the author's documents.
    Max,
}

/// Integer-valued simple textual features for one (query, author, stream).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimpleTextFeatures {
    /// Unique authors over the candidate's query-matching documents.
    pub matching_authors: usize,
    /// Last minus first known publication year among matching documents.
    pub year_range: i64,
    /// Total stream token length of the matching documents.
    pub match_length: u64,
}

struct StreamView {
    /// Per query term: document -> term frequency.
    freqs: Vec<HashMap<PubId, u32>>,
    doc_freqs: Vec<usize>,
    /// Documents containing at least one query term in this stream.
    matching: BTreeSet<PubId>,
}

/// Precomputed scoring context for one query over an [`InvertedIndex`].
pub struct QueryView<'a> {
    index: &'a InvertedIndex,
    terms: Vec<String>,
    streams: [StreamView; 2],
    matching_any: BTreeSet<PubId>,
}

impl<'a> QueryView<'a> {
    pub fn new(index: &'a InvertedIndex, query_text: &str) -> QueryView<'a> {
        // Formulas sum over the *set* of query terms: deduplicate, keeping
        // first-appearance order.
        let mut terms: Vec<String> = Vec::new();
        for t in super::tokenize(query_text) {
            if !terms.contains(&t) {
                terms.push(t);
            }
        }
        let streams = [
            StreamView::new(index.stream(Stream::Title), &terms),
            StreamView::new(index.stream(Stream::Abstract), &terms),
        ];
        let matching_any = streams[0]
            .matching
            .union(&streams[1].matching)
            .copied()
            .collect();
        QueryView {
            index,
            terms,
            streams,
            matching_any,
        }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    fn view(&self, stream: Stream) -> &StreamView {
        match stream {
            Stream::Title => &self.streams[0],
            Stream::Abstract => &self.streams[1],
        }
    }

    /// Documents with at least one query term in the given stream.
    pub fn matching_docs(&self, stream: Stream) -> &BTreeSet<PubId> {
        &self.view(stream).matching
    }

    /// Documents with at least one query term in either stream ("contents").
    pub fn matching_docs_any(&self) -> &BTreeSet<PubId> {
        &self.matching_any
    }

    /// Whether the publication's contents (title or abstract) match the query.
    pub fn matches_contents(&self, id: PubId) -> bool {
        self.matching_any.contains(&id)
    }

    /// Okapi BM25 score of one document for this query, with k1 = 1.2 and
    /// b = 0.75 and the normalized term frequency `Freq(i,d)/|d|`. Per-term
    /// contributions with a negative IDF factor are floored at zero, so the
    /// score is non-negative. Documents lacking the stream score zero.
    pub fn bm25_doc<F: Scalar>(&self, id: PubId, stream: Stream) -> F {
        let sidx = self.index.stream(stream);
        let Some(len) = sidx.doc_len(id) else {
            return F::zero();
        };
        let n = sidx.doc_count();
        let avg: F = sidx.avg_len();
        let k1 = F::constant(BM25_K1);
        let b = F::constant(BM25_B);
        let half = F::constant(0.5);
        let one = F::one();
        let doc_len = F::from_u32(len).unwrap();

        let view = self.view(stream);
        let mut score = F::zero();
        for term_idx in 0..self.terms.len() {
            let Some(&f_in_doc) = view.freqs[term_idx].get(&id) else {
                continue;
            };
            let df = F::from_count(view.doc_freqs[term_idx]);
            let n_f = F::from_count(n);
            let idf = ((n_f - df + half) / (df + half)).ln();
            let ntf = F::from_u32(f_in_doc).unwrap() / doc_len;
            let tf_part = ((k1 + one) * ntf) / (ntf + k1 * (one - b + b * doc_len / avg));
            score = score + (idf * tf_part).max(F::zero());
        }
        score
    }

    /// Author-level BM25: document scores aggregated over the author's
    /// publications (sum by default, max switchable).
    pub fn author_bm25<F: Scalar>(
        &self,
        corpus: &Corpus,
        author: AuthorId,
        stream: Stream,
        agg: Bm25Aggregation,
    ) -> F {
        let Some(a) = corpus.author(author) else {
            return F::zero();
        };
        let mut total = F::zero();
        for &pid in &a.pub_ids {
            let s = self.bm25_doc::<F>(pid, stream);
            total = match agg {
                Bm25Aggregation::Sum => total + s,
                Bm25Aggregation::Max => total.max(s),
            };
        }
        total
    }

    /// Term frequency feature: sum over the author's documents and the query
    /// terms of `Freq(i, d_j) / |d_j|`. Documents lacking the stream are
    /// skipped.
    pub fn author_tf<F: Scalar>(&self, corpus: &Corpus, author: AuthorId, stream: Stream) -> F {
        let Some(a) = corpus.author(author) else {
            return F::zero();
        };
        let sidx = self.index.stream(stream);
        let view = self.view(stream);
        let mut total = F::zero();
        for &pid in &a.pub_ids {
            let Some(len) = sidx.doc_len(pid) else {
                continue;
            };
            let doc_len = F::from_u32(len).unwrap();
            for freqs in &view.freqs {
                if let Some(&f) = freqs.get(&pid) {
                    total = total + F::from_u32(f).unwrap() / doc_len;
                }
            }
        }
        total
    }

    /// Inverse document frequency of the query: `Σ_i log(|D| / f_i)`, with
    /// add-one smoothing for unseen terms. Candidate-independent.
    pub fn query_idf<F: Scalar>(&self, stream: Stream) -> F {
        let sidx = self.index.stream(stream);
        let d = sidx.doc_count();
        if d == 0 {
            return F::zero();
        }
        let d_f = F::from_count(d);
        let view = self.view(stream);
        let mut total = F::zero();
        for &df in &view.doc_freqs {
            let df = df.max(1);
            total = total + (d_f / F::from_count(df)).ln();
        }
        total
    }

    /// The simple per-stream textual features over the candidate's
    /// query-matching documents. All zero when nothing matches.
    pub fn simple_text_features(
        &self,
        corpus: &Corpus,
        author: AuthorId,
        stream: Stream,
    ) -> SimpleTextFeatures {
        let Some(a) = corpus.author(author) else {
            return SimpleTextFeatures::default();
        };
        let sidx = self.index.stream(stream);
        let matching = &self.view(stream).matching;

        let mut authors: BTreeSet<AuthorId> = BTreeSet::new();
        let mut years: Vec<i32> = Vec::new();
        let mut length: u64 = 0;
        for &pid in &a.pub_ids {
            if !matching.contains(&pid) {
                continue;
            }
            let p = corpus.publication(pid).expect("pub ids resolvable");
            authors.extend(p.author_ids.iter().copied());
            if let Some(y) = p.year {
                years.push(y);
            }
            length += u64::from(sidx.doc_len(pid).unwrap_or(0));
        }
        let year_range = match (years.iter().min(), years.iter().max()) {
            (Some(&lo), Some(&hi)) => i64::from(hi) - i64::from(lo),
            _ => 0,
        };
        SimpleTextFeatures {
            matching_authors: authors.len(),
            year_range,
            match_length: length,
        }
    }
}

impl StreamView {
    fn new(index: &StreamIndex, terms: &[String]) -> StreamView {
        let mut freqs = Vec::with_capacity(terms.len());
        let mut doc_freqs = Vec::with_capacity(terms.len());
        let mut matching = BTreeSet::new();
        for term in terms {
            let postings = index.postings(term);
            doc_freqs.push(postings.len());
            let mut map = HashMap::with_capacity(postings.len());
            for &(id, f) in postings {
                map.insert(id, f);
                matching.insert(id);
            }
            freqs.push(map);
        }
        StreamView {
            freqs,
            doc_freqs,
            matching,
        }
    }
}
