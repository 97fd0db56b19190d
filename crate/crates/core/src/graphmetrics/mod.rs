//! Citation-network features: the weighted citation graph, citation-count
//! statistics, the academic index family, and PageRank.

mod indexes;
mod pagerank;

pub use indexes::{
    a_index, citation_count_features, contemporary_h_index, contemporary_score, e_index, g_index,
    h_index, h_index_over_scores, hb_index, individual_h_index, institution_h_index,
    trend_h_index, trend_score, AuthorCitationStats, CitationCountFeatures, CONTEMPORARY_GAMMA,
};
pub use pagerank::{
    pagerank, pagerank_features, write_pagerank_scores, PageRankScores, DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
};

use crate::corpus::Corpus;
use crate::corpus::PubId;
use crate::scalar::Scalar;
use std::collections::HashMap;

/// Which side of a citation link determines the edge weight `α = 1/N`,
/// `N` being that paper's author count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EdgeWeighting {
    /// `α = 1 / authors(citing paper)`: a paper's endorsement is split
    /// across its authors (the default).
    #[default]
    CitingAuthors,
    /// `α = 1 / authors(cited paper)`.
    CitedAuthors,
}

/// Directed weighted graph over publications: one node per publication, one
/// edge per distinct (citing → cited) reference.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationGraph<F = crate::Score> {
    /// Ascending publication ids; the position is the node handle.
    nodes: Vec<PubId>,
    node_of: HashMap<PubId, usize>,
    /// Outgoing targets per node, ascending, deduplicated.
    out_edges: Vec<Vec<usize>>,
    /// Incoming (source, weight α) per node, ascending by source.
    in_edges: Vec<Vec<(usize, F)>>,
    years: Vec<Option<i32>>,
    author_counts: Vec<u32>,
}

/// Build the citation graph with the default edge weighting.
pub fn build_citation_graph(corpus: &Corpus) -> CitationGraph {
    CitationGraph::build(corpus, EdgeWeighting::default())
}

impl<F: Scalar> CitationGraph<F> {
    pub fn build(corpus: &Corpus, weighting: EdgeWeighting) -> CitationGraph<F> {
        let nodes: Vec<PubId> = corpus.publications().map(|p| p.pub_id).collect();
        let node_of: HashMap<PubId, usize> =
            nodes.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        let mut in_edges: Vec<Vec<(usize, F)>> = vec![Vec::new(); nodes.len()];
        let mut years = vec![None; nodes.len()];
        let mut author_counts = vec![0u32; nodes.len()];

        for p in corpus.publications() {
            let src = node_of[&p.pub_id];
            years[src] = p.year;
            author_counts[src] = p.author_ids.len() as u32;
            for &r in &p.reference_ids {
                out_edges[src].push(node_of[&r]);
            }
        }
        for list in &mut out_edges {
            list.sort_unstable();
            list.dedup();
        }
        for (src, targets) in out_edges.iter().enumerate() {
            for &dst in targets {
                let weight_side = match weighting {
                    EdgeWeighting::CitingAuthors => src,
                    EdgeWeighting::CitedAuthors => dst,
                };
                let alpha = F::one() / F::from_u32(author_counts[weight_side].max(1)).unwrap();
                in_edges[dst].push((src, alpha));
            }
        }
        for list in &mut in_edges {
            list.sort_unstable_by_key(|&(src, _)| src);
        }

        CitationGraph {
            nodes,
            node_of,
            out_edges,
            in_edges,
            years,
            author_counts,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edges.iter().map(Vec::len).sum()
    }

    pub fn pub_ids(&self) -> &[PubId] {
        &self.nodes
    }

    /// Citation count: the publication's in-degree. Zero for ids outside the
    /// graph.
    pub fn citations(&self, id: PubId) -> usize {
        self.node_of
            .get(&id)
            .map_or(0, |&n| self.in_edges[n].len())
    }

    /// Publication years of the papers citing `id` (the citing-year multiset).
    pub fn citing_years(&self, id: PubId) -> Vec<Option<i32>> {
        match self.node_of.get(&id) {
            Some(&n) => self.in_edges[n]
                .iter()
                .map(|&(src, _)| self.years[src])
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn year(&self, id: PubId) -> Option<i32> {
        self.node_of.get(&id).and_then(|&n| self.years[n])
    }

    pub fn author_count(&self, id: PubId) -> u32 {
        self.node_of.get(&id).map_or(0, |&n| self.author_counts[n])
    }

    pub fn node_index(&self, id: PubId) -> Option<usize> {
        self.node_of.get(&id).copied()
    }

    /// Incoming (source index, weight) pairs of a publication's node.
    pub fn in_edges_for(&self, id: PubId) -> &[(usize, F)] {
        match self.node_of.get(&id) {
            Some(&n) => &self.in_edges[n],
            None => &[],
        }
    }

    pub(crate) fn in_edges_of(&self, node: usize) -> &[(usize, F)] {
        &self.in_edges[node]
    }

    pub(crate) fn out_degree(&self, node: usize) -> usize {
        self.out_edges[node].len()
    }

    pub(crate) fn node_pub(&self, node: usize) -> PubId {
        self.nodes[node]
    }

    /// Build a graph directly from (pub id, year, author count, references)
    /// tuples with uniform edge weight α = 1. Test and oracle helper.
    pub fn from_edges_unit_weight(
        nodes: &[(u64, Option<i32>, u32)],
        edges: &[(u64, u64)],
    ) -> CitationGraph<F> {
        let node_ids: Vec<PubId> = nodes.iter().map(|&(id, _, _)| PubId(id)).collect();
        let node_of: HashMap<PubId, usize> = node_ids
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); node_ids.len()];
        let mut in_edges: Vec<Vec<(usize, F)>> = vec![Vec::new(); node_ids.len()];
        for &(src, dst) in edges {
            let s = node_of[&PubId(src)];
            let d = node_of[&PubId(dst)];
            out_edges[s].push(d);
        }
        for list in &mut out_edges {
            list.sort_unstable();
            list.dedup();
        }
        for (src, targets) in out_edges.iter().enumerate() {
            for &dst in targets {
                in_edges[dst].push((src, F::one()));
            }
        }
        CitationGraph {
            nodes: node_ids,
            node_of,
            out_edges,
            in_edges,
            years: nodes.iter().map(|&(_, y, _)| y).collect(),
            author_counts: nodes.iter().map(|&(_, _, a)| a).collect(),
        }
    }
}
