//! Deterministic synthetic corpus generator: ~50 authors, ~200 publications,
//! ~600 citation links, 5 query topics with judged experts.
//!
//! Each topic has a planted expert who authors the most topical papers and
//! whose papers attract the most topical citations, three secondary topical
//! authors (also judged positive), and a few background authors with weak
//! single-term matches so that BM25-based negative sampling has non-zero
//! candidates. The generator records ground-truth counts in a manifest.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

pub const DEFAULT_SEED: u64 = 0xE17;

const TOPICS: [(&str, [&str; 2]); 5] = [
    ("boosting ensembles", ["boosting", "ensembles"]),
    ("graph mining", ["graph", "mining"]),
    ("semantic web", ["semantic", "web"]),
    ("neural networks", ["neural", "networks"]),
    ("query optimization", ["query", "optimization"]),
];

const FILLERS: [&str; 12] = [
    "adaptive",
    "framework",
    "analysis",
    "models",
    "systems",
    "evaluation",
    "robust",
    "scalable",
    "survey",
    "methods",
    "approach",
    "study",
];

const VENUES: [&str; 6] = [
    "Journal of Synthetic Research",
    "Proceedings of the Synthetic Conference",
    "Synthetic Systems Workshop",
    "Annals of Computation",
    "Data Letters",
    "CoRR",
];

const FIRST: [&str; 10] = [
    "Ada", "Alan", "Grace", "Kurt", "Edsger", "Barbara", "Donald", "John", "Leslie", "Margaret",
];
const LAST: [&str; 10] = [
    "Brooks", "Chen", "Dietrich", "Evans", "Floyd", "Garcia", "Hopper", "Iverson", "Jones",
    "Keller",
];

const AUTHOR_COUNT: usize = 50;
const EXPERTS: usize = 5;
const SECONDARIES_PER_TOPIC: usize = 3;
const EXPERT_PUBS_PER_TOPIC: usize = 12;
const SECONDARY_PUBS_PER_TOPIC: usize = 13;
const WEAK_PUBS_PER_TOPIC: usize = 3;
const BACKGROUND_PUBS: usize = 65;

/// Ground truth for one fixture topic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicManifest {
    pub query: String,
    /// The planted expert's name: most topical papers, most topical citations.
    pub expert: String,
    /// Judged positives (the expert first).
    pub positives: Vec<String>,
}

/// Ground-truth counts recorded by the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureManifest {
    pub publications: usize,
    pub authors: usize,
    pub citation_links: usize,
    pub topics: Vec<TopicManifest>,
}

/// A generated fixture: flat corpus text, judgments text, and the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub corpus_flat: String,
    pub judgments: String,
    pub manifest: FixtureManifest,
}

struct PubRecord {
    id: u64,
    title: String,
    abstract_text: Option<String>,
    year: i32,
    venue: &'static str,
    authors: Vec<usize>,
    refs: Vec<u64>,
}

fn author_name(i: usize) -> String {
    format!("{} {}", FIRST[i % 10], LAST[(i / 10) % 10])
}

/// Generate the fixture for a seed. Pure: the same seed yields byte-identical
/// corpus and judgment texts.
pub fn generate(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pubs: Vec<PubRecord> = Vec::new();
    let mut next_id: u64 = 1;

    // Topical publications, topic by topic. Per topic: the expert's papers
    // first (so citation bias can target them), then the secondaries', then
    // the weak single-term background matches.
    let mut topic_pub_ids: Vec<Vec<u64>> = vec![Vec::new(); TOPICS.len()];
    let mut expert_pub_ids: Vec<Vec<u64>> = vec![Vec::new(); TOPICS.len()];
    for (t, (_, terms)) in TOPICS.iter().enumerate() {
        let expert = t;
        let secondaries: Vec<usize> = (0..SECONDARIES_PER_TOPIC)
            .map(|k| EXPERTS + t * SECONDARIES_PER_TOPIC + k)
            .collect();

        for p in 0..EXPERT_PUBS_PER_TOPIC {
            let mut authors = vec![expert];
            if rng.gen_bool(0.5) {
                authors.push(secondaries[rng.gen_range(0..secondaries.len())]);
            }
            let id = next_id;
            next_id += 1;
            // Journal and conference venues both appear in every expert's
            // record so no profile column is identically zero for them.
            let venue = VENUES[p % VENUES.len()];
            let year = 1996 + rng.gen_range(0..14);
            pubs.push(PubRecord {
                id,
                title: topical_title(&mut rng, terms, true),
                abstract_text: rng
                    .gen_bool(0.6)
                    .then(|| topical_abstract(&mut rng, terms)),
                year,
                venue,
                authors,
                refs: Vec::new(),
            });
            topic_pub_ids[t].push(id);
            expert_pub_ids[t].push(id);
        }

        for p in 0..SECONDARY_PUBS_PER_TOPIC {
            let lead = secondaries[p % secondaries.len()];
            let mut authors = vec![lead];
            if rng.gen_bool(0.3) {
                let other = secondaries[rng.gen_range(0..secondaries.len())];
                if other != lead {
                    authors.push(other);
                }
            }
            let id = next_id;
            next_id += 1;
            let both_terms = rng.gen_bool(0.7);
            pubs.push(PubRecord {
                id,
                title: topical_title(&mut rng, terms, both_terms),
                abstract_text: rng
                    .gen_bool(0.5)
                    .then(|| topical_abstract(&mut rng, terms)),
                year: 1997 + rng.gen_range(0..13),
                venue: VENUES[rng.gen_range(0..VENUES.len())],
                authors,
                refs: Vec::new(),
            });
            topic_pub_ids[t].push(id);
        }

        for w in 0..WEAK_PUBS_PER_TOPIC {
            // Weak matches come from the 40..50 author block, one term only.
            let author = 40 + ((t * WEAK_PUBS_PER_TOPIC + w) % 10);
            let term = terms[w % 2];
            let id = next_id;
            next_id += 1;
            pubs.push(PubRecord {
                id,
                title: format!(
                    "{} {} {}",
                    FILLERS[rng.gen_range(0..FILLERS.len())],
                    term,
                    FILLERS[rng.gen_range(0..FILLERS.len())]
                ),
                abstract_text: None,
                year: 2000 + rng.gen_range(0..10),
                venue: VENUES[rng.gen_range(0..VENUES.len())],
                authors: vec![author],
                refs: Vec::new(),
            });
            topic_pub_ids[t].push(id);
        }
    }

    // Background publications, round-robin over authors 20..50.
    let mut background_ids: Vec<u64> = Vec::new();
    for p in 0..BACKGROUND_PUBS {
        let lead = 20 + (p % 30);
        let mut authors = vec![lead];
        for _ in 0..rng.gen_range(0..2) {
            let co = 20 + rng.gen_range(0..30);
            if !authors.contains(&co) {
                authors.push(co);
            }
        }
        let id = next_id;
        next_id += 1;
        pubs.push(PubRecord {
            id,
            title: background_title(&mut rng),
            abstract_text: rng.gen_bool(0.5).then(|| background_title(&mut rng)),
            year: 1995 + rng.gen_range(0..16),
            venue: VENUES[rng.gen_range(0..VENUES.len())],
            authors,
            refs: Vec::new(),
        });
        background_ids.push(id);
    }

    // Citations. Topical papers cite earlier papers of their own topic, with
    // a strong bias toward the planted expert's papers.
    let mut citation_links = 0usize;
    for (t, ids) in topic_pub_ids.iter().enumerate() {
        for (pos, &citing) in ids.iter().enumerate() {
            if pos == 0 {
                continue;
            }
            let n_refs = rng.gen_range(2..=6usize.min(pos + 1));
            let mut chosen: BTreeSet<u64> = BTreeSet::new();
            for _ in 0..n_refs {
                let earlier_expert: Vec<u64> = expert_pub_ids[t]
                    .iter()
                    .copied()
                    .filter(|&x| x < citing)
                    .collect();
                let target = if !earlier_expert.is_empty() && rng.gen_bool(0.7) {
                    earlier_expert[rng.gen_range(0..earlier_expert.len())]
                } else {
                    ids[rng.gen_range(0..pos)]
                };
                if target != citing {
                    chosen.insert(target);
                }
            }
            citation_links += chosen.len();
            let rec = pubs.iter_mut().find(|p| p.id == citing).unwrap();
            rec.refs = chosen.into_iter().collect();
        }
    }
    for (pos, &citing) in background_ids.iter().enumerate() {
        if pos == 0 {
            continue;
        }
        let n_refs = rng.gen_range(1..=4usize.min(pos));
        let mut chosen: BTreeSet<u64> = BTreeSet::new();
        for _ in 0..n_refs {
            chosen.insert(background_ids[rng.gen_range(0..pos)]);
        }
        citation_links += chosen.len();
        let rec = pubs.iter_mut().find(|p| p.id == citing).unwrap();
        rec.refs = chosen.into_iter().collect();
    }

    // Serialize the flat corpus.
    let mut corpus_flat = String::new();
    for (i, p) in pubs.iter().enumerate() {
        if i > 0 {
            corpus_flat.push('\n');
        }
        writeln!(corpus_flat, "#index {}", p.id).unwrap();
        writeln!(corpus_flat, "#* {}", p.title).unwrap();
        let names: Vec<String> = p.authors.iter().map(|&a| author_name(a)).collect();
        writeln!(corpus_flat, "#@ {}", names.join("; ")).unwrap();
        writeln!(corpus_flat, "#t {}", p.year).unwrap();
        writeln!(corpus_flat, "#c {}", p.venue).unwrap();
        for r in &p.refs {
            writeln!(corpus_flat, "#% {r}").unwrap();
        }
        if let Some(ref a) = p.abstract_text {
            writeln!(corpus_flat, "#! {a}").unwrap();
        }
    }

    // Judgments: expert + secondaries per topic; topic 2 gets one extra
    // background positive so one topic has odd n.
    let mut judgments = String::new();
    let mut topics = Vec::new();
    for (t, (query, _)) in TOPICS.iter().enumerate() {
        if t > 0 {
            judgments.push('\n');
        }
        let mut positives = vec![author_name(t)];
        for k in 0..SECONDARIES_PER_TOPIC {
            positives.push(author_name(EXPERTS + t * SECONDARIES_PER_TOPIC + k));
        }
        if t == 2 {
            positives.push(author_name(20));
        }
        writeln!(judgments, "Q\t{query}").unwrap();
        for name in &positives {
            writeln!(judgments, "{name}").unwrap();
        }
        topics.push(TopicManifest {
            query: (*query).to_string(),
            expert: author_name(t),
            positives,
        });
    }

    let authors: BTreeSet<usize> = pubs.iter().flat_map(|p| p.authors.iter().copied()).collect();
    debug_assert_eq!(authors.len(), AUTHOR_COUNT);

    Fixture {
        corpus_flat,
        judgments,
        manifest: FixtureManifest {
            publications: pubs.len(),
            authors: authors.len(),
            citation_links,
            topics,
        },
    }
}

fn topical_title(rng: &mut ChaCha8Rng, terms: &[&str; 2], both: bool) -> String {
    let f1 = FILLERS[rng.gen_range(0..FILLERS.len())];
    let f2 = FILLERS[rng.gen_range(0..FILLERS.len())];
    if both {
        format!("{f1} {} {} {f2}", terms[0], terms[1])
    } else {
        format!("{f1} {} {f2}", terms[rng.gen_range(0..2)])
    }
}

fn topical_abstract(rng: &mut ChaCha8Rng, terms: &[&str; 2]) -> String {
    let f1 = FILLERS[rng.gen_range(0..FILLERS.len())];
    let f2 = FILLERS[rng.gen_range(0..FILLERS.len())];
    format!(
        "we present a {f1} {} {} {f2} with experimental results",
        terms[0], terms[1]
    )
}

fn background_title(rng: &mut ChaCha8Rng) -> String {
    let mut picks = BTreeSet::new();
    while picks.len() < 3 {
        picks.insert(FILLERS[rng.gen_range(0..FILLERS.len())]);
    }
    picks.into_iter().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_corpus, CorpusFormat, VenueClassifier};
    use std::io::Write as _;

    #[test]
    fn generation_is_deterministic() {
        let a = generate(DEFAULT_SEED);
        let b = generate(DEFAULT_SEED);
        assert_eq!(a, b);
        let c = generate(DEFAULT_SEED + 1);
        assert_ne!(a.corpus_flat, c.corpus_flat);
    }

    #[test]
    fn fixture_parses_and_counts_match_manifest() {
        let fixture = generate(DEFAULT_SEED);
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(fixture.corpus_flat.as_bytes()).unwrap();
        let (corpus, diag) = parse_corpus(
            f.path(),
            CorpusFormat::ArnetminerFlat,
            &VenueClassifier::default(),
        )
        .unwrap();
        assert_eq!(corpus.publication_count(), fixture.manifest.publications);
        assert_eq!(corpus.author_count(), fixture.manifest.authors);
        assert_eq!(corpus.stats().citation_links, fixture.manifest.citation_links);
        assert_eq!(diag.records_skipped, 0);
        assert_eq!(diag.references_dropped_unresolved, 0);

        // Rough scale contracted by the fixture's role.
        assert!(corpus.publication_count() >= 180 && corpus.publication_count() <= 230);
        assert_eq!(corpus.author_count(), 50);
        assert!(
            corpus.stats().citation_links >= 400 && corpus.stats().citation_links <= 800,
            "got {} links",
            corpus.stats().citation_links
        );
    }

    #[test]
    fn judgments_resolve_against_fixture_corpus() {
        let fixture = generate(DEFAULT_SEED);
        let mut cf = tempfile::NamedTempFile::new().unwrap();
        cf.write_all(fixture.corpus_flat.as_bytes()).unwrap();
        let (corpus, _) = parse_corpus(
            cf.path(),
            CorpusFormat::ArnetminerFlat,
            &VenueClassifier::default(),
        )
        .unwrap();
        let mut jf = tempfile::NamedTempFile::new().unwrap();
        jf.write_all(fixture.judgments.as_bytes()).unwrap();
        let (set, diag) = crate::corpus::load_judgments(jf.path(), &corpus).unwrap();
        assert_eq!(set.topics.len(), 5);
        assert!(diag.unresolved.is_empty());
        assert_eq!(set.topics[2].positives.len(), 5);
        for t in [0, 1, 3, 4] {
            assert_eq!(set.topics[t].positives.len(), 4);
        }
    }
}
