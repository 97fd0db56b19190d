//! Relevance judgments: topic loading, name resolution, and deterministic
//! negative augmentation.
//!
//! Judgment files carry one topic per block, blocks separated by blank
//! lines: the first line is `Q<TAB><query text>`, each following line one
//! author name or numeric author id. Augmented judgment sets round-trip
//! through a pool file that stores resolved ids (`+` positives, `-`
//! negatives), which is what ranking and evaluation consume.

use super::{folded_name, AuthorId, Corpus};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use thiserror::Error;

/// A query topic with its judged experts and (after augmentation) sampled
/// non-experts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub query: String,
    pub positives: Vec<AuthorId>,
    /// Empty until [`augment_negatives`] runs; afterwards holds the
    /// BM25-selected negatives first, then the random ones.
    pub negatives: Vec<AuthorId>,
}

impl Topic {
    /// Candidate pool: positives then negatives.
    pub fn candidates(&self) -> Vec<AuthorId> {
        let mut c = self.positives.clone();
        c.extend_from_slice(&self.negatives);
        c
    }
}

/// Query topics with positive (expert) and augmented negative labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgmentSet {
    pub topics: Vec<Topic>,
}

/// What judgment loading resolved, skipped, or found ambiguous.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgmentDiagnostics {
    pub topics_total: usize,
    pub topics_kept: usize,
    /// (query, name) pairs that matched no corpus author.
    pub unresolved: Vec<(String, String)>,
    /// (query, name) pairs that matched several authors after case folding;
    /// resolved to the smallest author id.
    pub ambiguous: Vec<(String, String)>,
    /// Queries excluded because no positive resolved.
    pub excluded_topics: Vec<String>,
    pub duplicate_positives: usize,
}

impl fmt::Display for JudgmentDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "judgment diagnostics")?;
        writeln!(f, "  topics_total        {}", self.topics_total)?;
        writeln!(f, "  topics_kept         {}", self.topics_kept)?;
        writeln!(f, "  duplicate_positives {}", self.duplicate_positives)?;
        for (q, n) in &self.unresolved {
            writeln!(f, "  unresolved          {q:?}: {n:?}")?;
        }
        for (q, n) in &self.ambiguous {
            writeln!(f, "  ambiguous           {q:?}: {n:?}")?;
        }
        for q in &self.excluded_topics {
            writeln!(f, "  excluded_topic      {q:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum JudgmentError {
    #[error("cannot read judgments file: {0}")]
    Io(#[from] std::io::Error),
    #[error("judgments file line {line}: expert line before any `Q<TAB>...` topic header")]
    LineOutsideTopic { line: usize },
    #[error("topic {query:?}: corpus has {available} authors, augmentation needs {needed}")]
    PoolTooSmall {
        query: String,
        needed: usize,
        available: usize,
    },
}

/// Load a judgments file and resolve author names against the corpus.
///
/// Names are matched whitespace- and case-normalized; all-digit lines are
/// treated as author ids. Topics with zero resolvable positives are excluded
/// (reported in the diagnostics), matching the rule that evaluation refuses
/// to run on an empty set.
pub fn load_judgments(
    path: &Path,
    corpus: &Corpus,
) -> Result<(JudgmentSet, JudgmentDiagnostics), JudgmentError> {
    let text = std::fs::read_to_string(path)?;
    let mut diag = JudgmentDiagnostics::default();

    // Case-folded name -> candidate ids, for ambiguity reporting.
    let mut folded: HashMap<String, Vec<AuthorId>> = HashMap::new();
    for a in corpus.authors() {
        folded.entry(folded_name(&a.name)).or_default().push(a.author_id);
    }

    let mut topics: Vec<Topic> = Vec::new();
    let mut current: Option<Topic> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if let Some(t) = current.take() {
                finish_topic(t, &mut topics, &mut diag);
            }
            continue;
        }
        if let Some(query) = line.strip_prefix("Q\t") {
            if let Some(t) = current.take() {
                finish_topic(t, &mut topics, &mut diag);
            }
            current = Some(Topic {
                query: query.trim().to_string(),
                positives: Vec::new(),
                negatives: Vec::new(),
            });
            continue;
        }
        let Some(topic) = current.as_mut() else {
            return Err(JudgmentError::LineOutsideTopic { line: lineno + 1 });
        };
        let entry = line.trim();
        let resolved = if entry.chars().all(|c| c.is_ascii_digit()) {
            let id = AuthorId(entry.parse::<u64>().unwrap_or(u64::MAX));
            corpus.author(id).map(|a| a.author_id)
        } else {
            match folded.get(&folded_name(entry)) {
                Some(ids) if ids.len() == 1 => Some(ids[0]),
                Some(ids) => {
                    diag.ambiguous
                        .push((topic.query.clone(), entry.to_string()));
                    ids.iter().copied().min()
                }
                None => None,
            }
        };
        match resolved {
            Some(id) if topic.positives.contains(&id) => diag.duplicate_positives += 1,
            Some(id) => topic.positives.push(id),
            None => diag.unresolved.push((topic.query.clone(), entry.to_string())),
        }
    }
    if let Some(t) = current.take() {
        finish_topic(t, &mut topics, &mut diag);
    }

    diag.topics_kept = topics.len();
    Ok((JudgmentSet { topics }, diag))
}

fn finish_topic(topic: Topic, topics: &mut Vec<Topic>, diag: &mut JudgmentDiagnostics) {
    diag.topics_total += 1;
    if topic.positives.is_empty() {
        diag.excluded_topics.push(topic.query);
    } else {
        topics.push(topic);
    }
}

/// Add negative judgments to every topic: for `n` positives, the top `⌈n/2⌉`
/// non-positive authors of the supplied expertise ranking plus `⌊n/2⌋`
/// uniformly sampled non-positive, not-yet-chosen authors.
///
/// `scorer` ranks authors for a query text in descending expertise order; it
/// may omit zero-score authors, which are treated as ranked after all listed
/// ones in ascending id order. The sampling is a pure function of
/// (judgments, corpus, scorer output, seed).
pub fn augment_negatives<S>(
    judgments: &JudgmentSet,
    corpus: &Corpus,
    scorer: S,
    seed: u64,
) -> Result<JudgmentSet, JudgmentError>
where
    S: Fn(&str) -> Vec<AuthorId>,
{
    let all_authors: Vec<AuthorId> = corpus.authors().map(|a| a.author_id).collect();
    let mut topics = Vec::with_capacity(judgments.topics.len());
    for (idx, topic) in judgments.topics.iter().enumerate() {
        let n = topic.positives.len();
        if all_authors.len() < 2 * n {
            return Err(JudgmentError::PoolTooSmall {
                query: topic.query.clone(),
                needed: 2 * n,
                available: all_authors.len(),
            });
        }
        let positives: BTreeSet<AuthorId> = topic.positives.iter().copied().collect();
        let take_ranked = n.div_ceil(2);
        let take_random = n / 2;

        let mut negatives: Vec<AuthorId> = Vec::with_capacity(n);
        let mut chosen: BTreeSet<AuthorId> = BTreeSet::new();
        for id in scorer(&topic.query) {
            if negatives.len() == take_ranked {
                break;
            }
            if !positives.contains(&id) && chosen.insert(id) {
                negatives.push(id);
            }
        }
        // Scorer rankings may be partial; unlisted authors rank after all
        // listed ones, by ascending id.
        if negatives.len() < take_ranked {
            for &id in &all_authors {
                if negatives.len() == take_ranked {
                    break;
                }
                if !positives.contains(&id) && chosen.insert(id) {
                    negatives.push(id);
                }
            }
        }

        let mut eligible: Vec<AuthorId> = all_authors
            .iter()
            .copied()
            .filter(|id| !positives.contains(id) && !chosen.contains(id))
            .collect();
        let mut rng = topic_rng(seed, idx);
        for i in 0..take_random {
            let j = rng.gen_range(i..eligible.len());
            eligible.swap(i, j);
            negatives.push(eligible[i]);
        }

        topics.push(Topic {
            query: topic.query.clone(),
            positives: topic.positives.clone(),
            negatives,
        });
    }
    Ok(JudgmentSet { topics })
}

fn topic_rng(seed: u64, topic_idx: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (topic_idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Write an augmented judgment set as a pool file: `Q<TAB>query`, then one
/// `+<TAB>id` line per positive and `-<TAB>id` per negative.
pub fn write_pool_file(set: &JudgmentSet, path: &Path) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for (i, topic) in set.topics.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "Q\t{}", topic.query)?;
        for id in &topic.positives {
            writeln!(out, "+\t{id}")?;
        }
        for id in &topic.negatives {
            writeln!(out, "-\t{id}")?;
        }
    }
    out.flush()
}

/// Read a pool file back into a judgment set.
pub fn read_pool_file(path: &Path) -> Result<JudgmentSet, JudgmentError> {
    let text = std::fs::read_to_string(path)?;
    let mut topics = Vec::new();
    let mut current: Option<Topic> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(query) = line.strip_prefix("Q\t") {
            if let Some(t) = current.take() {
                topics.push(t);
            }
            current = Some(Topic {
                query: query.trim().to_string(),
                positives: Vec::new(),
                negatives: Vec::new(),
            });
            continue;
        }
        let topic = current
            .as_mut()
            .ok_or(JudgmentError::LineOutsideTopic { line: lineno + 1 })?;
        let parse = |s: &str| s.trim().parse::<u64>().map(AuthorId);
        if let Some(rest) = line.strip_prefix("+\t") {
            if let Ok(id) = parse(rest) {
                topic.positives.push(id);
            }
        } else if let Some(rest) = line.strip_prefix("-\t") {
            if let Ok(id) = parse(rest) {
                topic.negatives.push(id);
            }
        } else {
            return Err(JudgmentError::LineOutsideTopic { line: lineno + 1 });
        }
    }
    if let Some(t) = current.take() {
        topics.push(t);
    }
    Ok(JudgmentSet { topics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_corpus, CorpusFormat, VenueClassifier};

    fn small_corpus(n_authors: usize) -> Corpus {
        let mut text = String::new();
        for i in 0..n_authors {
            text.push_str(&format!(
                "#index {}\n#* Paper number {}\n#@ Author {:02}\n#t {}\n\n",
                i + 1,
                i + 1,
                i,
                2000 + (i % 5)
            ));
        }
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        parse_corpus(
            f.path(),
            CorpusFormat::ArnetminerFlat,
            &VenueClassifier::default(),
        )
        .unwrap()
        .0
    }

    fn load_str(text: &str, corpus: &Corpus) -> (JudgmentSet, JudgmentDiagnostics) {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        load_judgments(f.path(), corpus).unwrap()
    }

    #[test]
    fn resolves_names_and_reports_unresolved() {
        let corpus = small_corpus(20);
        let (set, diag) = load_str(
            "Q\tboosting\nAuthor 00\nauthor  01\nNobody Here\n\nQ\tempty topic\nAlso Nobody\n",
            &corpus,
        );
        assert_eq!(set.topics.len(), 1);
        assert_eq!(set.topics[0].positives.len(), 2);
        assert_eq!(diag.unresolved.len(), 2);
        assert_eq!(diag.excluded_topics, vec!["empty topic".to_string()]);
    }

    #[test]
    fn resolves_numeric_ids() {
        let corpus = small_corpus(5);
        let (set, diag) = load_str("Q\ttopic\n0\n3\n9999\n", &corpus);
        assert_eq!(
            set.topics[0].positives,
            vec![AuthorId(0), AuthorId(3)]
        );
        assert_eq!(diag.unresolved.len(), 1);
    }

    #[test]
    fn empty_file_gives_empty_set() {
        let corpus = small_corpus(3);
        let (set, diag) = load_str("", &corpus);
        assert!(set.topics.is_empty());
        assert_eq!(diag.topics_total, 0);
    }

    #[test]
    fn augmentation_counts_and_disjointness() {
        let corpus = small_corpus(20);
        let set = JudgmentSet {
            topics: vec![Topic {
                query: "q".into(),
                positives: vec![AuthorId(0), AuthorId(1), AuthorId(2), AuthorId(3)],
                negatives: vec![],
            }],
        };
        // Rank everyone by descending id so the "BM25" picks are predictable.
        let scorer = |_: &str| (0..20).rev().map(AuthorId).collect::<Vec<_>>();
        let out = augment_negatives(&set, &corpus, scorer, 7).unwrap();
        let t = &out.topics[0];
        assert_eq!(t.negatives.len(), 4);
        assert_eq!(&t.negatives[..2], &[AuthorId(19), AuthorId(18)]);
        for id in &t.negatives {
            assert!(!t.positives.contains(id));
        }
        let distinct: BTreeSet<_> = t.negatives.iter().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn augmentation_is_seed_deterministic() {
        let corpus = small_corpus(30);
        let set = JudgmentSet {
            topics: vec![
                Topic {
                    query: "a".into(),
                    positives: (0..5).map(AuthorId).collect(),
                    negatives: vec![],
                },
                Topic {
                    query: "b".into(),
                    positives: (5..8).map(AuthorId).collect(),
                    negatives: vec![],
                },
            ],
        };
        let scorer = |_: &str| Vec::new();
        let one = augment_negatives(&set, &corpus, scorer, 42).unwrap();
        let two = augment_negatives(&set, &corpus, scorer, 42).unwrap();
        let other = augment_negatives(&set, &corpus, scorer, 43).unwrap();
        assert_eq!(one, two);
        assert_ne!(one, other);
        // Odd n: ceil(3/2)=2 ranked picks, floor(3/2)=1 random pick.
        assert_eq!(one.topics[1].negatives.len(), 3);
    }

    #[test]
    fn augmentation_at_topic_scale() {
        // A Semantic-Web-sized topic: 318 positives on a 1000-author corpus.
        let corpus = small_corpus(1000);
        let set = JudgmentSet {
            topics: vec![Topic {
                query: "big topic".into(),
                positives: (0..318).map(AuthorId).collect(),
                negatives: vec![],
            }],
        };
        let scorer = |_: &str| (500..900).map(AuthorId).collect::<Vec<_>>();
        let out = augment_negatives(&set, &corpus, scorer, 9).unwrap();
        let t = &out.topics[0];
        assert_eq!(t.negatives.len(), 318);
        let negatives: BTreeSet<AuthorId> = t.negatives.iter().copied().collect();
        let positives: BTreeSet<AuthorId> = t.positives.iter().copied().collect();
        assert_eq!(negatives.len(), 318, "no duplicate negatives");
        assert!(negatives.is_disjoint(&positives));
        // ceil(318/2) = 159 ranked picks come from the scorer's list.
        for id in &t.negatives[..159] {
            assert!((500..900).contains(&id.0));
        }
    }

    #[test]
    fn augmentation_rejects_small_corpus() {
        let corpus = small_corpus(5);
        let set = JudgmentSet {
            topics: vec![Topic {
                query: "too big".into(),
                positives: (0..3).map(AuthorId).collect(),
                negatives: vec![],
            }],
        };
        let err = augment_negatives(&set, &corpus, |_| Vec::new(), 1).unwrap_err();
        match err {
            JudgmentError::PoolTooSmall { query, needed, available } => {
                assert_eq!(query, "too big");
                assert_eq!(needed, 6);
                assert_eq!(available, 5);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn pool_file_round_trip() {
        let set = JudgmentSet {
            topics: vec![
                Topic {
                    query: "alpha beta".into(),
                    positives: vec![AuthorId(1), AuthorId(2)],
                    negatives: vec![AuthorId(9), AuthorId(4)],
                },
                Topic {
                    query: "gamma".into(),
                    positives: vec![AuthorId(7)],
                    negatives: vec![AuthorId(0)],
                },
            ],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pools.tsv");
        write_pool_file(&set, &path).unwrap();
        let back = read_pool_file(&path).unwrap();
        assert_eq!(back, set);
    }
}
