//! Scores, coverage, treebank and label-inventory statistics.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::codec::Codec;
use crate::graph::{Arc, DepGraph};
use crate::plane::assign_relaxed_planes;
use crate::rope::structural_arc_count;

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum ScoreError {
    #[error("gold has {gold} sentences, prediction has {pred}")]
    SentenceCount { gold: usize, pred: usize },

    #[error("sentence {sentence}: gold has {gold} nodes, prediction has {pred}")]
    Length {
        sentence: usize,
        gold: usize,
        pred: usize,
    },
}

/// Raw counts behind a [`ScoreReport`]. Counts from disjoint parts of a
/// corpus can be merged in any order.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub struct ScoreCounts {
    pub gold_arcs: usize,
    pub pred_arcs: usize,
    pub correct_unlabeled: usize,
    pub correct_labeled: usize,
    pub sentences: usize,
    pub exact_unlabeled: usize,
    pub exact_labeled: usize,
}

impl ScoreCounts {
    /// Counts for one sentence. Arcs are compared as `(head, dep)` pairs
    /// and, for the labeled figures, `(head, dep, relation)` triples, root
    /// attachments included.
    pub fn sentence(gold: &DepGraph, pred: &DepGraph) -> ScoreCounts {
        let gold_u = gold.unlabeled_arcs();
        let pred_u = pred.unlabeled_arcs();
        let gold_l: BTreeSet<&Arc> = gold.arcs().iter().collect();
        let pred_l: BTreeSet<&Arc> = pred.arcs().iter().collect();

        let correct_unlabeled = gold_u.intersection(&pred_u).count();
        let correct_labeled = gold_l.intersection(&pred_l).count();
        ScoreCounts {
            gold_arcs: gold_u.len(),
            pred_arcs: pred_u.len(),
            correct_unlabeled,
            correct_labeled,
            sentences: 1,
            exact_unlabeled: (gold_u == pred_u) as usize,
            exact_labeled: (gold_l == pred_l) as usize,
        }
    }

    pub fn merge(self, other: ScoreCounts) -> ScoreCounts {
        ScoreCounts {
            gold_arcs: self.gold_arcs + other.gold_arcs,
            pred_arcs: self.pred_arcs + other.pred_arcs,
            correct_unlabeled: self.correct_unlabeled + other.correct_unlabeled,
            correct_labeled: self.correct_labeled + other.correct_labeled,
            sentences: self.sentences + other.sentences,
            exact_unlabeled: self.exact_unlabeled + other.exact_unlabeled,
            exact_labeled: self.exact_labeled + other.exact_labeled,
        }
    }

    pub fn report(self) -> ScoreReport {
        ScoreReport {
            uf: f1(self.correct_unlabeled, self.gold_arcs, self.pred_arcs),
            lf: f1(self.correct_labeled, self.gold_arcs, self.pred_arcs),
            um: percentage(self.exact_unlabeled, self.sentences),
            lm: percentage(self.exact_labeled, self.sentences),
            counts: self,
        }
    }
}

/// Unlabeled and labeled F1 over arcs and exact match over sentences, all
/// as percentages.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScoreReport {
    pub uf: f64,
    pub lf: f64,
    pub um: f64,
    pub lm: f64,
    pub counts: ScoreCounts,
}

/// F1 in percent; an empty gold set matched by an empty prediction is 100.
fn f1(correct: usize, gold: usize, pred: usize) -> f64 {
    if gold == 0 && pred == 0 {
        return 100.0;
    }
    // 2PR / (P + R) simplified, so swapping gold and prediction is exact.
    200.0 * correct as f64 / (gold + pred) as f64
}

fn percentage(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        100.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

pub fn score(gold: &[DepGraph], pred: &[DepGraph]) -> Result<ScoreReport, ScoreError> {
    if gold.len() != pred.len() {
        return Err(ScoreError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let mut counts = ScoreCounts::default();
    for (i, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.len() != p.len() {
            return Err(ScoreError::Length {
                sentence: i + 1,
                gold: g.len(),
                pred: p.len(),
            });
        }
        counts = counts.merge(ScoreCounts::sentence(g, p));
    }
    Ok(counts.report())
}

/// Percentage of graphs that survive an encode/decode cycle unchanged.
/// An empty corpus has full coverage.
pub fn coverage(corpus: &[DepGraph], codec: Codec) -> f64 {
    let covered = corpus.iter().filter(|g| codec.round_trips(g)).count();
    percentage(covered, corpus.len())
}

/// Per-sentence structure measures; [`CorpusStats`] aggregates them.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SentenceStats {
    pub len: usize,
    pub arcs: usize,
    /// Relaxed planes needed without a budget; at least 1.
    pub planes: usize,
    pub structural: usize,
    /// Strongly connected components with two or more nodes.
    pub cycles: usize,
}

impl SentenceStats {
    pub fn of(g: &DepGraph) -> SentenceStats {
        SentenceStats {
            len: g.len(),
            arcs: g.arcs().len(),
            planes: assign_relaxed_planes(g, None).plane_count().max(1),
            structural: structural_arc_count(g),
            cycles: cyclic_components(g),
        }
    }
}

/// Number of strongly connected components of size two or more.
pub fn cyclic_components(g: &DepGraph) -> usize {
    let mut graph = DiGraph::<(), ()>::with_capacity(g.len() + 1, g.arcs().len());
    let nodes: Vec<_> = (0..=g.len()).map(|_| graph.add_node(())).collect();
    for arc in g.arcs() {
        graph.add_edge(nodes[arc.head], nodes[arc.dep], ());
    }
    tarjan_scc(&graph).iter().filter(|c| c.len() >= 2).count()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusStats {
    pub n_sents: usize,
    pub mean_len: f64,
    /// Fraction of sentences per number of relaxed planes needed.
    pub plane_histogram: BTreeMap<usize, f64>,
    /// Mean over sentences of arcs per node.
    pub density: f64,
    /// Mean size of the proper rope cover.
    pub mean_structural: f64,
    /// Cyclic strongly connected components summed over sentences.
    pub n_cycles: usize,
}

impl CorpusStats {
    pub fn from_sentences(stats: &[SentenceStats]) -> CorpusStats {
        let n = stats.len();
        if n == 0 {
            return CorpusStats::default();
        }
        let mean = |f: &dyn Fn(&SentenceStats) -> f64| stats.iter().map(f).sum::<f64>() / n as f64;

        let mut planes: BTreeMap<usize, usize> = BTreeMap::new();
        for s in stats {
            *planes.entry(s.planes).or_default() += 1;
        }
        CorpusStats {
            n_sents: n,
            mean_len: mean(&|s| s.len as f64),
            plane_histogram: planes
                .into_iter()
                .map(|(k, c)| (k, c as f64 / n as f64))
                .collect(),
            density: mean(&|s| {
                if s.len == 0 {
                    0.0
                } else {
                    s.arcs as f64 / s.len as f64
                }
            }),
            mean_structural: mean(&|s| s.structural as f64),
            n_cycles: stats.iter().map(|s| s.cycles).sum(),
        }
    }
}

pub fn treebank_stats(corpus: &[DepGraph]) -> CorpusStats {
    let stats: Vec<SentenceStats> = corpus.iter().map(SentenceStats::of).collect();
    CorpusStats::from_sentences(&stats)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LabelStats {
    /// Distinct training labels.
    pub inventory_size: usize,
    /// Distinct evaluation labels never seen in training.
    pub unseen: usize,
    /// Training labels by count, most frequent first (ties by label).
    pub rank_frequency: Vec<(String, usize)>,
    /// Total training label occurrences.
    pub total: usize,
    /// Fraction of distinct labels, most frequent first, needed to reach half
    /// of all occurrences. 0 for an empty inventory.
    pub p50: f64,
}

pub fn label_stats<S, T, E>(train: T, eval: E) -> LabelStats
where
    S: AsRef<str>,
    T: IntoIterator<Item = S>,
    E: IntoIterator<Item = S>,
{
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for label in train {
        *counts.entry(String::from(label.as_ref())).or_default() += 1;
    }
    let eval: BTreeSet<String> = eval.into_iter().map(|l| String::from(l.as_ref())).collect();
    let unseen = eval.iter().filter(|l| !counts.contains_key(*l)).count();

    let mut ranked: Vec<(String, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let freqs: Vec<usize> = ranked.iter().map(|(_, c)| *c).collect();

    LabelStats {
        inventory_size: ranked.len(),
        unseen,
        total: freqs.iter().sum(),
        p50: relative_rank_at_half(&freqs),
        rank_frequency: ranked,
    }
}

/// Relative rank at which the cumulative count of `counts`, sorted in
/// descending order, first reaches half of the total.
pub fn relative_rank_at_half(counts: &[usize]) -> f64 {
    let mut sorted: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
    if sorted.is_empty() {
        return 0.0;
    }
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let total: usize = sorted.iter().sum();
    let mut cumulative = 0;
    for (rank, count) in sorted.iter().enumerate() {
        cumulative += count;
        if 2 * cumulative >= total {
            return (rank + 1) as f64 / sorted.len() as f64;
        }
    }
    1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(n: usize, arcs: &[(usize, usize, &str)]) -> DepGraph {
        DepGraph::from_arcs(n, arcs.iter().map(|&(h, d, r)| Arc::labeled(h, d, r))).unwrap()
    }

    #[test]
    fn identical_graphs_score_100() {
        let g = labeled(3, &[(0, 1, "top"), (1, 2, "a"), (2, 3, "b")]);
        let r = score(core::slice::from_ref(&g), core::slice::from_ref(&g)).unwrap();
        assert_eq!((r.uf, r.lf, r.um, r.lm), (100.0, 100.0, 100.0, 100.0));
    }

    #[test]
    fn half_overlap() {
        let gold = labeled(3, &[(1, 2, "a"), (2, 3, "b")]);
        let pred = labeled(3, &[(1, 2, "a"), (3, 2, "b")]);
        let r = score(&[gold], &[pred]).unwrap();
        assert_eq!((r.uf, r.lf, r.um, r.lm), (50.0, 50.0, 0.0, 0.0));
    }

    #[test]
    fn relation_mismatch_only_hurts_labeled_scores() {
        let gold = labeled(2, &[(1, 2, "a")]);
        let pred = labeled(2, &[(1, 2, "b")]);
        let r = score(&[gold], &[pred]).unwrap();
        assert_eq!((r.uf, r.lf, r.um, r.lm), (100.0, 0.0, 100.0, 0.0));
    }

    #[test]
    fn empty_sentences_match_exactly() {
        let g = DepGraph::from_pairs(4, &[]).unwrap();
        let r = score(core::slice::from_ref(&g), core::slice::from_ref(&g)).unwrap();
        assert_eq!((r.uf, r.um, r.lm), (100.0, 100.0, 100.0));

        let pred = DepGraph::from_pairs(4, &[(1, 2)]).unwrap();
        let r = score(&[DepGraph::from_pairs(4, &[]).unwrap()], &[pred]).unwrap();
        assert_eq!((r.uf, r.um), (0.0, 0.0));
    }

    #[test]
    fn length_mismatch_names_the_sentence() {
        let a = DepGraph::from_pairs(3, &[]).unwrap();
        let b = DepGraph::from_pairs(4, &[]).unwrap();
        assert_eq!(
            score(&[a.clone(), a.clone()], &[a.clone(), b]),
            Err(ScoreError::Length {
                sentence: 2,
                gold: 3,
                pred: 4
            })
        );
        assert_eq!(
            score(core::slice::from_ref(&a), &[]),
            Err(ScoreError::SentenceCount { gold: 1, pred: 0 })
        );
    }

    #[test]
    fn p50_examples() {
        let stats = label_stats(
            core::iter::repeat_n("a", 50)
                .chain(core::iter::repeat_n("b", 30))
                .chain(core::iter::repeat_n("c", 20)),
            ["a", "d"],
        );
        assert!((stats.p50 - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(stats.inventory_size, 3);
        assert_eq!(stats.unseen, 1);
        assert_eq!(stats.total, 100);
        assert_eq!(stats.rank_frequency[0], (String::from("a"), 50));

        let single = label_stats(["x", "x"], core::iter::empty::<&str>());
        assert_eq!(single.p50, 1.0);
        assert_eq!(label_stats(core::iter::empty::<&str>(), ["x"]).p50, 0.0);
    }

    #[test]
    fn cycles_are_counted_as_components() {
        let g = DepGraph::from_pairs(5, &[(2, 5), (5, 2)]).unwrap();
        assert_eq!(cyclic_components(&g), 1);
        let g = DepGraph::from_pairs(6, &[(1, 2), (2, 3), (3, 1), (2, 1), (4, 5), (5, 6)]).unwrap();
        assert_eq!(cyclic_components(&g), 1);
        let g = DepGraph::from_pairs(4, &[(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap();
        assert_eq!(cyclic_components(&g), 2);
    }

    #[test]
    fn empty_corpus_stats() {
        let s = treebank_stats(&[]);
        assert_eq!(s, CorpusStats::default());
        assert_eq!(coverage(&[], Codec::Hierarchical), 100.0);
    }
}
