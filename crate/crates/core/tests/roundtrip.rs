use graph_seqlab_core::label::{Polarity, Tier};
use graph_seqlab_core::{
    bk_decode, bk_encode, hb_decode, hb_decode_robust, hb_encode, random_graph, Arc, Codec,
    DepGraph,
};
use proptest::prelude::*;

fn keys(arcs: &[Arc]) -> Vec<(usize, usize)> {
    arcs.iter().map(Arc::key).collect()
}

fn suite_graph(seed: u64) -> DepGraph {
    let n = 1 + (seed % 12) as usize;
    let density = (seed / 12 % 16) as f64 / 10.0;
    random_graph(n, density, 0.3, 0.3, seed)
}

#[test]
fn hb_round_trips_random_suite() {
    for seed in 0..10_000 {
        let g = suite_graph(seed);
        let labels = hb_encode(&g);
        assert_eq!(labels.len(), g.len());
        let decoded = hb_decode(&labels).unwrap_or_else(|e| {
            panic!(
                "seed {}: {} on {:?} / {:?}",
                seed,
                e,
                keys(g.arcs()),
                labels.iter().map(|l| l.render()).collect::<Vec<_>>()
            )
        });
        assert_eq!(keys(&decoded), keys(g.arcs()), "seed {}", seed);
        assert_eq!(hb_decode_robust(&labels), decoded, "seed {}", seed);
    }
}

#[test]
fn hb_symbol_budget() {
    for seed in 0..2_000 {
        let g = suite_graph(seed);
        let cover = graph_seqlab_core::proper_rope_cover(&g);
        let labels = hb_encode(&g);
        let symbols: Vec<_> = labels.iter().flat_map(|l| l.symbols.iter()).collect();
        let supers = symbols.iter().filter(|s| s.tier == Tier::Super).count();
        let plain = symbols.len() - supers;
        assert_eq!(supers, 2 * cover.structural_count());
        assert_eq!(plain, cover.auxiliary_count());
        let open = symbols
            .iter()
            .filter(|s| s.tier == Tier::Super && s.polarity == Polarity::Open)
            .count();
        assert_eq!(open * 2, supers);
        let roots = labels.iter().filter(|l| l.root).count();
        assert_eq!(roots, g.arcs().iter().filter(|a| a.is_root()).count());
    }
}

#[test]
fn bk_round_trips_when_nothing_is_dropped() {
    for seed in 0..10_000 {
        let g = suite_graph(seed);
        for k in 1..=4 {
            let assignment = graph_seqlab_core::assign_relaxed_planes(&g, Some(k));
            let decoded = bk_decode(&bk_encode(&g, k), k).unwrap();
            if assignment.is_lossless() {
                assert_eq!(keys(&decoded), keys(g.arcs()), "seed {} k {}", seed, k);
            } else {
                assert_eq!(
                    decoded.len() + assignment.dropped.len(),
                    g.arcs().len(),
                    "seed {} k {}",
                    seed,
                    k
                );
            }
        }
    }
}

#[test]
fn re_encoding_is_stable() {
    for seed in 0..3_000 {
        let g = suite_graph(seed);
        for codec in [Codec::Hierarchical, Codec::Planes(2), Codec::Planes(3)] {
            if !codec.round_trips(&g) {
                continue;
            }
            let labels = codec.encode(&g);
            let decoded = codec
                .decode_graph(&g, &labels, graph_seqlab_core::DecodeMode::Strict)
                .unwrap();
            assert_eq!(codec.encode(&decoded), labels, "seed {} {}", seed, codec);
        }
    }
}

proptest! {
    #[test]
    fn hb_round_trips_arbitrary_arc_sets(
        n in 1usize..10,
        raw in proptest::collection::btree_set((0usize..10, 1usize..10), 0..30),
    ) {
        let pairs: Vec<(usize, usize)> = raw
            .into_iter()
            .filter(|&(h, d)| h <= n && d <= n && h != d)
            .collect();
        let g = DepGraph::from_pairs(n, &pairs).unwrap();
        let decoded = hb_decode(&hb_encode(&g)).unwrap();
        prop_assert_eq!(keys(&decoded), keys(g.arcs()));
    }

    #[test]
    fn label_rendering_round_trips(
        root in any::<bool>(),
        symbols in proptest::collection::vec((any::<bool>(), any::<bool>(), any::<bool>(), 0u32..30), 0..6),
    ) {
        use graph_seqlab_core::{BracketSymbol, Direction, Polarity, Tier, TokenLabel};
        let label = TokenLabel::new(
            root,
            symbols
                .into_iter()
                .map(|(sup, right, open, index)| BracketSymbol::new(
                    if sup { Tier::Super } else { Tier::Plain },
                    if right { Direction::Right } else { Direction::Left },
                    if open { Polarity::Open } else { Polarity::Close },
                    index,
                ))
                .collect(),
        );
        let rendered = label.render();
        prop_assert_eq!(TokenLabel::parse(&rendered).unwrap(), label);
    }
}
