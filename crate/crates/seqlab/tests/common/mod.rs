#![allow(dead_code)]

use graph_seqlab_core::{
    random_graph, BracketSymbol, DepGraph, Direction, Polarity, Tier, TokenLabel,
};
use rand::Rng;

pub const REFERENCE_ARCS: [(usize, usize); 8] = [
    (1, 5),
    (1, 8),
    (5, 3),
    (8, 10),
    (2, 6),
    (6, 4),
    (6, 10),
    (6, 9),
];

pub fn reference_graph() -> DepGraph {
    DepGraph::from_pairs(10, &REFERENCE_ARCS).unwrap()
}

/// The shared random suite: n in 1..=12, density in 0.0..=1.5, cycles and
/// reentrancies enabled.
pub fn suite_graph(seed: u64) -> DepGraph {
    let n = 1 + (seed % 12) as usize;
    let density = (seed / 12 % 16) as f64 / 10.0;
    random_graph(n, density, 0.3, 0.3, seed)
}

/// Uniform draw from the whole label grammar: root marker, both tiers,
/// directions and polarities, and indices 0..=3.
pub fn random_label(rng: &mut impl Rng) -> TokenLabel {
    let count = rng.gen_range(0..=4);
    let symbols = (0..count)
        .map(|_| {
            let tier = if rng.gen() { Tier::Super } else { Tier::Plain };
            let direction = if rng.gen() {
                Direction::Left
            } else {
                Direction::Right
            };
            let polarity = if rng.gen() {
                Polarity::Open
            } else {
                Polarity::Close
            };
            BracketSymbol::new(tier, direction, polarity, rng.gen_range(0..=3))
        })
        .collect();
    TokenLabel::new(rng.gen_bool(0.1), symbols)
}

/// Correlation from pairwise differences,
/// r = sum_{i<j} dx dy / sqrt(sum_{i<j} dx^2 * sum_{i<j} dy^2),
/// which never forms a mean.
pub fn pairwise_pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let dx = xs[i] - xs[j];
            let dy = ys[i] - ys[j];
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
    }
    sxy / (sxx * syy).sqrt()
}
