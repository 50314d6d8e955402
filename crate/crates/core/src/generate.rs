//! Seeded random dependency graphs for property tests and synthetic corpora.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Arc, DepGraph};

/// Shape parameters for [`random_graph`]. Out-of-range values are clamped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    /// Number of tokens.
    pub len: usize,
    /// Target arcs per node. The graph gets `round(len * density)` arcs when
    /// that many fit; without reentrancies at most `len - 1` (or `len` when a
    /// cycle is planted) do.
    pub density: f64,
    /// Probability of planting one directed cycle of length 2 to 4.
    pub p_cycle: f64,
    /// Probability that a node receives a second head. Any positive value
    /// also lets extra arcs (root attachments included) fill up the density
    /// target.
    pub p_reentrancy: f64,
}

impl GeneratorConfig {
    pub fn new(len: usize, density: f64) -> Self {
        GeneratorConfig {
            len,
            density,
            p_cycle: 0.0,
            p_reentrancy: 0.0,
        }
    }

    pub fn with_cycles(mut self, p: f64) -> Self {
        self.p_cycle = p;
        self
    }

    pub fn with_reentrancies(mut self, p: f64) -> Self {
        self.p_reentrancy = p;
        self
    }

    /// Draws one graph. Equal seeds give equal graphs.
    pub fn generate(&self, seed: u64) -> DepGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.len;
        let density = if self.density.is_finite() {
            self.density.max(0.0)
        } else {
            0.0
        };
        let p_cycle = probability(self.p_cycle);
        let p_reentrancy = probability(self.p_reentrancy);

        let max_arcs = n * n;
        let target = n as f64 * density + 0.5;
        let budget = if target >= max_arcs as f64 {
            max_arcs
        } else {
            target as usize
        };

        let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut has_head = alloc::vec![false; n + 1];

        if n >= 2 && budget >= 2 && rng.gen_bool(p_cycle) {
            let len = rng.gen_range(2..=4.min(n).min(budget));
            let nodes: Vec<usize> = index::sample(&mut rng, n, len)
                .into_iter()
                .map(|i| i + 1)
                .collect();
            for (i, &head) in nodes.iter().enumerate() {
                let dep = nodes[(i + 1) % len];
                arcs.insert((head, dep));
                has_head[dep] = true;
            }
        }

        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);
        let mut visited: Vec<usize> = Vec::with_capacity(n);
        for &dep in &order {
            if arcs.len() >= budget {
                break;
            }
            if !has_head[dep] && !visited.is_empty() {
                let head = visited[rng.gen_range(0..visited.len())];
                arcs.insert((head, dep));
                has_head[dep] = true;
            }
            visited.push(dep);
            if arcs.len() < budget && p_reentrancy > 0.0 && rng.gen_bool(p_reentrancy) {
                for _ in 0..8 {
                    let head = rng.gen_range(0..=n);
                    if head != dep && arcs.insert((head, dep)) {
                        break;
                    }
                }
            }
        }

        if p_reentrancy > 0.0 && arcs.len() < budget {
            let mut free: Vec<(usize, usize)> = (0..=n)
                .flat_map(|h| (1..=n).map(move |d| (h, d)))
                .filter(|&(h, d)| h != d && !arcs.contains(&(h, d)))
                .collect();
            free.shuffle(&mut rng);
            let missing = budget - arcs.len();
            arcs.extend(free.into_iter().take(missing));
        }

        DepGraph::from_arcs(n, arcs.into_iter().map(|(h, d)| Arc::new(h, d)))
            .expect("generated arcs are valid")
    }
}

fn probability(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// A random graph over `n` tokens; see [`GeneratorConfig`].
pub fn random_graph(
    n: usize,
    density: f64,
    p_cycle: f64,
    p_reentrancy: f64,
    seed: u64,
) -> DepGraph {
    GeneratorConfig {
        len: n,
        density,
        p_cycle,
        p_reentrancy,
    }
    .generate(seed)
}
