//! Seeded deterministic instance generation. The generator is a SplitMix64
//! stream so identical seeds produce identical instances on every platform.

use crate::digraph::Digraph;
use crate::graph::Graph;
use crate::solver::{Cost, CostMatrix};

/// SplitMix64 state. Small, fast, and stable across platforms and versions,
/// which keeps seeded outputs byte-identical.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        // modulo bias is irrelevant at the bounds used here
        self.next_u64() % bound
    }
}

/// A random semicomplete digraph with possible loops. Every unordered pair
/// of distinct vertices receives both arcs with probability `sym_prob` and a
/// single arc of uniform random direction otherwise; every vertex receives a
/// loop with probability `loop_prob`. Deterministic in the seed.
pub fn random_semicomplete_wpl(seed: u64, n: usize, sym_prob: f64, loop_prob: f64) -> Digraph {
    assert!(n >= 1, "generator needs at least one vertex");
    let mut rng = SplitMix64::new(seed);
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < sym_prob {
                d.add_arc(u, v).expect("in range");
                d.add_arc(v, u).expect("in range");
            } else if rng.next_f64() < 0.5 {
                d.add_arc(u, v).expect("in range");
            } else {
                d.add_arc(v, u).expect("in range");
            }
        }
    }
    for v in 0..n {
        if rng.next_f64() < loop_prob {
            d.add_arc(v, v).expect("in range");
        }
    }
    d
}

/// A random digraph: each ordered pair `(u, v)`, `u != v`, gets an arc with
/// probability `arc_prob`, each vertex a loop with probability `loop_prob`.
pub fn random_digraph(seed: u64, n: usize, arc_prob: f64, loop_prob: f64) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if rng.next_f64() < arc_prob {
                d.add_arc(u, v).expect("in range");
            }
        }
    }
    for v in 0..n {
        if rng.next_f64() < loop_prob {
            d.add_arc(v, v).expect("in range");
        }
    }
    d
}

/// A random simple undirected graph with edge probability `edge_prob`.
pub fn random_graph(seed: u64, n: usize, edge_prob: f64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < edge_prob {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// A random cost matrix with entries uniform in `0..=max_cost`, each entry
/// independently replaced by the infinite sentinel with probability
/// `infinite_prob`.
pub fn random_costs(
    seed: u64,
    rows: usize,
    cols: usize,
    max_cost: u64,
    infinite_prob: f64,
) -> CostMatrix {
    let mut rng = SplitMix64::new(seed);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        if rng.next_f64() < infinite_prob {
            data.push(Cost::Infinite);
        } else {
            data.push(Cost::Finite(rng.next_below(max_cost + 1)));
        }
    }
    CostMatrix::from_flat(rows, cols, data)
}
