//! Exhaustive enumeration of small labeled instances, used by the test
//! suites and the self-test command.

use crate::digraph::Digraph;
use crate::graph::Graph;

/// All labeled semicomplete digraphs with possible loops on `n` vertices:
/// every unordered pair takes one of three adjacency states and every vertex
/// optionally carries a loop, giving `3^(n choose 2) * 2^n` digraphs.
pub fn all_semicomplete_wpl(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let pair_states = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::with_capacity(pair_states << n);
    for ps in 0..pair_states {
        for loops in 0..(1usize << n) {
            let mut d = Digraph::new(n);
            let mut code = ps;
            for &(u, v) in &pairs {
                match code % 3 {
                    0 => d.add_arc(u, v).expect("in range"),
                    1 => d.add_arc(v, u).expect("in range"),
                    _ => {
                        d.add_arc(u, v).expect("in range");
                        d.add_arc(v, u).expect("in range");
                    }
                }
                code /= 3;
            }
            for v in 0..n {
                if loops >> v & 1 == 1 {
                    d.add_arc(v, v).expect("in range");
                }
            }
            out.push(d);
        }
    }
    out
}

/// All labeled simple undirected graphs on `n` vertices.
pub fn all_simple_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0..1usize << pairs.len())
        .map(|mask| {
            let mut g = Graph::new(n);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(u, v).expect("in range");
                }
            }
            g
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_semicomplete_wpl(1).len(), 2);
        assert_eq!(all_semicomplete_wpl(2).len(), 12);
        assert_eq!(all_semicomplete_wpl(3).len(), 216);
        assert!(all_semicomplete_wpl(3).iter().all(|h| h.is_semicomplete_wpl()));

        assert_eq!(all_simple_graphs(4).len(), 64);
        assert!(all_simple_graphs(4).iter().all(|g| g.is_simple()));
    }
}
