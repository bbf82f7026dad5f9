//! Executable NP-hardness reductions: each takes a simple undirected graph
//! and emits a minimum cost homomorphism instance over a fixed 3-vertex
//! target whose optimal cost encodes the independence number. Together with
//! the brute-force solver and the independent-set enumerator they give an
//! end-to-end check of the hardness side of the dichotomy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::Graph;
use crate::solver::{Cost, CostMatrix, Homomorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input graph must be simple (vertex {0} has a loop)")]
    NotSimple(usize),
    #[error("input graph must have at least one vertex")]
    EmptyGraph,
    #[error("independent set search is capped at {cap} vertices, got {got}")]
    BudgetExceeded { cap: usize, got: usize },
}

/// Which reduction produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    /// Two layers per graph vertex; the target is a directed triangle with
    /// one symmetric arc, loops at its endpoints, and optionally a loop on
    /// the remaining vertex.
    RPrime { loop_at_first: bool },
    /// A six-cycle gadget per edge; the target is a 2-cycle plus a loop
    /// vertex threaded into it.
    Gadget,
}

/// Role of an instance vertex relative to the source graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexOrigin {
    /// First layer of a graph vertex (carries the independent-set choice).
    Tail { g_vertex: usize },
    /// Second layer of a graph vertex.
    Head { g_vertex: usize },
    /// The graph vertex itself (gadget reduction).
    Original { g_vertex: usize },
    /// Cycle vertex `index` (1-based) of the gadget for edge `edge`.
    Cycle { edge: usize, index: usize },
    /// Connector of the gadget for edge `edge` attached to `g_vertex`.
    Port { edge: usize, g_vertex: usize },
}

/// A generated instance: input digraph, costs, the fixed target, and the
/// origin of every instance vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInstance {
    pub kind: ReductionKind,
    pub h: Digraph,
    pub d: Digraph,
    pub costs: CostMatrix,
    pub origins: Vec<VertexOrigin>,
}

fn require_simple(g: &Graph) -> Result<(), ReductionError> {
    if g.n() == 0 {
        return Err(ReductionError::EmptyGraph);
    }
    match (0..g.n()).find(|&v| g.has_selfloop(v)) {
        Some(v) => Err(ReductionError::NotSimple(v)),
        None => Ok(()),
    }
}

/// Edges of `g` as ordered pairs `(u, v)`, `u < v`, lexicographic. This
/// fixes the gadget orientation deterministically.
fn sorted_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| u != v).collect()
}

/// Instance over the 3-color target with arcs 01, 12, 21, 20 and loops at 1
/// and 2 (plus a loop at 0 when `loop_at_first`). Each graph vertex `x`
/// becomes an arc `tail(x) -> head(x)`; each graph edge `{x, y}` adds the
/// arcs `head(x) -> tail(y)` and `head(y) -> tail(x)`. Costs make the
/// optimum equal `4p - alpha(G)` where `p = |V(G)|`: color 0 on a tail is
/// free but blocked across edges, the fallback color 2 costs 2 per layer.
pub fn reduce_mis_rprime(g: &Graph, loop_at_first: bool) -> Result<ReductionInstance, ReductionError> {
    require_simple(g)?;
    let p = g.n();

    let mut h_arcs = vec![(0, 1), (1, 2), (2, 1), (2, 0), (1, 1), (2, 2)];
    if loop_at_first {
        h_arcs.push((0, 0));
    }
    let h = Digraph::from_arcs(3, h_arcs).expect("target in range");

    let tail = |x: usize| 2 * x;
    let head = |x: usize| 2 * x + 1;
    let mut d = Digraph::new(2 * p);
    let mut origins = Vec::with_capacity(2 * p);
    for x in 0..p {
        d.add_arc(tail(x), head(x)).expect("in range");
        origins.push(VertexOrigin::Tail { g_vertex: x });
        origins.push(VertexOrigin::Head { g_vertex: x });
    }
    for (x, y) in sorted_edges(g) {
        d.add_arc(head(x), tail(y)).expect("in range");
        d.add_arc(head(y), tail(x)).expect("in range");
    }

    let big = 4 * p as u64 + 1;
    let mut costs = CostMatrix::zero(2 * p, 3);
    for x in 0..p {
        costs.set(tail(x), 0, Cost::Finite(0));
        costs.set(tail(x), 1, Cost::Finite(big));
        costs.set(tail(x), 2, Cost::Finite(2));
        costs.set(head(x), 0, Cost::Finite(big));
        costs.set(head(x), 1, Cost::Finite(3));
        costs.set(head(x), 2, Cost::Finite(2));
    }

    Ok(ReductionInstance {
        kind: ReductionKind::RPrime { loop_at_first },
        h,
        d,
        costs,
        origins,
    })
}

/// Instance over the 3-color target with arcs 01, 10, 12, 20 and a loop at
/// 2. The input keeps the graph vertices (arcless among themselves) and
/// attaches, per edge `{u, v}` with `u < v`, a fresh six-cycle with two
/// connector chains into `u` and `v`. The optimum equals `p - alpha(G)`.
pub fn reduce_mis_gadget(g: &Graph) -> Result<ReductionInstance, ReductionError> {
    require_simple(g)?;
    let p = g.n();
    let edges = sorted_edges(g);

    let h = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 0), (2, 2)])
        .expect("target in range");

    let n_d = p + 8 * edges.len();
    let mut d = Digraph::new(n_d);
    let mut origins: Vec<VertexOrigin> =
        (0..p).map(|v| VertexOrigin::Original { g_vertex: v }).collect();
    let mut costs = CostMatrix::zero(n_d, 3);
    let big = Cost::Finite(p as u64 + 1);

    for v in 0..p {
        costs.set(v, 0, Cost::Finite(1));
        costs.set(v, 1, Cost::Finite(0));
        costs.set(v, 2, big);
    }

    for (e, &(u, v)) in edges.iter().enumerate() {
        let base = p + 8 * e;
        let x = |j: usize| base + j - 1; // x_1..x_6
        let u_port = base + 6;
        let v_port = base + 7;
        for j in 1..=6 {
            origins.push(VertexOrigin::Cycle { edge: e, index: j });
        }
        origins.push(VertexOrigin::Port { edge: e, g_vertex: u });
        origins.push(VertexOrigin::Port { edge: e, g_vertex: v });

        for j in 1..=6 {
            let next = if j == 6 { x(1) } else { x(j + 1) };
            d.add_arc(x(j), next).expect("in range");
        }
        d.add_arc(x(4), u_port).expect("in range");
        d.add_arc(u_port, u).expect("in range");
        d.add_arc(x(5), v_port).expect("in range");
        d.add_arc(v_port, v).expect("in range");

        costs.set(x(1), 1, big);
        costs.set(x(1), 2, big);
        costs.set(x(4), 2, big);
        costs.set(x(5), 2, big);
        // all other gadget entries stay zero
    }

    Ok(ReductionInstance {
        kind: ReductionKind::Gadget,
        h,
        d,
        costs,
        origins,
    })
}

/// Reads the independent set off an optimal homomorphism: tails colored 0
/// for the two-layer reduction, originals colored 1 for the gadget
/// reduction.
pub fn extract_independent_set(instance: &ReductionInstance, f: &Homomorphism) -> Vec<usize> {
    let mut set = Vec::new();
    for (v, origin) in instance.origins.iter().enumerate() {
        match (instance.kind, origin) {
            (ReductionKind::RPrime { .. }, VertexOrigin::Tail { g_vertex }) if f.map[v] == 0 => {
                set.push(*g_vertex);
            }
            (ReductionKind::Gadget, VertexOrigin::Original { g_vertex }) if f.map[v] == 1 => {
                set.push(*g_vertex);
            }
            _ => {}
        }
    }
    set
}

/// Maximum independent set size cap for the exact search.
pub const MIS_VERTEX_CAP: usize = 24;

/// Exact independence number with a witness set, by branch and bound on the
/// lowest-index undecided vertex.
pub fn mis_bruteforce(g: &Graph) -> Result<(usize, Vec<usize>), ReductionError> {
    require_simple(g)?;
    let n = g.n();
    if n > MIS_VERTEX_CAP {
        return Err(ReductionError::BudgetExceeded {
            cap: MIS_VERTEX_CAP,
            got: n,
        });
    }

    fn branch(
        g: &Graph,
        next: usize,
        excluded: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        let n = g.n();
        let free_left = (next..n).filter(|&v| !excluded[v]).count();
        if chosen.len() + free_left <= best.len() {
            return;
        }
        let v = match (next..n).find(|&v| !excluded[v]) {
            Some(v) => v,
            None => {
                if chosen.len() > best.len() {
                    *best = chosen.clone();
                }
                return;
            }
        };
        // include v
        let newly: Vec<usize> = g
            .neighbors(v)
            .filter(|&w| w > v && !excluded[w])
            .collect();
        for &w in &newly {
            excluded[w] = true;
        }
        chosen.push(v);
        branch(g, v + 1, excluded, chosen, best);
        chosen.pop();
        for &w in &newly {
            excluded[w] = false;
        }
        // exclude v
        excluded[v] = true;
        branch(g, v + 1, excluded, chosen, best);
        excluded[v] = false;
    }

    let mut excluded = vec![false; n];
    let mut chosen = Vec::new();
    let mut best = Vec::new();
    branch(g, 0, &mut excluded, &mut chosen, &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

/// True iff `set` is pairwise non-adjacent in `g`.
pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set.iter().skip(i + 1).all(|&v| !g.has_edge(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify_wpl, Classification};
    use crate::solver::solve_bruteforce;

    const BUDGET: u64 = 1 << 26;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn rprime_structure_on_k2() {
        let g = graph(2, &[(0, 1)]);
        let inst = reduce_mis_rprime(&g, false).unwrap();
        assert_eq!(inst.d.n(), 4);
        assert_eq!(inst.d.arc_count(), 4);
        assert!(inst.d.has_arc(0, 1) && inst.d.has_arc(2, 3));
        assert!(inst.d.has_arc(1, 2) && inst.d.has_arc(3, 0));
    }

    #[test]
    fn rprime_single_vertex() {
        let g = graph(1, &[]);
        let inst = reduce_mis_rprime(&g, false).unwrap();
        assert_eq!(inst.d.n(), 2);
        assert_eq!(inst.d.arc_count(), 1);
        // alpha = 1, so the optimum is 4*1 - 1 = 3
        let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(opt.cost, 3);
    }

    #[test]
    fn rprime_cost_identity_on_k2() {
        let g = graph(2, &[(0, 1)]);
        for loop_at_first in [false, true] {
            let inst = reduce_mis_rprime(&g, loop_at_first).unwrap();
            let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, BUDGET)
                .unwrap()
                .unwrap();
            assert_eq!(opt.cost, 7, "4p - alpha = 8 - 1");
            let set = extract_independent_set(&inst, &opt);
            assert_eq!(set.len(), 1);
            assert!(is_independent(&g, &set));
        }
    }

    #[test]
    fn rprime_extraction_on_edgeless_pair() {
        let g = graph(2, &[]);
        let inst = reduce_mis_rprime(&g, false).unwrap();
        let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(opt.cost, 4 * 2 - 2);
        let set = extract_independent_set(&inst, &opt);
        assert_eq!(set, vec![0, 1]);
    }

    #[test]
    fn gadget_structure_and_costs() {
        let g = graph(2, &[(0, 1)]);
        let inst = reduce_mis_gadget(&g).unwrap();
        assert_eq!(inst.d.n(), 2 + 8);
        // six-cycle plus two connector chains
        assert_eq!(inst.d.arc_count(), 6 + 4);
        let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(opt.cost, 1, "p - alpha = 2 - 1");
        let set = extract_independent_set(&inst, &opt);
        assert_eq!(set.len(), 1);
        assert!(is_independent(&g, &set));
    }

    #[test]
    fn gadget_triangle() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let inst = reduce_mis_gadget(&g).unwrap();
        assert_eq!(inst.d.n(), 3 + 24);
        let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(opt.cost, 2, "p - alpha = 3 - 1");
    }

    #[test]
    fn mis_bruteforce_cases() {
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(mis_bruteforce(&k3).unwrap().0, 1);

        let edgeless = graph(5, &[]);
        let (alpha, set) = mis_bruteforce(&edgeless).unwrap();
        assert_eq!(alpha, 5);
        assert_eq!(set, vec![0, 1, 2, 3, 4]);

        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(mis_bruteforce(&c5).unwrap().0, 2);

        let big = Graph::new(30);
        assert!(mis_bruteforce(&big).is_err());
    }

    #[test]
    fn targets_are_np_hard() {
        let g = graph(2, &[(0, 1)]);
        for inst in [
            reduce_mis_rprime(&g, false).unwrap(),
            reduce_mis_rprime(&g, true).unwrap(),
            reduce_mis_gadget(&g).unwrap(),
        ] {
            match classify_wpl(&inst.h).unwrap() {
                Classification::NpHard { witness } => witness.verify(&inst.h).unwrap(),
                other => panic!("target should be NP-hard, got {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut looped = Graph::new(2);
        looped.add_edge(0, 0).unwrap();
        assert!(matches!(
            reduce_mis_rprime(&looped, false),
            Err(ReductionError::NotSimple(0))
        ));
        assert!(matches!(reduce_mis_gadget(&looped), Err(ReductionError::NotSimple(0))));
    }
}
