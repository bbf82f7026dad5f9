//! Exact minimum cost homomorphism solvers.
//!
//! Three routes, used to cross-check one another:
//!
//! * `solve_minmax` reduces an instance over a target with a verified
//!   Min-Max ordering and interval out-slices to a minimum s-t cut of a
//!   threshold network and solves it with an exact integral max-flow.
//! * `solve_cycle` handles directed-cycle targets by propagating labels
//!   along arcs and choosing the cheapest rotation per weak component.
//! * `solve_bruteforce` is the independent oracle: depth-first assignment
//!   with arc consistency and cost-bound pruning, exhaustive hence exact.
//!
//! `solve` classifies the target and dispatches.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::classifier::{classify_wpl, Classification, ClassifyError, HardnessWitness};
use crate::digraph::Digraph;
use crate::maxflow::Dinic;
use crate::ordering::{check_minmax, slices_are_intervals, VertexOrdering};

/// Surrogate capacity for unbounded arcs; far above any reachable flow.
const INF_CAP: u128 = 1 << 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("cost matrix is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    DimensionMismatch {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A nonnegative integer cost or the infinite sentinel (forbidden color).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }
}

/// Per-vertex, per-color assignment costs: row `u` of the matrix holds the
/// cost of giving vertex `u` of the input digraph each color of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cost>,
}

impl CostMatrix {
    pub fn from_rows(rows: Vec<Vec<Cost>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged cost matrix");
        CostMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Cost>) -> Self {
        assert_eq!(data.len(), rows * cols);
        CostMatrix { rows, cols, data }
    }

    /// All-zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        CostMatrix {
            rows,
            cols,
            data: vec![Cost::Finite(0); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, u: usize, color: usize) -> Cost {
        self.data[u * self.cols + color]
    }

    pub fn set(&mut self, u: usize, color: usize, cost: Cost) {
        self.data[u * self.cols + color] = cost;
    }

    fn check_dims(&self, d: &Digraph, h_colors: usize) -> Result<(), SolverError> {
        if self.rows != d.n() || self.cols != h_colors {
            return Err(SolverError::DimensionMismatch {
                got_rows: self.rows,
                got_cols: self.cols,
                want_rows: d.n(),
                want_cols: h_colors,
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CostFile {
    costs: Vec<Vec<Option<u64>>>,
}

impl Serialize for CostMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let costs = (0..self.rows)
            .map(|u| (0..self.cols).map(|i| self.get(u, i).finite()).collect())
            .collect();
        CostFile { costs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CostMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = CostFile::deserialize(deserializer)?;
        let rows = file.costs.len();
        let cols = file.costs.first().map_or(0, |r| r.len());
        if file.costs.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("cost rows must all have the same length"));
        }
        let data = file
            .costs
            .into_iter()
            .flatten()
            .map(|c| c.map_or(Cost::Infinite, Cost::Finite))
            .collect();
        Ok(CostMatrix { rows, cols, data })
    }
}

/// A total arc-preserving map from the input digraph into the target, with
/// its (finite) total cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub map: Vec<usize>,
    pub cost: u64,
}

/// Checks that `map` preserves every arc of `d`; returns the least violated
/// arc otherwise. `map` must be total on the vertices of `d` with values in
/// the target's range.
pub fn verify_hom(d: &Digraph, h: &Digraph, map: &[usize]) -> Option<(usize, usize)> {
    assert_eq!(map.len(), d.n(), "map must be total");
    assert!(map.iter().all(|&c| c < h.n()), "map values must be target vertices");
    d.arcs().find(|&(u, v)| !h.has_arc(map[u], map[v]))
}

fn total_cost(costs: &CostMatrix, map: &[usize]) -> Option<u128> {
    let mut sum: u128 = 0;
    for (u, &c) in map.iter().enumerate() {
        sum += costs.get(u, c).finite()? as u128;
    }
    Some(sum)
}

fn cost_to_u64(c: u128) -> Result<u64, SolverError> {
    u64::try_from(c).map_err(|_| SolverError::Internal("optimal cost exceeds u64".into()))
}

/// Capacity of a network arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(u128),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetArc {
    pub from: usize,
    pub to: usize,
    pub cap: Capacity,
}

/// The threshold network of an instance: one capacitated chain per input
/// vertex whose cut position encodes the assigned color, plus unbounded
/// arcs forcing, for every input arc `(u, v)`, the color of `v` into the
/// out-slice of the color of `u`.
///
/// Colors are ordering positions `1..=p`. Node `u^i` exists for
/// `2 <= i <= p`; `u^1` is the source and `u^{p+1}` the sink.
#[derive(Debug, Clone)]
pub struct ThresholdNetwork {
    n_d: usize,
    p: usize,
    arcs: Vec<NetArc>,
    qplus: Vec<Option<usize>>,
    rplus: Vec<Option<usize>>,
    big_m: u128,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl ThresholdNetwork {
    pub fn node_count(&self) -> usize {
        2 + self.n_d * self.p.saturating_sub(1)
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    /// Least position of color `i`'s out-slice (`i` is 1-based), if nonempty.
    pub fn qplus(&self, i: usize) -> Option<usize> {
        self.qplus[i - 1]
    }

    /// Greatest position of color `i`'s out-slice, if nonempty.
    pub fn rplus(&self, i: usize) -> Option<usize> {
        self.rplus[i - 1]
    }

    /// Infeasibility threshold: any cut of at least this value corresponds
    /// to no homomorphism.
    pub fn big_m(&self) -> u128 {
        self.big_m
    }

    /// Node id of `u^i` for `1 <= i <= p+1`; `u^1` is the source, `u^{p+1}`
    /// the sink.
    pub fn node_id(&self, u: usize, i: usize) -> usize {
        debug_assert!((1..=self.p + 1).contains(&i));
        if i == 1 {
            SOURCE
        } else if i == self.p + 1 {
            SINK
        } else {
            2 + u * (self.p - 1) + (i - 2)
        }
    }

    /// Cut value induced by a color assignment (colors `1..=p` per input
    /// vertex): the source side holds `u^i` for `i <= assignment[u]`.
    /// Returns `None` when an unbounded arc crosses the cut.
    pub fn induced_cut_value(&self, assignment: &[usize]) -> Option<u128> {
        assert_eq!(assignment.len(), self.n_d);
        let in_source_side = |node: usize| -> bool {
            if node == SOURCE {
                return true;
            }
            if node == SINK {
                return false;
            }
            let u = (node - 2) / (self.p - 1);
            let i = (node - 2) % (self.p - 1) + 2;
            i <= assignment[u]
        };
        let mut total: u128 = 0;
        for arc in &self.arcs {
            if in_source_side(arc.from) && !in_source_side(arc.to) {
                match arc.cap {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return None,
                }
            }
        }
        Some(total)
    }
}

/// Builds the threshold network for `(h, ord, d, costs)`.
///
/// Chain arc `u^i -> u^{i+1}` carries the cost of assigning `u` the color at
/// position `i`, replaced by an unbounded capacity when `u` has out-arcs but
/// color `i` has an empty out-slice. Unbounded reverse arcs make the source
/// side of any finite cut a prefix of each chain. For every input arc
/// `(u, v)` and color `i` with a nonempty out-slice `[q, r]`, the arcs
/// `u^i -> v^q` and `v^{r+1} -> u^{i+1}` pin the color of `v` inside the
/// slice. Requires a Min-Max ordering with interval out-slices.
pub fn build_network(
    h: &Digraph,
    ord: &VertexOrdering,
    d: &Digraph,
    costs: &CostMatrix,
) -> Result<ThresholdNetwork, SolverError> {
    costs.check_dims(d, h.n())?;
    if ord.len() != h.n() {
        return Err(SolverError::PreconditionViolated(
            "ordering does not cover the target".into(),
        ));
    }
    if let Some(v) = check_minmax(h, ord) {
        return Err(SolverError::PreconditionViolated(format!(
            "ordering is not Min-Max: {v:?}"
        )));
    }
    if !slices_are_intervals(h, ord) {
        return Err(SolverError::PreconditionViolated(
            "ordering has a non-interval out-slice".into(),
        ));
    }

    let p = h.n();
    let n_d = d.n();
    let pos = ord.positions();

    // out-slice bounds per color, 1-based positions
    let mut qplus = vec![None; p];
    let mut rplus = vec![None; p];
    for i in 1..=p {
        let a = ord.vertex(i - 1);
        let slice: Vec<usize> = h.out_neighbors(a).map(|b| pos[b] + 1).collect();
        if let (Some(&lo), Some(&hi)) = (slice.iter().min(), slice.iter().max()) {
            qplus[i - 1] = Some(lo);
            rplus[i - 1] = Some(hi);
        }
    }
    // the Min-Max property makes both tables nondecreasing over nonempty
    // slices; a violation here would be a defect upstream
    for table in [&qplus, &rplus] {
        let occupied: Vec<usize> = table.iter().flatten().copied().collect();
        if occupied.windows(2).any(|w| w[0] > w[1]) {
            return Err(SolverError::Internal(
                "slice bound tables are not monotone".into(),
            ));
        }
    }

    let mut net = ThresholdNetwork {
        n_d,
        p,
        arcs: Vec::new(),
        qplus,
        rplus,
        big_m: 0,
    };

    // effective chain costs and the infeasibility threshold
    let mut big_m: u128 = 1;
    let mut chain_cost = vec![Cost::Infinite; n_d * p];
    for u in 0..n_d {
        let mut vertex_max: u128 = 0;
        for i in 1..=p {
            let c = if net.qplus[i - 1].is_none() && d.out_degree(u) > 0 {
                Cost::Infinite
            } else {
                costs.get(u, ord.vertex(i - 1))
            };
            chain_cost[u * p + i - 1] = c;
            if let Cost::Finite(f) = c {
                vertex_max = vertex_max.max(f as u128);
            }
        }
        big_m += vertex_max;
    }
    net.big_m = big_m;

    for u in 0..n_d {
        for i in 1..=p {
            let cap = match chain_cost[u * p + i - 1] {
                Cost::Finite(f) => Capacity::Finite(f as u128),
                Cost::Infinite => Capacity::Infinite,
            };
            net.arcs.push(NetArc {
                from: net.node_id(u, i),
                to: net.node_id(u, i + 1),
                cap,
            });
        }
        for i in 1..p {
            net.arcs.push(NetArc {
                from: net.node_id(u, i + 1),
                to: net.node_id(u, i),
                cap: Capacity::Infinite,
            });
        }
    }

    for (u, v) in d.arcs() {
        for i in 1..=p {
            let (q, r) = match (net.qplus[i - 1], net.rplus[i - 1]) {
                (Some(q), Some(r)) => (q, r),
                _ => continue,
            };
            if q != 1 {
                net.arcs.push(NetArc {
                    from: net.node_id(u, i),
                    to: net.node_id(v, q),
                    cap: Capacity::Infinite,
                });
            }
            if r < p {
                net.arcs.push(NetArc {
                    from: net.node_id(v, r + 1),
                    to: net.node_id(u, i + 1),
                    cap: Capacity::Infinite,
                });
            }
        }
    }
    Ok(net)
}

/// Exact minimum over homomorphisms by minimum cut of the threshold
/// network. Requires `check_minmax` to pass and out-slices to be intervals;
/// both are re-checked. Returns `None` when no homomorphism of finite cost
/// exists.
pub fn solve_minmax(
    h: &Digraph,
    ord: &VertexOrdering,
    d: &Digraph,
    costs: &CostMatrix,
) -> Result<Option<Homomorphism>, SolverError> {
    let net = build_network(h, ord, d, costs)?;
    let mut flow = Dinic::new(net.node_count());
    for arc in net.arcs() {
        let cap = match arc.cap {
            Capacity::Finite(c) => c,
            Capacity::Infinite => INF_CAP,
        };
        flow.add_edge(arc.from, arc.to, cap);
    }
    let value = flow.max_flow_capped(SOURCE, SINK, net.big_m());
    if value >= net.big_m() {
        return Ok(None);
    }
    let reach = flow.residual_reachable(SOURCE);
    let p = h.n();
    let mut map = Vec::with_capacity(d.n());
    for u in 0..d.n() {
        let mut color = 1;
        for i in 2..=p {
            if reach[net.node_id(u, i)] {
                color = color.max(i);
            }
        }
        map.push(ord.vertex(color - 1));
    }
    if let Some((u, v)) = verify_hom(d, h, &map) {
        return Err(SolverError::Internal(format!(
            "recovered map violates arc ({u}, {v})"
        )));
    }
    let cost = total_cost(costs, &map)
        .ok_or_else(|| SolverError::Internal("recovered map has infinite cost".into()))?;
    if cost != value {
        return Err(SolverError::Internal(format!(
            "cut value {value} disagrees with recomputed cost {cost}"
        )));
    }
    Ok(Some(Homomorphism {
        map,
        cost: cost_to_u64(cost)?,
    }))
}

/// Exact solver for directed-cycle targets with colors `0..k` and arcs
/// `i -> i+1 (mod k)`. Labels propagate along arcs within each weak
/// component; each component independently takes its cheapest rotation.
/// Any conflict, including a loop in the input, means no homomorphism.
pub fn solve_cycle(
    k: usize,
    d: &Digraph,
    costs: &CostMatrix,
) -> Result<Option<Homomorphism>, SolverError> {
    if k < 2 {
        return Err(SolverError::PreconditionViolated(
            "cycle targets need at least two colors".into(),
        ));
    }
    costs.check_dims(d, k)?;
    let n = d.n();
    let mut label = vec![usize::MAX; n];
    let mut map = vec![0usize; n];
    let mut total: u128 = 0;

    for comp in d.weak_components() {
        let seed = comp[0];
        label[seed] = 0;
        let mut queue = std::collections::VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            let lu = label[u];
            for v in d.out_neighbors(u) {
                let expected = (lu + 1) % k;
                if label[v] == usize::MAX {
                    label[v] = expected;
                    queue.push_back(v);
                } else if label[v] != expected {
                    return Ok(None);
                }
            }
            for v in d.in_neighbors(u) {
                let expected = (lu + k - 1) % k;
                if label[v] == usize::MAX {
                    label[v] = expected;
                    queue.push_back(v);
                } else if label[v] != expected {
                    return Ok(None);
                }
            }
        }
        // cheapest rotation for this component
        let mut best: Option<(u128, usize)> = None;
        for r in 0..k {
            let mut sum: u128 = 0;
            let mut ok = true;
            for &u in &comp {
                match costs.get(u, (label[u] + r) % k) {
                    Cost::Finite(c) => sum += c as u128,
                    Cost::Infinite => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && best.is_none_or(|(b, _)| sum < b) {
                best = Some((sum, r));
            }
        }
        let (sum, r) = match best {
            Some(b) => b,
            None => return Ok(None),
        };
        total += sum;
        for &u in &comp {
            map[u] = (label[u] + r) % k;
        }
    }

    let ck = Digraph::directed_cycle(k);
    if verify_hom(d, &ck, &map).is_some() {
        return Err(SolverError::Internal("cycle labeling violates an arc".into()));
    }
    Ok(Some(Homomorphism {
        map,
        cost: cost_to_u64(total)?,
    }))
}

/// Exhaustive exact solver: depth-first assignment in vertex order with arc
/// consistency against assigned neighbors and cost-bound pruning. The
/// independent oracle for every other solver. Aborts with `BudgetExceeded`
/// after `node_budget` attempted assignments.
pub fn solve_bruteforce(
    h: &Digraph,
    d: &Digraph,
    costs: &CostMatrix,
    node_budget: u64,
) -> Result<Option<Homomorphism>, SolverError> {
    costs.check_dims(d, h.n())?;
    let n = d.n();
    let p = h.n();

    // colors per vertex in ascending cost order; infinite colors dropped
    let mut candidates: Vec<Vec<(u64, usize)>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut row: Vec<(u64, usize)> = (0..p)
            .filter_map(|c| costs.get(u, c).finite().map(|f| (f, c)))
            .collect();
        row.sort_unstable();
        if row.is_empty() {
            return Ok(None);
        }
        candidates.push(row);
    }
    // admissible lower bound on the cost of completing from vertex `k` on
    let mut suffix_min = vec![0u128; n + 1];
    for u in (0..n).rev() {
        suffix_min[u] = suffix_min[u + 1] + candidates[u][0].0 as u128;
    }
    // arcs toward already-assigned vertices, precomputed per vertex
    let mut earlier_out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut earlier_in: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut has_loop = vec![false; n];
    for (u, v) in d.arcs() {
        if u == v {
            has_loop[u] = true;
        } else if v < u {
            earlier_out[u].push(v);
        } else {
            earlier_in[v].push(u);
        }
    }

    struct Search<'a> {
        h: &'a Digraph,
        candidates: &'a [Vec<(u64, usize)>],
        suffix_min: &'a [u128],
        earlier_out: &'a [Vec<usize>],
        earlier_in: &'a [Vec<usize>],
        has_loop: &'a [bool],
        assignment: Vec<usize>,
        best: Option<(u128, Vec<usize>)>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn dfs(&mut self, depth: usize, partial: u128) -> Result<(), SolverError> {
            if let Some((best, _)) = &self.best {
                if partial + self.suffix_min[depth] >= *best {
                    return Ok(());
                }
            }
            if depth == self.assignment.len() {
                self.best = Some((partial, self.assignment.clone()));
                return Ok(());
            }
            for &(cost, color) in &self.candidates[depth] {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(SolverError::BudgetExceeded { budget: self.budget });
                }
                if self.has_loop[depth] && !self.h.has_arc(color, color) {
                    continue;
                }
                if self.earlier_out[depth]
                    .iter()
                    .any(|&w| !self.h.has_arc(color, self.assignment[w]))
                {
                    continue;
                }
                if self.earlier_in[depth]
                    .iter()
                    .any(|&w| !self.h.has_arc(self.assignment[w], color))
                {
                    continue;
                }
                self.assignment[depth] = color;
                self.dfs(depth + 1, partial + cost as u128)?;
            }
            Ok(())
        }
    }

    let mut search = Search {
        h,
        candidates: &candidates,
        suffix_min: &suffix_min,
        earlier_out: &earlier_out,
        earlier_in: &earlier_in,
        has_loop: &has_loop,
        assignment: vec![0; n],
        best: None,
        nodes: 0,
        budget: node_budget,
    };
    search.dfs(0, 0)?;
    match search.best {
        Some((cost, map)) => Ok(Some(Homomorphism {
            map,
            cost: cost_to_u64(cost)?,
        })),
        None => Ok(None),
    }
}

/// Outcome of the dispatching solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Optimal(Homomorphism),
    Infeasible,
    /// The target is NP-hard; the witness certifies it. The caller may still
    /// run the brute-force oracle explicitly.
    NotPolynomial(HardnessWitness),
}

/// Classifies the target and solves the instance along the polynomial route
/// it prescribes.
pub fn solve(h: &Digraph, d: &Digraph, costs: &CostMatrix) -> Result<SolveOutcome, SolverError> {
    match classify_wpl(h)? {
        Classification::PolynomialCycle { k } => {
            // relabel the target cycle to the canonical 0 -> 1 -> ... -> k-1
            let mut sigma = vec![0usize];
            for _ in 1..k {
                let prev = *sigma.last().expect("nonempty");
                let next = h
                    .out_neighbors(prev)
                    .next()
                    .ok_or_else(|| SolverError::Internal("cycle vertex without out-arc".into()))?;
                sigma.push(next);
            }
            let mut canonical = CostMatrix::zero(d.n(), k);
            for u in 0..d.n() {
                for (j, &hv) in sigma.iter().enumerate() {
                    canonical.set(u, j, costs.get(u, hv));
                }
            }
            match solve_cycle(k, d, &canonical)? {
                Some(hom) => {
                    let map: Vec<usize> = hom.map.iter().map(|&j| sigma[j]).collect();
                    if verify_hom(d, h, &map).is_some() {
                        return Err(SolverError::Internal(
                            "relabeled cycle map violates an arc".into(),
                        ));
                    }
                    Ok(SolveOutcome::Optimal(Homomorphism { map, cost: hom.cost }))
                }
                None => Ok(SolveOutcome::Infeasible),
            }
        }
        Classification::PolynomialMinMax { ordering } => {
            match solve_minmax(h, &ordering, d, costs)? {
                Some(hom) => Ok(SolveOutcome::Optimal(hom)),
                None => Ok(SolveOutcome::Infeasible),
            }
        }
        Classification::NpHard { witness } => Ok(SolveOutcome::NotPolynomial(witness)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_costs, random_digraph};
    use proptest::prelude::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    fn fin(rows: &[&[u64]]) -> CostMatrix {
        CostMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| Cost::Finite(c)).collect())
                .collect(),
        )
    }

    fn ident(n: usize) -> VertexOrdering {
        VertexOrdering::new((0..n).collect()).unwrap()
    }

    #[test]
    fn verify_hom_cases() {
        let tt2 = Digraph::transitive_tournament(2);
        let arc = digraph(2, &[(0, 1)]);
        assert_eq!(verify_hom(&arc, &tt2, &[0, 1]), None);
        assert_eq!(verify_hom(&arc, &tt2, &[1, 0]), Some((0, 1)));

        let looped = digraph(1, &[(0, 0)]);
        assert_eq!(verify_hom(&looped, &tt2, &[0]), Some((0, 0)));
    }

    #[test]
    fn network_tables_tt3() {
        let tt3 = Digraph::transitive_tournament(3);
        let d = digraph(2, &[(0, 1)]);
        let costs = fin(&[&[1, 2, 3], &[4, 5, 6]]);
        let net = build_network(&tt3, &ident(3), &d, &costs).unwrap();
        assert_eq!(net.qplus(1), Some(2));
        assert_eq!(net.qplus(2), Some(3));
        assert_eq!(net.qplus(3), None);
        assert_eq!(net.rplus(1), Some(3));
        assert_eq!(net.rplus(2), Some(3));
        assert_eq!(net.rplus(3), None);
        // vertex 0 has out-degree 1, so color 3 is blocked on its chain
        let blocked = net
            .arcs()
            .iter()
            .find(|a| a.from == net.node_id(0, 3) && a.to == net.node_id(0, 4))
            .unwrap();
        assert_eq!(blocked.cap, Capacity::Infinite);
        // vertex 1 has no out-arcs: its color-3 chain arc keeps its cost
        let kept = net
            .arcs()
            .iter()
            .find(|a| a.from == net.node_id(1, 3) && a.to == net.node_id(1, 4))
            .unwrap();
        assert_eq!(kept.cap, Capacity::Finite(6));
    }

    #[test]
    fn network_k2_has_no_slice_arcs() {
        let k2 = Digraph::reflexive_complete(2);
        let d = digraph(2, &[(0, 1)]);
        let costs = fin(&[&[0, 0], &[0, 0]]);
        let net = build_network(&k2, &ident(2), &d, &costs).unwrap();
        assert_eq!(net.qplus(1), Some(1));
        assert_eq!(net.rplus(1), Some(2));
        // full slices impose nothing: two chain arcs and one reverse arc
        // per vertex remain
        assert_eq!(net.arcs().len(), 6);
    }

    #[test]
    fn network_single_color() {
        let k1 = Digraph::reflexive_complete(1);
        let d = digraph(3, &[(0, 1), (1, 2)]);
        let costs = fin(&[&[5], &[7], &[9]]);
        let net = build_network(&k1, &ident(1), &d, &costs).unwrap();
        assert_eq!(net.node_count(), 2);
        let hom = solve_minmax(&k1, &ident(1), &d, &costs).unwrap().unwrap();
        assert_eq!(hom.cost, 21);
    }

    #[test]
    fn solve_minmax_tt2_example() {
        let tt2 = Digraph::transitive_tournament(2);
        let d = digraph(2, &[(0, 1)]);
        let costs = fin(&[&[5, 1], &[1, 3]]);
        let hom = solve_minmax(&tt2, &ident(2), &d, &costs).unwrap().unwrap();
        assert_eq!(hom.cost, 8);
        assert_eq!(hom.map, vec![0, 1]);
    }

    #[test]
    fn solve_minmax_k2_free_choice() {
        let k2 = Digraph::reflexive_complete(2);
        let d = digraph(2, &[(0, 1)]);
        let costs = fin(&[&[0, 5], &[5, 0]]);
        let hom = solve_minmax(&k2, &ident(2), &d, &costs).unwrap().unwrap();
        assert_eq!(hom.cost, 0);
        assert_eq!(hom.map, vec![0, 1]);
    }

    #[test]
    fn solve_minmax_infeasible() {
        let tt2 = Digraph::transitive_tournament(2);
        let looped = digraph(1, &[(0, 0)]);
        let costs = fin(&[&[1, 1]]);
        assert_eq!(solve_minmax(&tt2, &ident(2), &looped, &costs).unwrap(), None);
    }

    #[test]
    fn solve_minmax_rejects_bad_preconditions() {
        let r = digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 2), (0, 0), (1, 1), (2, 2)]);
        let d = digraph(1, &[]);
        let costs = fin(&[&[0, 0, 0]]);
        assert!(matches!(
            solve_minmax(&r, &ident(3), &d, &costs),
            Err(SolverError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn solve_cycle_cases() {
        // isolated vertex picks its cheapest color by rotation
        let single = Digraph::new(1);
        let hom = solve_cycle(3, &single, &fin(&[&[4, 1, 7]])).unwrap().unwrap();
        assert_eq!(hom.cost, 1);

        // a directed triangle has no parity-consistent 2-coloring
        let c3 = Digraph::directed_cycle(3);
        assert_eq!(solve_cycle(2, &c3, &fin(&[&[0, 0], &[0, 0], &[0, 0]])).unwrap(), None);

        // rotation moves the expensive vertex off its color
        let mut costs = CostMatrix::zero(3, 3);
        costs.set(0, 0, Cost::Finite(1));
        let hom = solve_cycle(3, &c3, &costs).unwrap().unwrap();
        assert_eq!(hom.cost, 0);

        // loops in the input are conflicts
        let looped = digraph(1, &[(0, 0)]);
        assert_eq!(solve_cycle(3, &looped, &fin(&[&[0, 0, 0]])).unwrap(), None);
    }

    #[test]
    fn bruteforce_matches_examples() {
        let tt2 = Digraph::transitive_tournament(2);
        let d = digraph(2, &[(0, 1)]);
        let costs = fin(&[&[5, 1], &[1, 3]]);
        let hom = solve_bruteforce(&tt2, &d, &costs, 1 << 20).unwrap().unwrap();
        assert_eq!(hom.cost, 8);

        // no arcs: every vertex takes its row minimum
        let free = Digraph::new(2);
        let costs = CostMatrix::from_rows(vec![
            vec![Cost::Infinite, Cost::Finite(2), Cost::Finite(9)],
            vec![Cost::Finite(4), Cost::Infinite, Cost::Finite(7)],
        ]);
        let h3 = Digraph::reflexive_complete(3);
        let hom = solve_bruteforce(&h3, &free, &costs, 1 << 20).unwrap().unwrap();
        assert_eq!(hom.cost, 6);

        let c3 = Digraph::directed_cycle(3);
        let mut costs = CostMatrix::zero(3, 3);
        costs.set(0, 0, Cost::Finite(1));
        let hom = solve_bruteforce(&c3, &c3, &costs, 1 << 20).unwrap().unwrap();
        assert_eq!(hom.cost, 0);
    }

    #[test]
    fn bruteforce_budget() {
        let k4 = Digraph::reflexive_complete(4);
        let d = random_digraph(3, 6, 0.4, 0.0);
        let costs = random_costs(4, 6, 4, 9, 0.0);
        assert!(matches!(
            solve_bruteforce(&k4, &d, &costs, 3),
            Err(SolverError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn dispatch_routes() {
        let c2 = Digraph::directed_cycle(2);
        let path = digraph(2, &[(0, 1)]);
        let out = solve(&c2, &path, &fin(&[&[1, 5], &[5, 1]])).unwrap();
        match out {
            SolveOutcome::Optimal(hom) => assert_eq!(hom.cost, 2),
            other => panic!("unexpected outcome {other:?}"),
        }

        let w = digraph(2, &[(0, 1), (1, 0), (1, 1)]);
        let out = solve(&w, &path, &fin(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(matches!(out, SolveOutcome::NotPolynomial(_)));
    }

    #[test]
    fn cut_values_match_homomorphism_costs() {
        // every feasible assignment's induced cut is finite with value equal
        // to its cost
        let mut h = Digraph::reflexive_complete(3);
        h = {
            let arcs: Vec<_> = h.arcs().filter(|&a| a != (1, 0)).collect();
            Digraph::from_arcs(3, arcs).unwrap()
        };
        let ord = crate::ordering::build_minmax_wpl(&h).unwrap();
        for seed in 0..30u64 {
            let d = random_digraph(seed, 4, 0.5, 0.3);
            let costs = random_costs(seed ^ 1, 4, 3, 9, 0.0);
            let net = build_network(&h, &ord, &d, &costs).unwrap();
            let pos = ord.positions();
            // enumerate all maps
            for code in 0..81usize {
                let mut map = Vec::new();
                let mut c = code;
                for _ in 0..4 {
                    map.push(c % 3);
                    c /= 3;
                }
                if verify_hom(&d, &h, &map).is_some() {
                    continue;
                }
                let assignment: Vec<usize> = map.iter().map(|&v| pos[v] + 1).collect();
                let cut = net.induced_cut_value(&assignment).expect("finite cut");
                let cost = total_cost(&costs, &map).unwrap();
                assert_eq!(cut, cost, "seed {seed} map {map:?}");
            }
        }
    }

    #[test]
    fn json_cost_matrix_round_trip() {
        let m = CostMatrix::from_rows(vec![
            vec![Cost::Finite(3), Cost::Infinite],
            vec![Cost::Finite(0), Cost::Finite(7)],
        ]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"costs":[[3,null],[0,7]]}"#);
        let back: CostMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CostMatrix>(r#"{"costs":[[1],[2,3]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn cycle_rotation_invariance(seed in 0u64..150, k in 2usize..4, n in 1usize..7) {
            let d = random_digraph(seed, n, 0.4, 0.0);
            let costs = random_costs(seed ^ 7, n, k, 9, 0.05);
            let base = solve_cycle(k, &d, &costs).unwrap();
            // rotate cost columns cyclically
            let mut rotated = CostMatrix::zero(n, k);
            for u in 0..n {
                for c in 0..k {
                    rotated.set(u, c, costs.get(u, (c + 1) % k));
                }
            }
            let rot = solve_cycle(k, &d, &rotated).unwrap();
            prop_assert_eq!(base.as_ref().map(|h| h.cost), rot.as_ref().map(|h| h.cost));
        }

        #[test]
        fn cost_shift_covariance(seed in 0u64..150, n in 1usize..6, delta in 1u64..50) {
            // shifting one vertex's whole row shifts the optimum by delta,
            // on all three solvers
            let h = Digraph::reflexive_complete(2);
            let ord = VertexOrdering::new(vec![0, 1]).unwrap();
            let d = random_digraph(seed, n, 0.5, 0.3);
            let costs = random_costs(seed ^ 3, n, 2, 9, 0.0);
            let vertex = (seed as usize) % n;
            let mut shifted = costs.clone();
            for c in 0..2 {
                let v = shifted.get(vertex, c).finite().unwrap() + delta;
                shifted.set(vertex, c, Cost::Finite(v));
            }
            let a = solve_minmax(&h, &ord, &d, &costs).unwrap().unwrap();
            let b = solve_minmax(&h, &ord, &d, &shifted).unwrap().unwrap();
            prop_assert_eq!(a.cost + delta, b.cost);
            let oa = solve_bruteforce(&h, &d, &costs, 1 << 24).unwrap().unwrap();
            let ob = solve_bruteforce(&h, &d, &shifted, 1 << 24).unwrap().unwrap();
            prop_assert_eq!(oa.cost + delta, ob.cost);
            prop_assert_eq!(a.cost, oa.cost);
        }
    }
}
