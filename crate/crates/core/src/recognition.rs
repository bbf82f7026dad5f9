//! Detection of the small forbidden induced subdigraphs and certified proper
//! interval recognition.
//!
//! Proper interval graphs are recognized through umbrella orderings: an
//! ordering `v_1..v_n` of a reflexive graph such that `i < j < k` and
//! `v_i v_k` an edge force `v_i v_j` and `v_j v_k` to be edges. A reflexive
//! graph admits one exactly when it is a proper interval graph, and exactly
//! when it contains no chordless cycle of length at least four, no claw, no
//! net and no tent. Both directions are certified: success returns an
//! ordering that passes `check_umbrella`, failure returns a re-verifiable
//! forbidden subgraph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::Graph;
use crate::ordering::VertexOrdering;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("graph is not reflexive: vertex {0} has no loop")]
    NotReflexive(usize),
    #[error("umbrella ordering construction failed: {0}")]
    ConstructionFailed(String),
}

/// The five small digraph patterns whose presence certifies NP-hardness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// Reflexive triple with one symmetric pair and a directed path across it:
    /// arcs 01, 12, 20, 02 plus all three loops.
    R,
    /// Directed triangle 0->1->2->0 with the symmetric arc 21 and loops at 1
    /// and 2 only.
    RPrime,
    /// Symmetric pair with a loop at exactly one endpoint: arcs 01, 10, 11.
    W,
    /// Reflexive directed triangle: arcs 01, 12, 20 plus all three loops.
    ReflexiveC3,
    /// Directed triangle of asymmetric arcs with a loop on at least one of
    /// the three vertices.
    C3WithLoop,
}

impl PatternKind {
    pub const ALL: [PatternKind; 5] = [
        PatternKind::R,
        PatternKind::RPrime,
        PatternKind::W,
        PatternKind::ReflexiveC3,
        PatternKind::C3WithLoop,
    ];

    pub fn size(self) -> usize {
        match self {
            PatternKind::W => 2,
            _ => 3,
        }
    }

    /// A concrete representative for the fixed-shape kinds. `C3WithLoop` has
    /// no single representative (the loop set varies) and is matched
    /// structurally instead.
    pub(crate) fn template(self) -> Option<Digraph> {
        let arcs: &[(usize, usize)] = match self {
            PatternKind::R => &[(0, 1), (1, 2), (2, 0), (0, 2), (0, 0), (1, 1), (2, 2)],
            PatternKind::RPrime => &[(0, 1), (1, 2), (2, 1), (2, 0), (1, 1), (2, 2)],
            PatternKind::W => &[(0, 1), (1, 0), (1, 1)],
            PatternKind::ReflexiveC3 => &[(0, 1), (1, 2), (2, 0), (0, 0), (1, 1), (2, 2)],
            PatternKind::C3WithLoop => return None,
        };
        Some(Digraph::from_arcs(self.size(), arcs.iter().copied()).expect("valid template"))
    }
}

/// A located occurrence of a [`PatternKind`] as an induced subdigraph.
/// `vertices` is ascending; for `C3WithLoop`, `loop_mask[i]` records whether
/// `vertices[i]` carries a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternHit {
    pub kind: PatternKind,
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loop_mask: Vec<bool>,
}

impl PatternHit {
    /// Re-checks this hit against the digraph it was found in.
    pub fn verify(&self, h: &Digraph) -> Result<(), String> {
        if self.vertices.iter().any(|&v| v >= h.n()) {
            return Err("pattern vertex out of range".into());
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.kind.size() || sorted != self.vertices {
            return Err("pattern vertices must be distinct and ascending".into());
        }
        match self.kind.template() {
            Some(t) => {
                let (sub, _) = h.induced(&self.vertices).map_err(|e| e.to_string())?;
                if small_isomorphic(&sub, &t) {
                    Ok(())
                } else {
                    Err(format!("{:?} does not match on {:?}", self.kind, self.vertices))
                }
            }
            None => {
                let [a, b, c] = [self.vertices[0], self.vertices[1], self.vertices[2]];
                if !is_asymmetric_triangle(h, a, b, c) {
                    return Err("vertices do not induce a directed triangle of asymmetric arcs".into());
                }
                let mask: Vec<bool> = self.vertices.iter().map(|&v| h.has_loop(v)).collect();
                if mask != self.loop_mask {
                    return Err("loop mask does not match the digraph".into());
                }
                if !mask.iter().any(|&m| m) {
                    return Err("triangle carries no loop".into());
                }
                Ok(())
            }
        }
    }
}

/// Isomorphism test for digraphs on at most 3 vertices, by permutation
/// enumeration.
pub(crate) fn small_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    if a.n() != b.n() || a.arc_count() != b.arc_count() {
        return false;
    }
    let n = a.n();
    debug_assert!(n <= 3);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.arcs().all(|(u, v)| b.has_arc(perm[u], perm[v])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// True iff `a, b, c` induce a directed triangle whose three (non-loop) arcs
/// are all asymmetric.
fn is_asymmetric_triangle(h: &Digraph, a: usize, b: usize, c: usize) -> bool {
    let verts = [a, b, c];
    for i in 0..3 {
        for j in i + 1..3 {
            if h.has_arc(verts[i], verts[j]) == h.has_arc(verts[j], verts[i]) {
                return false; // symmetric pair or non-adjacent pair
            }
        }
    }
    // each pair has exactly one arc; cyclic iff in-degrees within the triple
    // are all 1
    verts.iter().all(|&v| {
        verts
            .iter()
            .filter(|&&w| w != v && h.has_arc(w, v))
            .count()
            == 1
    })
}

/// Exhaustive search for an induced occurrence of `kind` in `h`. Returns the
/// hit on the lexicographically least vertex subset, if any.
pub fn find_pattern(h: &Digraph, kind: PatternKind) -> Option<PatternHit> {
    let n = h.n();
    match kind.size() {
        2 => {
            let t = kind.template().expect("2-vertex kinds have templates");
            for a in 0..n {
                for b in a + 1..n {
                    let (sub, _) = h.induced(&[a, b]).expect("in range");
                    if small_isomorphic(&sub, &t) {
                        return Some(PatternHit {
                            kind,
                            vertices: vec![a, b],
                            loop_mask: Vec::new(),
                        });
                    }
                }
            }
            None
        }
        _ => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let hit = match kind.template() {
                            Some(ref t) => {
                                let (sub, _) = h.induced(&[a, b, c]).expect("in range");
                                small_isomorphic(&sub, t)
                            }
                            None => {
                                is_asymmetric_triangle(h, a, b, c)
                                    && [a, b, c].iter().any(|&v| h.has_loop(v))
                            }
                        };
                        if hit {
                            let loop_mask = if kind == PatternKind::C3WithLoop {
                                vec![h.has_loop(a), h.has_loop(b), h.has_loop(c)]
                            } else {
                                Vec::new()
                            };
                            return Some(PatternHit {
                                kind,
                                vertices: vec![a, b, c],
                                loop_mask,
                            });
                        }
                    }
                }
            }
            None
        }
    }
}

/// Returns the acyclic ordering when `h` is a loopless acyclic tournament,
/// `None` otherwise. The empty digraph counts (vacuously) and yields the
/// empty ordering.
pub fn is_transitive_tournament(h: &Digraph) -> Option<VertexOrdering> {
    let n = h.n();
    for u in 0..n {
        if h.has_loop(u) {
            return None;
        }
        for v in u + 1..n {
            if h.has_arc(u, v) == h.has_arc(v, u) {
                return None;
            }
        }
    }
    // in a transitive tournament out-degrees are n-1, n-2, ..., 0
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| std::cmp::Reverse(h.out_degree(v)));
    for i in 0..n {
        for j in i + 1..n {
            if !h.has_arc(verts[i], verts[j]) {
                return None;
            }
        }
    }
    Some(VertexOrdering::new(verts).expect("permutation"))
}

/// The forbidden subgraphs of proper interval graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PigWitnessKind {
    /// Chordless cycle of length at least 4, listed in cyclic order.
    LongInducedCycle,
    /// Center followed by three pairwise non-adjacent leaves.
    Claw,
    /// Triangle `x1 x2 x3` followed by pendants `y1 y2 y3` with `y_i`
    /// adjacent to `x_i` only.
    Net,
    /// Triangle `x1 x2 x3` followed by `y1 y2 y3` with `y_i` adjacent to the
    /// two triangle vertices other than `x_i`.
    Tent,
}

/// Certificate that a graph is not a proper interval graph. Loops are
/// ignored by the shapes; vertices refer to the graph the witness was found
/// in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigWitness {
    pub kind: PigWitnessKind,
    pub vertices: Vec<usize>,
}

impl PigWitness {
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let vs = &self.vertices;
        if vs.iter().any(|&v| v >= g.n()) {
            return Err("witness vertex out of range".into());
        }
        {
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() {
                return Err("witness vertices must be distinct".into());
            }
        }
        let edge = |u: usize, v: usize| g.has_edge(u, v);
        match self.kind {
            PigWitnessKind::LongInducedCycle => {
                let k = vs.len();
                if k < 4 {
                    return Err("induced cycle must have length at least 4".into());
                }
                for i in 0..k {
                    for j in i + 1..k {
                        let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                        if edge(vs[i], vs[j]) != consecutive {
                            return Err(format!(
                                "cycle violated between {} and {}",
                                vs[i], vs[j]
                            ));
                        }
                    }
                }
                Ok(())
            }
            PigWitnessKind::Claw => {
                if vs.len() != 4 {
                    return Err("claw needs 4 vertices".into());
                }
                let (c, leaves) = (vs[0], &vs[1..]);
                for &l in leaves {
                    if !edge(c, l) {
                        return Err("claw center must touch every leaf".into());
                    }
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        if edge(leaves[i], leaves[j]) {
                            return Err("claw leaves must be pairwise non-adjacent".into());
                        }
                    }
                }
                Ok(())
            }
            PigWitnessKind::Net | PigWitnessKind::Tent => {
                if vs.len() != 6 {
                    return Err("net/tent needs 6 vertices".into());
                }
                let (x, y) = (&vs[..3], &vs[3..]);
                for i in 0..3 {
                    for j in i + 1..3 {
                        if !edge(x[i], x[j]) {
                            return Err("base triangle incomplete".into());
                        }
                        if edge(y[i], y[j]) {
                            return Err("outer vertices must be pairwise non-adjacent".into());
                        }
                    }
                }
                for (i, &yi) in y.iter().enumerate() {
                    for (j, &xj) in x.iter().enumerate() {
                        let want = match self.kind {
                            PigWitnessKind::Net => i == j,
                            _ => i != j,
                        };
                        if edge(yi, xj) != want {
                            return Err(format!(
                                "edge between {yi} and {xj} contradicts the shape"
                            ));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Exhaustively searches for a forbidden proper-interval subgraph of `g`
/// (loops ignored). Kinds are preferred in the order induced cycle, claw,
/// net, tent; within a kind, the base enumeration is lexicographic.
pub fn find_pig_witness(g: &Graph) -> Option<PigWitness> {
    find_induced_cycle(g)
        .or_else(|| find_claw(g))
        .or_else(|| find_net_or_tent(g, PigWitnessKind::Net))
        .or_else(|| find_net_or_tent(g, PigWitnessKind::Tent))
}

fn edge_nonloop(g: &Graph, u: usize, v: usize) -> bool {
    u != v && g.has_edge(u, v)
}

fn find_induced_cycle(g: &Graph) -> Option<PigWitness> {
    let n = g.n();
    // 4-cycles first, by subset enumeration: lexicographically least hit
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    let mut deg = [0usize; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if edge_nonloop(g, quad[i], quad[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    if edges == 4 && deg.iter().all(|&d| d == 2) {
                        return Some(PigWitness {
                            kind: PigWitnessKind::LongInducedCycle,
                            vertices: canonical_cycle_from_quad(g, quad),
                        });
                    }
                }
            }
        }
    }
    // longer chordless cycles: for a vertex v with non-adjacent neighbors
    // x, y, a shortest x-y path avoiding the rest of N[v] closes a hole
    for v in 0..n {
        let nb: Vec<usize> = g.neighbors(v).filter(|&w| w != v).collect();
        for (xi, &x) in nb.iter().enumerate() {
            for &y in nb.iter().skip(xi + 1) {
                if edge_nonloop(g, x, y) {
                    continue;
                }
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &w in &nb {
                    if w != x && w != y {
                        blocked[w] = true;
                    }
                }
                if let Some(path) = shortest_path(g, x, y, &blocked) {
                    // path has >= 3 vertices since x and y are non-adjacent
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(PigWitness {
                        kind: PigWitnessKind::LongInducedCycle,
                        vertices: canonical_rotation(cycle),
                    });
                }
            }
        }
    }
    None
}

/// Rotates/reflects a C4 so it starts at its least vertex and proceeds
/// toward the smaller neighbor.
fn canonical_cycle_from_quad(g: &Graph, quad: [usize; 4]) -> Vec<usize> {
    let start = quad[0]; // least, since the quad is ascending
    let nbrs: Vec<usize> = quad
        .iter()
        .copied()
        .filter(|&w| w != start && edge_nonloop(g, start, w))
        .collect();
    let second = *nbrs.iter().min().expect("cycle vertex has neighbors");
    let last = *nbrs.iter().max().expect("two neighbors");
    let third = quad
        .iter()
        .copied()
        .find(|&w| w != start && w != second && w != last)
        .expect("four vertices");
    vec![start, second, third, last]
}

fn canonical_rotation(cycle: Vec<usize>) -> Vec<usize> {
    let k = cycle.len();
    let (start, _) = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .expect("nonempty");
    let fwd: Vec<usize> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
    if fwd[1] <= bwd[1] {
        fwd
    } else {
        bwd
    }
}

fn shortest_path(g: &Graph, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    parent[from] = from;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if w != u && !blocked[w] && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn find_claw(g: &Graph) -> Option<PigWitness> {
    let n = g.n();
    for c in 0..n {
        let nb: Vec<usize> = g.neighbors(c).filter(|&w| w != c).collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if edge_nonloop(g, nb[i], nb[j]) {
                    continue;
                }
                for k in j + 1..nb.len() {
                    if !edge_nonloop(g, nb[i], nb[k]) && !edge_nonloop(g, nb[j], nb[k]) {
                        return Some(PigWitness {
                            kind: PigWitnessKind::Claw,
                            vertices: vec![c, nb[i], nb[j], nb[k]],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Nets and tents share a base triangle; enumerate triangles and extend.
fn find_net_or_tent(g: &Graph, kind: PigWitnessKind) -> Option<PigWitness> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            if !edge_nonloop(g, a, b) {
                continue;
            }
            for c in b + 1..n {
                if !edge_nonloop(g, a, c) || !edge_nonloop(g, b, c) {
                    continue;
                }
                let base = [a, b, c];
                // candidates per base position: adjacency profile toward the
                // base determines the role
                let candidates: Vec<Vec<usize>> = (0..3)
                    .map(|i| {
                        (0..n)
                            .filter(|&y| !base.contains(&y))
                            .filter(|&y| {
                                (0..3).all(|j| {
                                    let want = match kind {
                                        PigWitnessKind::Net => i == j,
                                        _ => i != j,
                                    };
                                    edge_nonloop(g, y, base[j]) == want
                                })
                            })
                            .collect()
                    })
                    .collect();
                for &y1 in &candidates[0] {
                    for &y2 in &candidates[1] {
                        if y2 == y1 || edge_nonloop(g, y1, y2) {
                            continue;
                        }
                        for &y3 in &candidates[2] {
                            if y3 == y1
                                || y3 == y2
                                || edge_nonloop(g, y1, y3)
                                || edge_nonloop(g, y2, y3)
                            {
                                continue;
                            }
                            return Some(PigWitness {
                                kind,
                                vertices: vec![a, b, c, y1, y2, y3],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks the umbrella condition of `ord` on `g`: for positions `i < j < k`,
/// an edge between `ord[i]` and `ord[k]` requires edges to and from `ord[j]`.
/// Returns the lexicographically least violating position triple.
pub fn check_umbrella(g: &Graph, ord: &VertexOrdering) -> Option<(usize, usize, usize)> {
    let perm = ord.as_slice();
    assert_eq!(perm.len(), g.n(), "ordering must cover the graph");
    let n = perm.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if g.has_edge(perm[i], perm[k])
                    && !(g.has_edge(perm[i], perm[j]) && g.has_edge(perm[j], perm[k]))
                {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Outcome of umbrella ordering construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UmbrellaOutcome {
    Ordering(VertexOrdering),
    Witness(PigWitness),
}

/// Builds an umbrella ordering of a reflexive graph, or returns a forbidden
/// subgraph when none exists. Components are ordered by smallest vertex and
/// kept contiguous. The construction is three LexBFS sweeps per component;
/// its output is always validated with [`check_umbrella`], with an
/// exhaustive search fallback for components of at most 9 vertices.
pub fn umbrella_ordering(g: &Graph) -> Result<UmbrellaOutcome, RecognitionError> {
    if let Some(v) = (0..g.n()).find(|&v| !g.has_selfloop(v)) {
        return Err(RecognitionError::NotReflexive(v));
    }
    let mut full = Vec::with_capacity(g.n());
    for comp in g.components() {
        let (cg, cmap) = g.induced(&comp).expect("component vertices in range");
        match component_umbrella(&cg) {
            Some(local) => full.extend(local.into_iter().map(|p| cmap[p])),
            None => {
                // not proper interval, or the sweeps failed; a witness must
                // exist in the former case
                if let Some(w) = find_pig_witness(g) {
                    return Ok(UmbrellaOutcome::Witness(w));
                }
                match exhaustive_umbrella(&cg) {
                    Some(local) => full.extend(local.into_iter().map(|p| cmap[p])),
                    None => {
                        return Err(RecognitionError::ConstructionFailed(format!(
                            "component {:?} has no witness and no ordering was found",
                            comp
                        )))
                    }
                }
            }
        }
    }
    let ord = VertexOrdering::new(full).expect("permutation");
    if check_umbrella(g, &ord).is_some() {
        return Err(RecognitionError::ConstructionFailed(
            "assembled ordering failed the umbrella check".into(),
        ));
    }
    Ok(UmbrellaOutcome::Ordering(ord))
}

/// Three-sweep LexBFS on a connected reflexive graph, validated before
/// returning.
fn component_umbrella(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let rank0: Vec<usize> = (0..n).map(|v| n - v).collect();
    let s1 = lexbfs(g, &rank0);
    let s2 = lexbfs(g, &positions(&s1));
    let s3 = lexbfs(g, &positions(&s2));
    for cand in [s3, s2] {
        let ord = VertexOrdering::new(cand.clone()).expect("permutation");
        if check_umbrella(g, &ord).is_none() {
            return Some(cand);
        }
    }
    None
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// LexBFS with ties broken toward the highest `rank`. Passing positions of a
/// previous sweep gives the LexBFS+ variant.
fn lexbfs(g: &Graph, rank: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut classes: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut order = Vec::with_capacity(n);
    while let Some(first) = classes.first_mut() {
        let (idx, _) = first
            .iter()
            .enumerate()
            .max_by_key(|&(_, &v)| rank[v])
            .expect("classes are nonempty");
        let v = first.swap_remove(idx);
        if first.is_empty() {
            classes.remove(0);
        }
        order.push(v);
        let mut next = Vec::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (mut nb, mut rest): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&w| g.has_edge(v, w));
            nb.sort_unstable();
            rest.sort_unstable();
            if !nb.is_empty() {
                next.push(nb);
            }
            if !rest.is_empty() {
                next.push(rest);
            }
        }
        classes = next;
    }
    order
}

/// Fallback: try every permutation of a small component, pruning prefixes
/// that already violate the umbrella condition.
fn exhaustive_umbrella(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n > 9 {
        return None;
    }
    fn extend(g: &Graph, prefix: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = g.n();
        if prefix.len() == n {
            return true;
        }
        'cand: for v in 0..n {
            if used[v] {
                continue;
            }
            prefix.push(v);
            let k = prefix.len() - 1;
            for i in 0..k {
                for j in i + 1..k {
                    if g.has_edge(prefix[i], prefix[k])
                        && !(g.has_edge(prefix[i], prefix[j]) && g.has_edge(prefix[j], prefix[k]))
                    {
                        prefix.pop();
                        continue 'cand;
                    }
                }
            }
            used[v] = true;
            if extend(g, prefix, used) {
                return true;
            }
            used[v] = false;
            prefix.pop();
        }
        false
    }
    let mut prefix = Vec::new();
    let mut used = vec![false; n];
    if extend(g, &mut prefix, &mut used) {
        Some(prefix)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_graph;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    fn reflexive(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        g.make_reflexive();
        g
    }

    #[test]
    fn patterns_match_their_own_templates() {
        for kind in PatternKind::ALL {
            let t = match kind.template() {
                Some(t) => t,
                None => continue, // matched structurally, covered below
            };
            let hit = find_pattern(&t, kind).unwrap_or_else(|| panic!("{kind:?} not found in itself"));
            assert_eq!(hit.vertices, (0..kind.size()).collect::<Vec<_>>());
            hit.verify(&t).unwrap();
        }
    }

    #[test]
    fn reflexive_tt3_contains_no_r() {
        let mut tt3 = Digraph::transitive_tournament(3);
        for v in 0..3 {
            tt3.add_arc(v, v).unwrap();
        }
        assert_eq!(find_pattern(&tt3, PatternKind::R), None);
    }

    #[test]
    fn c3_with_loop_detection() {
        let mut c3 = Digraph::directed_cycle(3);
        assert_eq!(find_pattern(&c3, PatternKind::C3WithLoop), None);
        c3.add_arc(1, 1).unwrap();
        let hit = find_pattern(&c3, PatternKind::C3WithLoop).unwrap();
        assert_eq!(hit.vertices, vec![0, 1, 2]);
        assert_eq!(hit.loop_mask, vec![false, true, false]);
        hit.verify(&c3).unwrap();
    }

    /// Independent isomorphism check by full permutation enumeration, used to
    /// validate `find_pattern` exhaustively on all small digraphs.
    fn contains_induced(h: &Digraph, pattern: &Digraph) -> bool {
        let n = h.n();
        let k = pattern.n();
        if k > n {
            return false;
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let (sub, _) = h.induced(&subset).unwrap();
            if small_isomorphic(&sub, pattern) {
                return true;
            }
            // next k-combination of 0..n
            let mut i = k;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if subset[i] != i + n - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn pattern_search_is_isomorphism_correct_on_all_small_digraphs() {
        // all digraphs on 3 vertices (9 possible arcs)
        for mask in 0u32..512 {
            let arcs: Vec<(usize, usize)> = (0..9)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / 3, b % 3))
                .collect();
            let h = digraph(3, &arcs);
            for kind in [PatternKind::R, PatternKind::RPrime, PatternKind::ReflexiveC3] {
                let expected = contains_induced(&h, &kind.template().unwrap());
                assert_eq!(find_pattern(&h, kind).is_some(), expected, "mask {mask} kind {kind:?}");
            }
        }
        // all digraphs on 2 vertices for W
        for mask in 0u32..16 {
            let arcs: Vec<(usize, usize)> = (0..4)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / 2, b % 2))
                .collect();
            let h = digraph(2, &arcs);
            let expected = contains_induced(&h, &PatternKind::W.template().unwrap());
            assert_eq!(find_pattern(&h, PatternKind::W).is_some(), expected, "mask {mask}");
        }
    }

    #[test]
    fn transitive_tournament_recognition() {
        let tt3 = Digraph::transitive_tournament(3);
        let ord = is_transitive_tournament(&tt3).unwrap();
        assert_eq!(ord.as_slice(), &[0, 1, 2]);

        assert!(is_transitive_tournament(&Digraph::directed_cycle(3)).is_none());
        let w = digraph(2, &[(0, 1), (1, 0), (1, 1)]);
        assert!(is_transitive_tournament(&w).is_none());
        assert!(is_transitive_tournament(&Digraph::new(0)).is_some());

        // scrambled labels
        let t = digraph(3, &[(2, 0), (2, 1), (0, 1)]);
        let ord = is_transitive_tournament(&t).unwrap();
        assert_eq!(ord.as_slice(), &[2, 0, 1]);
    }

    #[test]
    fn umbrella_on_path_and_claw_and_c4() {
        let path = reflexive(3, &[(0, 1), (1, 2)]);
        match umbrella_ordering(&path).unwrap() {
            UmbrellaOutcome::Ordering(ord) => {
                assert!(check_umbrella(&path, &ord).is_none());
            }
            other => panic!("expected ordering, got {other:?}"),
        }

        let claw = reflexive(4, &[(0, 1), (0, 2), (0, 3)]);
        match umbrella_ordering(&claw).unwrap() {
            UmbrellaOutcome::Witness(w) => {
                assert_eq!(w.kind, PigWitnessKind::Claw);
                assert_eq!(w.vertices, vec![0, 1, 2, 3]);
                w.verify(&claw).unwrap();
            }
            other => panic!("expected claw witness, got {other:?}"),
        }

        let c4 = reflexive(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        match umbrella_ordering(&c4).unwrap() {
            UmbrellaOutcome::Witness(w) => {
                assert_eq!(w.kind, PigWitnessKind::LongInducedCycle);
                assert_eq!(w.vertices, vec![0, 1, 2, 3]);
                w.verify(&c4).unwrap();
            }
            other => panic!("expected cycle witness, got {other:?}"),
        }

        let mut not_reflexive = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(umbrella_ordering(&not_reflexive).is_err());
        not_reflexive.make_reflexive();
        assert!(umbrella_ordering(&not_reflexive).is_ok());
    }

    #[test]
    fn check_umbrella_cases() {
        let path = reflexive(3, &[(0, 1), (1, 2)]);
        let good = VertexOrdering::new(vec![0, 1, 2]).unwrap();
        assert_eq!(check_umbrella(&path, &good), None);
        let bad = VertexOrdering::new(vec![0, 2, 1]).unwrap();
        assert_eq!(check_umbrella(&path, &bad), Some((0, 1, 2)));

        let single = reflexive(1, &[]);
        assert_eq!(check_umbrella(&single, &VertexOrdering::new(vec![0]).unwrap()), None);
    }

    #[test]
    fn net_and_tent_witnesses() {
        let net = reflexive(6, &[(0, 1), (1, 2), (2, 0), (3, 0), (4, 1), (5, 2)]);
        let w = find_pig_witness(&net).unwrap();
        assert_eq!(w.kind, PigWitnessKind::Net);
        w.verify(&net).unwrap();

        let tent = reflexive(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 1), (3, 2), (4, 0), (4, 2), (5, 0), (5, 1)],
        );
        let w = find_pig_witness(&tent).unwrap();
        assert_eq!(w.kind, PigWitnessKind::Tent);
        w.verify(&tent).unwrap();

        let clique = reflexive(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(find_pig_witness(&clique), None);
    }

    #[test]
    fn long_hole_is_found_and_chordless() {
        let c5 = reflexive(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let w = find_pig_witness(&c5).unwrap();
        assert_eq!(w.kind, PigWitnessKind::LongInducedCycle);
        assert_eq!(w.vertices.len(), 5);
        w.verify(&c5).unwrap();
    }

    /// Brute-force matcher used to cross-check the accelerated net/tent
    /// search.
    fn brute_has_shape(g: &Graph, kind: PigWitnessKind) -> bool {
        let n = g.n();
        if n < 6 {
            return false;
        }
        let idx: Vec<usize> = (0..n).collect();
        let mut found = false;
        // all 6-subsets, all assignments of base/outer roles
        let mut sub = [0usize; 6];
        fn rec(
            idx: &[usize],
            sub: &mut [usize; 6],
            start: usize,
            depth: usize,
            g: &Graph,
            kind: PigWitnessKind,
            found: &mut bool,
        ) {
            if *found {
                return;
            }
            if depth == 6 {
                let mut perm: Vec<usize> = sub.to_vec();
                perm.sort_unstable();
                let mut p: Vec<usize> = perm.clone();
                loop {
                    let w = PigWitness { kind, vertices: p.clone() };
                    if w.verify(g).is_ok() {
                        *found = true;
                        return;
                    }
                    if !super::next_permutation(&mut p) {
                        break;
                    }
                }
                return;
            }
            for i in start..idx.len() {
                sub[depth] = idx[i];
                rec(idx, sub, i + 1, depth + 1, g, kind, found);
            }
        }
        rec(&idx, &mut sub, 0, 0, g, kind, &mut found);
        found
    }

    #[test]
    fn net_tent_search_matches_brute_force_on_random_graphs() {
        for seed in 0..120u64 {
            let g = random_graph(seed, 7, 0.45);
            for kind in [PigWitnessKind::Net, PigWitnessKind::Tent] {
                let fast = find_net_or_tent(&g, kind).is_some();
                let brute = brute_has_shape(&g, kind);
                assert_eq!(fast, brute, "seed {seed} kind {kind:?}");
            }
        }
    }

    #[test]
    fn three_sweep_succeeds_on_unit_interval_graphs() {
        // intersection graphs of equal-length intervals are proper interval,
        // so the sweep construction itself (not the exhaustive fallback)
        // must find an umbrella ordering for every component
        use crate::random::SplitMix64;
        for seed in 0..200u64 {
            let mut rng = SplitMix64::new(seed);
            let n = 3 + (rng.next_below(10) as usize);
            let starts: Vec<u64> = (0..n).map(|_| rng.next_below(40)).collect();
            let mut g = Graph::new(n);
            g.make_reflexive();
            for u in 0..n {
                for v in u + 1..n {
                    if starts[u].abs_diff(starts[v]) <= 10 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            for comp in g.components() {
                let (cg, _) = g.induced(&comp).unwrap();
                assert!(
                    component_umbrella(&cg).is_some(),
                    "seed {seed}: sweeps failed on a unit interval component"
                );
            }
            assert_eq!(find_pig_witness(&g), None, "seed {seed}");
        }
    }
}
