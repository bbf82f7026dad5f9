//! Min-Max ordering verification and construction.
//!
//! An ordering of the vertices of `H` is Min-Max when for any two arcs,
//! taking coordinatewise minima and maxima of their endpoint positions again
//! yields arcs. Such an ordering certifies that minimum cost homomorphism
//! instances over `H` reduce to a minimum cut (see the solver module).
//!
//! The construction for semicomplete digraphs with possible loops: split off
//! the reflexive part, order each component of its symmetric subdigraph by an
//! umbrella ordering oriented so asymmetric arcs run forward, order the
//! components by strict domination, then insert each component into the
//! acyclic ordering of the loopless part. Every structural property the
//! construction relies on is re-verified; violations surface as diagnostics
//! rather than wrong answers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::recognition::{
    check_umbrella, is_transitive_tournament, umbrella_ordering, PatternHit, PigWitness,
    UmbrellaOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("neither the umbrella ordering nor its reversal orients all asymmetric arcs forward (component {component:?})")]
    NeitherDirectionWorks { component: Vec<usize> },
    #[error("cross arcs between {u} and {v} are not a uniform strict domination")]
    NonUniformCrossArcs { u: usize, v: usize },
    #[error("component domination tournament is cyclic (components {a:?}, {b:?}, {c:?})")]
    CyclicComponentTournament {
        a: Vec<usize>,
        b: Vec<usize>,
        c: Vec<usize>,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// A permutation of the vertices of some digraph, position-indexed:
/// `perm[i]` is the vertex at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexOrdering {
    perm: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self, OrderingError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(OrderingError::NotAPermutation { n });
            }
            seen[v] = true;
        }
        Ok(VertexOrdering { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Vertex at position `pos`.
    pub fn vertex(&self, pos: usize) -> usize {
        self.perm[pos]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Inverse table: `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> VertexOrdering {
        let mut perm = self.perm.clone();
        perm.reverse();
        VertexOrdering { perm }
    }
}

/// Which of the derived arc pairs is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingPair {
    Min,
    Max,
}

/// Two arcs whose coordinatewise min or max (in ordering positions) is not an
/// arc. Arcs and the missing pair are stored as vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinMaxViolation {
    pub arc_e: (usize, usize),
    pub arc_f: (usize, usize),
    pub missing: MissingPair,
    pub missing_arc: (usize, usize),
}

impl MinMaxViolation {
    pub fn verify(&self, h: &Digraph, ord: &VertexOrdering) -> Result<(), String> {
        for &(u, v) in [&self.arc_e, &self.arc_f] {
            if !h.has_arc(u, v) {
                return Err(format!("({u}, {v}) is not an arc"));
            }
        }
        let pos = ord.positions();
        let (i, k) = (pos[self.arc_e.0], pos[self.arc_e.1]);
        let (j, s) = (pos[self.arc_f.0], pos[self.arc_f.1]);
        let derived = match self.missing {
            MissingPair::Min => (
                ord.vertex(i.min(j)),
                ord.vertex(k.min(s)),
            ),
            MissingPair::Max => (
                ord.vertex(i.max(j)),
                ord.vertex(k.max(s)),
            ),
        };
        if derived != self.missing_arc {
            return Err("recorded missing pair does not match the arcs".into());
        }
        if h.has_arc(derived.0, derived.1) {
            return Err("claimed missing pair is actually an arc".into());
        }
        Ok(())
    }
}

/// Checks whether `ord` is a Min-Max ordering of `H`. All arc pairs are
/// examined; the first violation in deterministic order is returned.
pub fn check_minmax(h: &Digraph, ord: &VertexOrdering) -> Option<MinMaxViolation> {
    assert_eq!(ord.len(), h.n(), "ordering must cover the digraph");
    let pos = ord.positions();
    let mut arcs: Vec<(usize, usize)> = h.arcs().collect();
    arcs.sort_by_key(|&(u, v)| (pos[u], pos[v]));
    for (ei, &e) in arcs.iter().enumerate() {
        for &f in arcs.iter().skip(ei) {
            let (i, k) = (pos[e.0], pos[e.1]);
            let (j, s) = (pos[f.0], pos[f.1]);
            let min_pair = (ord.vertex(i.min(j)), ord.vertex(k.min(s)));
            if !h.has_arc(min_pair.0, min_pair.1) {
                return Some(MinMaxViolation {
                    arc_e: e,
                    arc_f: f,
                    missing: MissingPair::Min,
                    missing_arc: min_pair,
                });
            }
            let max_pair = (ord.vertex(i.max(j)), ord.vertex(k.max(s)));
            if !h.has_arc(max_pair.0, max_pair.1) {
                return Some(MinMaxViolation {
                    arc_e: e,
                    arc_f: f,
                    missing: MissingPair::Max,
                    missing_arc: max_pair,
                });
            }
        }
    }
    None
}

/// True iff under `ord` the out-neighborhood of every vertex occupies a
/// contiguous run of positions (empty allowed). This is the precondition for
/// the threshold network construction.
pub fn slices_are_intervals(h: &Digraph, ord: &VertexOrdering) -> bool {
    let pos = ord.positions();
    for a in 0..h.n() {
        let mut slice: Vec<usize> = h.out_neighbors(a).map(|b| pos[b]).collect();
        slice.sort_unstable();
        if let (Some(&lo), Some(&hi)) = (slice.first(), slice.last()) {
            if hi - lo + 1 != slice.len() {
                return false;
            }
        }
    }
    true
}

/// Orients an umbrella ordering of one reflexive component so that every
/// pair is forward-dominating in `H`: either `umb` itself or its reversal
/// satisfies `has_arc(earlier, later)` for all pairs. `umb` lists the
/// component's vertices (ids of `H`) in umbrella order.
pub fn orient_component(h: &Digraph, umb: &[usize]) -> Result<Vec<usize>, OrderingError> {
    let forward_ok = |seq: &[usize]| {
        (0..seq.len()).all(|i| (i + 1..seq.len()).all(|j| h.has_arc(seq[i], seq[j])))
    };
    if forward_ok(umb) {
        return Ok(umb.to_vec());
    }
    let rev: Vec<usize> = umb.iter().rev().copied().collect();
    if forward_ok(&rev) {
        return Ok(rev);
    }
    Err(OrderingError::NeitherDirectionWorks {
        component: umb.to_vec(),
    })
}

/// Orders components so that earlier components strictly dominate later
/// ones. All cross arcs are verified to be uniform strict dominations and
/// the induced component tournament must be transitive. Returns the indices
/// of `comps` in domination order.
pub fn order_components(h: &Digraph, comps: &[Vec<usize>]) -> Result<Vec<usize>, OrderingError> {
    let k = comps.len();
    // dominates[i][j]: every vertex of comps[i] strictly dominates every
    // vertex of comps[j]
    let mut dominates = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let mut fwd = true;
            let mut bwd = true;
            let mut offender = None;
            for &u in &comps[i] {
                for &v in &comps[j] {
                    let uv = h.has_arc(u, v) && !h.has_arc(v, u);
                    let vu = h.has_arc(v, u) && !h.has_arc(u, v);
                    if !uv {
                        fwd = false;
                    }
                    if !vu {
                        bwd = false;
                    }
                    if !uv && !vu && offender.is_none() {
                        offender = Some((u, v));
                    }
                }
            }
            match (fwd, bwd) {
                (true, false) => dominates[i][j] = true,
                (false, true) => dominates[j][i] = true,
                _ => {
                    let (u, v) = offender.unwrap_or((comps[i][0], comps[j][0]));
                    return Err(OrderingError::NonUniformCrossArcs { u, v });
                }
            }
        }
    }
    // transitive tournament on component indices: sort by wins and verify
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        let wins = dominates[i].iter().filter(|&&d| d).count();
        (std::cmp::Reverse(wins), i)
    });
    for a in 0..k {
        for b in a + 1..k {
            if !dominates[order[a]][order[b]] {
                // a cycle exists; surface one triple for the diagnostic
                for c in 0..k {
                    for d in 0..k {
                        for e in 0..k {
                            if dominates[c][d] && dominates[d][e] && dominates[e][c] {
                                return Err(OrderingError::CyclicComponentTournament {
                                    a: comps[c].clone(),
                                    b: comps[d].clone(),
                                    c: comps[e].clone(),
                                });
                            }
                        }
                    }
                }
                return Err(OrderingError::PreconditionViolated(
                    "component tournament is not transitive".into(),
                ));
            }
        }
    }
    Ok(order)
}

/// Builds a Min-Max ordering of a semicomplete digraph with possible loops
/// satisfying the polynomial-side structure. The result is fully verified:
/// all pairs forward-dominating, Min-Max, and interval out-slices; any
/// failed step is reported as an error rather than trusted.
pub fn build_minmax_wpl(h: &Digraph) -> Result<VertexOrdering, OrderingError> {
    let split = h.loop_split();
    let loop_verts = split.loop_vec();
    let free_verts = split.free_vec();

    // umbrella-order each component of the symmetric subdigraph of the
    // reflexive part, then orient it
    let (l_sub, l_map) = h
        .induced(&loop_verts)
        .map_err(|e| OrderingError::PreconditionViolated(e.to_string()))?;
    let l_sym = l_sub.symmetric_subdigraph();
    let u_l_sym = l_sym.underlying_graph();
    let mut oriented: Vec<Vec<usize>> = Vec::new();
    for comp in l_sym.weak_components() {
        let (cg, cmap) = u_l_sym.induced(&comp).expect("component in range");
        let local = match umbrella_ordering(&cg)
            .map_err(|e| OrderingError::PreconditionViolated(e.to_string()))?
        {
            UmbrellaOutcome::Ordering(ord) => ord,
            UmbrellaOutcome::Witness(w) => {
                return Err(OrderingError::PreconditionViolated(format!(
                    "reflexive component is not proper interval: {:?} {:?}",
                    w.kind, w.vertices
                )))
            }
        };
        let seq: Vec<usize> = local.as_slice().iter().map(|&p| l_map[cmap[p]]).collect();
        oriented.push(orient_component(h, &seq)?);
    }

    let comp_sets: Vec<Vec<usize>> = oriented
        .iter()
        .map(|seq| {
            let mut s = seq.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let comp_order = order_components(h, &comp_sets)?;

    // acyclic ordering of the loopless part
    let (i_sub, i_map) = h
        .induced(&free_verts)
        .map_err(|e| OrderingError::PreconditionViolated(e.to_string()))?;
    let i_ord = is_transitive_tournament(&i_sub).ok_or_else(|| {
        OrderingError::PreconditionViolated("loopless part is not a transitive tournament".into())
    })?;
    let i_seq: Vec<usize> = i_ord.as_slice().iter().map(|&p| i_map[p]).collect();

    // insertion slot of a component: length of the prefix of the loopless
    // ordering that strictly dominates the whole component; the suffix must
    // be strictly dominated by it
    let mut slots: Vec<usize> = Vec::with_capacity(comp_order.len());
    for &ci in &comp_order {
        let comp = &comp_sets[ci];
        let mut slot = 0;
        let mut suffix_started = false;
        for (idx, &u) in i_seq.iter().enumerate() {
            let dominates_comp = comp.iter().all(|&v| h.has_arc(u, v) && !h.has_arc(v, u));
            let dominated_by_comp = comp.iter().all(|&v| h.has_arc(v, u) && !h.has_arc(u, v));
            match (dominates_comp, dominated_by_comp) {
                (true, false) if !suffix_started => slot = idx + 1,
                (true, false) => {
                    return Err(OrderingError::PreconditionViolated(format!(
                        "loopless vertex {u} dominates a component after one it is dominated by"
                    )))
                }
                (false, true) => suffix_started = true,
                _ => {
                    return Err(OrderingError::PreconditionViolated(format!(
                        "loopless vertex {u} is not uniformly related to component {comp:?}"
                    )))
                }
            }
        }
        if let Some(&prev) = slots.last() {
            if slot < prev {
                return Err(OrderingError::PreconditionViolated(
                    "component insertion would invert the component order".into(),
                ));
            }
        }
        slots.push(slot);
    }

    // splice components into the loopless ordering, preserving both orders
    let mut full: Vec<usize> = Vec::with_capacity(h.n());
    let mut comp_iter = comp_order.iter().zip(slots.iter()).peekable();
    for idx in 0..=i_seq.len() {
        while let Some(&(&ci, &slot)) = comp_iter.peek() {
            if slot == idx {
                full.extend(oriented[ci].iter().copied());
                comp_iter.next();
            } else {
                break;
            }
        }
        if idx < i_seq.len() {
            full.push(i_seq[idx]);
        }
    }

    let ord = VertexOrdering::new(full)
        .map_err(|_| OrderingError::PreconditionViolated("assembly lost vertices".into()))?;

    // full verification of the claimed properties
    let perm = ord.as_slice();
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if !h.has_arc(perm[i], perm[j]) {
                return Err(OrderingError::PreconditionViolated(format!(
                    "pair ({}, {}) is not forward-dominating",
                    perm[i], perm[j]
                )));
            }
        }
    }
    let pos = ord.positions();
    for (ci, comp) in comp_sets.iter().enumerate() {
        let mut at: Vec<usize> = comp.iter().map(|&v| pos[v]).collect();
        at.sort_unstable();
        if at.last().copied().unwrap_or(0) - at.first().copied().unwrap_or(0) + 1 != at.len() {
            return Err(OrderingError::PreconditionViolated(format!(
                "component {comp:?} is not contiguous in the assembled ordering"
            )));
        }
        let local: Vec<usize> = oriented[ci]
            .iter()
            .map(|&v| comp.binary_search(&v).expect("component vertex"))
            .collect();
        let comp_local: Vec<usize> = comp
            .iter()
            .map(|&v| l_map.binary_search(&v).expect("reflexive vertex"))
            .collect();
        let (cg, _) = u_l_sym.induced(&comp_local).expect("component in range");
        let comp_ord = VertexOrdering::new(local).expect("permutation");
        if check_umbrella(&cg, &comp_ord).is_some() {
            return Err(OrderingError::PreconditionViolated(format!(
                "component {comp:?} lost the umbrella property"
            )));
        }
    }
    if let Some(v) = check_minmax(h, &ord) {
        return Err(OrderingError::PreconditionViolated(format!(
            "constructed ordering is not Min-Max: {v:?}"
        )));
    }
    if !slices_are_intervals(h, &ord) {
        return Err(OrderingError::PreconditionViolated(
            "constructed ordering has a non-interval out-slice".into(),
        ));
    }
    Ok(ord)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    LooplessSingleton,
    Reflexive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

/// A representation of `H` as a transitive tournament of blocks: earlier
/// blocks strictly dominate later ones, each block is a loopless singleton
/// or a reflexive digraph with connected symmetric structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
}

impl Decomposition {
    /// Rebuilds the composed digraph (blocks substituted into a transitive
    /// tournament) and the concatenated vertex map back into `H`.
    pub fn reassemble(&self, h: &Digraph) -> Result<(Digraph, Vec<usize>), OrderingError> {
        let template = Digraph::transitive_tournament(self.blocks.len());
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut map = Vec::new();
        for b in &self.blocks {
            let (sub, m) = h
                .induced(&b.vertices)
                .map_err(|e| OrderingError::PreconditionViolated(e.to_string()))?;
            blocks.push(sub);
            map.extend(m);
        }
        let composed = Digraph::compose(&template, &blocks)
            .map_err(|e| OrderingError::PreconditionViolated(e.to_string()))?;
        Ok((composed, map))
    }
}

/// Why a digraph is not a transitive tournament of admissible blocks.
/// Checks run in a fixed order: cross-arc uniformity, block tournament
/// transitivity, then per-block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeFailure {
    CrossArcsNotUniform { u: usize, v: usize },
    CyclicBlockTournament { blocks: [Vec<usize>; 3] },
    BlockContainsR { hit: PatternHit },
    BlockNotProperInterval { witness: PigWitness },
}

/// Attempts the block decomposition of a semicomplete digraph with possible
/// loops: blocks are the weak components of the symmetric subdigraph of the
/// reflexive part plus one singleton per loopless vertex. Failure is a
/// value, not an error.
pub fn decompose_tt_composition(h: &Digraph) -> Result<Decomposition, DecomposeFailure> {
    let split = h.loop_split();
    let loop_verts = split.loop_vec();

    let (l_sub, l_map) = h.induced(&loop_verts).expect("loop vertices in range");
    let l_sym = l_sub.symmetric_subdigraph();

    let mut blocks: Vec<(Vec<usize>, BlockKind)> = Vec::new();
    for comp in l_sym.weak_components() {
        let verts: Vec<usize> = comp.iter().map(|&p| l_map[p]).collect();
        blocks.push((verts, BlockKind::Reflexive));
    }
    for &v in &split.free_vec() {
        blocks.push((vec![v], BlockKind::LooplessSingleton));
    }
    blocks.sort_by_key(|(vs, _)| vs[0]);

    let k = blocks.len();
    let mut dominates = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let mut fwd = true;
            let mut bwd = true;
            let mut offender = None;
            for &u in &blocks[i].0 {
                for &v in &blocks[j].0 {
                    let uv = h.has_arc(u, v) && !h.has_arc(v, u);
                    let vu = h.has_arc(v, u) && !h.has_arc(u, v);
                    if !uv {
                        fwd = false;
                    }
                    if !vu {
                        bwd = false;
                    }
                    if !uv && !vu && offender.is_none() {
                        offender = Some((u, v));
                    }
                }
            }
            match (fwd, bwd) {
                (true, false) => dominates[i][j] = true,
                (false, true) => dominates[j][i] = true,
                _ => {
                    let (u, v) = offender.unwrap_or((blocks[i].0[0], blocks[j].0[0]));
                    return Err(DecomposeFailure::CrossArcsNotUniform { u, v });
                }
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if dominates[a][b] && dominates[b][c] && dominates[c][a] {
                    return Err(DecomposeFailure::CyclicBlockTournament {
                        blocks: [blocks[a].0.clone(), blocks[b].0.clone(), blocks[c].0.clone()],
                    });
                }
            }
        }
    }

    for (verts, kind) in &blocks {
        if *kind != BlockKind::Reflexive {
            continue;
        }
        let (sub, map) = h.induced(verts).expect("block vertices in range");
        if let Some(hit) = crate::recognition::find_pattern(&sub, crate::recognition::PatternKind::R)
        {
            let mapped = PatternHit {
                kind: hit.kind,
                vertices: hit.vertices.iter().map(|&p| map[p]).collect(),
                loop_mask: hit.loop_mask,
            };
            return Err(DecomposeFailure::BlockContainsR { hit: mapped });
        }
        let u_sym = sub.symmetric_subdigraph().underlying_graph();
        match umbrella_ordering(&u_sym) {
            Ok(UmbrellaOutcome::Ordering(_)) => {}
            Ok(UmbrellaOutcome::Witness(w)) => {
                let mapped = PigWitness {
                    kind: w.kind,
                    vertices: w.vertices.iter().map(|&p| map[p]).collect(),
                };
                return Err(DecomposeFailure::BlockNotProperInterval { witness: mapped });
            }
            Err(e) => {
                // blocks are reflexive by construction, so this is a defect
                unreachable!("umbrella on reflexive block failed: {e}");
            }
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        let wins = dominates[i].iter().filter(|&&d| d).count();
        (std::cmp::Reverse(wins), i)
    });
    Ok(Decomposition {
        blocks: order
            .into_iter()
            .map(|i| Block {
                vertices: blocks[i].0.clone(),
                kind: blocks[i].1,
            })
            .collect(),
    })
}
