//! Directed graphs with possible loops, plus the structural transforms the
//! rest of the crate is built on: symmetric subdigraph, underlying graph,
//! loop/loopless partition, induced subdigraphs, converse, composition with a
//! transitive tournament template, and weak components.
//!
//! Vertices are dense indices `0..n`. A loop is an ordinary arc `(u, u)`.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("digraph must have at least one vertex")]
    Empty,
    #[error("composition template must be a loopless transitive tournament")]
    NotTransitiveTournament,
    #[error("composition expects one block per template vertex ({expected}), got {got}")]
    BlockCountMismatch { expected: usize, got: usize },
}

/// A digraph on vertices `0..n` with O(log deg) arc membership and ordered
/// neighbor iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<BTreeSet<usize>>,
    inn: Vec<BTreeSet<usize>>,
}

impl Digraph {
    /// An arcless digraph on `n` vertices. `n == 0` is allowed in memory
    /// (induced subdigraphs of the loopless or reflexive part may be empty);
    /// the JSON loader rejects it.
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            out: vec![BTreeSet::new(); n],
            inn: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Adds the arc `(u, v)`; duplicates are ignored.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        self.out[u].insert(v);
        self.inn[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(&v)
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_arc(u, u)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter().copied()
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[u].iter().copied()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inn[u].len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// True iff `u` and `v` are joined by at least one arc.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// True iff every pair of distinct vertices is adjacent. Loops are
    /// unrestricted, so this recognizes semicomplete digraphs with possible
    /// loops.
    pub fn is_semicomplete_wpl(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.adjacent(u, v)))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|u| !self.has_loop(u))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|u| self.has_loop(u))
    }

    /// The subdigraph keeping exactly the arcs present in both directions.
    /// A vertex keeps its loop iff it had one.
    pub fn symmetric_subdigraph(&self) -> Digraph {
        let mut d = Digraph::new(self.n);
        for (u, v) in self.arcs() {
            if self.has_arc(v, u) {
                d.add_arc(u, v).expect("endpoints in range");
            }
        }
        d
    }

    /// The undirected shadow: edge `{u, v}` iff some arc joins `u` and `v`,
    /// a loop edge at `u` iff the digraph has a loop there.
    pub fn underlying_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.arcs() {
            g.add_edge(u, v).expect("endpoints in range");
        }
        g
    }

    /// Splits the vertices by loop presence.
    pub fn loop_split(&self) -> LoopSplit {
        let mut split = LoopSplit::default();
        for v in 0..self.n {
            if self.has_loop(v) {
                split.loop_vertices.insert(v);
            } else {
                split.free_vertices.insert(v);
            }
        }
        split
    }

    /// The subdigraph induced by `verts`, relabeled to `0..k`, together with
    /// the map from new indices back to the original vertex ids. Input order
    /// is irrelevant; duplicates are dropped and the map is sorted ascending.
    pub fn induced(&self, verts: &[usize]) -> Result<(Digraph, Vec<usize>), GraphError> {
        let mut sorted: Vec<usize> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            local[v] = i;
        }
        let mut d = Digraph::new(sorted.len());
        for &u in &sorted {
            for v in self.out[u].iter().copied() {
                if local[v] != usize::MAX {
                    d.add_arc(local[u], local[v]).expect("relabeled in range");
                }
            }
        }
        Ok((d, sorted))
    }

    /// Reverses every arc. Loops are fixed points; applying it twice gives
    /// back the original digraph.
    pub fn converse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Substitutes `blocks[i]` for vertex `i` of the template: the result is
    /// the disjoint union of the blocks plus all arcs from block `i` to block
    /// `j` whenever the template has the arc `(i, j)`. The template must be a
    /// loopless transitive tournament.
    pub fn compose(template: &Digraph, blocks: &[Digraph]) -> Result<Digraph, GraphError> {
        if !template.is_transitive_tournament_shape() {
            return Err(GraphError::NotTransitiveTournament);
        }
        if blocks.len() != template.n {
            return Err(GraphError::BlockCountMismatch {
                expected: template.n,
                got: blocks.len(),
            });
        }
        let offsets: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.n;
                Some(o)
            })
            .collect();
        let total: usize = blocks.iter().map(|b| b.n).sum();
        let mut d = Digraph::new(total);
        for (i, b) in blocks.iter().enumerate() {
            for (u, v) in b.arcs() {
                d.add_arc(offsets[i] + u, offsets[i] + v)?;
            }
        }
        for (i, j) in template.arcs() {
            for u in 0..blocks[i].n {
                for v in 0..blocks[j].n {
                    d.add_arc(offsets[i] + u, offsets[j] + v)?;
                }
            }
        }
        Ok(d)
    }

    fn is_transitive_tournament_shape(&self) -> bool {
        for u in 0..self.n {
            if self.has_loop(u) {
                return false;
            }
            for v in u + 1..self.n {
                if self.has_arc(u, v) == self.has_arc(v, u) {
                    return false;
                }
            }
        }
        // exactly one arc per pair; transitive iff no directed triangle
        for u in 0..self.n {
            for &v in &self.out[u] {
                for &w in &self.out[v] {
                    if w != u && !self.has_arc(u, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Weakly connected components, each sorted ascending, ordered by their
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(u) = queue.pop() {
                comp.push(u);
                for v in self.out[u].iter().chain(self.inn[u].iter()).copied() {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The transitive tournament on `p` vertices with arcs `(i, j)` for `i < j`.
    pub fn transitive_tournament(p: usize) -> Digraph {
        let mut d = Digraph::new(p);
        for i in 0..p {
            for j in i + 1..p {
                d.add_arc(i, j).expect("in range");
            }
        }
        d
    }

    /// The loopless directed cycle `0 -> 1 -> ... -> k-1 -> 0`.
    pub fn directed_cycle(k: usize) -> Digraph {
        let mut d = Digraph::new(k);
        for i in 0..k {
            d.add_arc(i, (i + 1) % k).expect("in range");
        }
        d
    }

    /// The reflexive complete digraph on `n` vertices.
    pub fn reflexive_complete(n: usize) -> Digraph {
        let mut d = Digraph::new(n);
        for u in 0..n {
            for v in 0..n {
                d.add_arc(u, v).expect("in range");
            }
        }
        d
    }
}

/// Partition of the vertex set by loop presence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoopSplit {
    pub loop_vertices: BTreeSet<usize>,
    pub free_vertices: BTreeSet<usize>,
}

impl LoopSplit {
    pub fn loop_vec(&self) -> Vec<usize> {
        self.loop_vertices.iter().copied().collect()
    }

    pub fn free_vec(&self) -> Vec<usize> {
        self.free_vertices.iter().copied().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphFile {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Digraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DigraphFile {
            n: self.n,
            arcs: self.arcs().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = DigraphFile::deserialize(deserializer)?;
        if file.n == 0 {
            return Err(D::Error::custom(GraphError::Empty.to_string()));
        }
        Digraph::from_arcs(file.n, file.arcs).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_digraph, random_semicomplete_wpl};
    use proptest::prelude::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn semicomplete_recognition() {
        assert!(digraph(1, &[]).is_semicomplete_wpl());
        // the 2-cycle with one loop
        assert!(digraph(2, &[(0, 1), (1, 0), (1, 1)]).is_semicomplete_wpl());
        assert!(!digraph(2, &[]).is_semicomplete_wpl());
    }

    #[test]
    fn symmetric_subdigraph_cases() {
        let c2 = digraph(2, &[(0, 1), (1, 0)]);
        assert_eq!(c2.symmetric_subdigraph(), c2);

        let tt2 = digraph(2, &[(0, 1)]);
        assert_eq!(tt2.symmetric_subdigraph().arc_count(), 0);

        let r = digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 2), (0, 0), (1, 1), (2, 2)]);
        let sym = r.symmetric_subdigraph();
        let expected = digraph(3, &[(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)]);
        assert_eq!(sym, expected);
    }

    #[test]
    fn underlying_graph_cases() {
        let c2 = digraph(2, &[(0, 1), (1, 0)]);
        assert_eq!(c2.underlying_graph().edges().count(), 1);

        let tt3 = Digraph::transitive_tournament(3);
        let u = tt3.underlying_graph();
        assert_eq!(u.edges().count(), 3);
        assert!(u.has_edge(0, 1) && u.has_edge(1, 2) && u.has_edge(0, 2));

        let r = digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 2), (0, 0), (1, 1), (2, 2)]);
        let ur = r.underlying_graph();
        assert_eq!(ur.edges().count(), 6); // triangle plus three loop edges
        assert!((0..3).all(|v| ur.has_edge(v, v)));
    }

    #[test]
    fn loop_split_cases() {
        let k3 = Digraph::reflexive_complete(3);
        let s = k3.loop_split();
        assert_eq!(s.loop_vec(), vec![0, 1, 2]);
        assert!(s.free_vertices.is_empty());

        let c3 = Digraph::directed_cycle(3);
        assert!(c3.loop_split().loop_vertices.is_empty());

        let w = digraph(2, &[(0, 1), (1, 0), (1, 1)]);
        let sw = w.loop_split();
        assert_eq!(sw.loop_vec(), vec![1]);
        assert_eq!(sw.free_vec(), vec![0]);
    }

    #[test]
    fn induced_cases() {
        let r = digraph(3, &[(0, 1), (1, 2), (2, 0), (0, 2), (0, 0), (1, 1), (2, 2)]);
        let (same, map) = r.induced(&[0, 1, 2]).unwrap();
        assert_eq!(same, r);
        assert_eq!(map, vec![0, 1, 2]);

        let (single, _) = r.induced(&[0]).unwrap();
        assert_eq!(single.n(), 1);
        assert!(single.has_loop(0));

        // every 2-subset of K*_3 minus one nonloop arc keeps at least 3 arcs
        let mut k3e = Digraph::reflexive_complete(3);
        k3e = {
            let arcs: Vec<_> = k3e.arcs().filter(|&a| a != (1, 0)).collect();
            Digraph::from_arcs(3, arcs).unwrap()
        };
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let (sub, _) = k3e.induced(&pair).unwrap();
            assert!(sub.arc_count() >= 3, "{pair:?} gave {}", sub.arc_count());
        }

        assert!(r.induced(&[5]).is_err());
    }

    #[test]
    fn converse_cases() {
        let tt2 = digraph(2, &[(0, 1)]);
        let conv = tt2.converse();
        assert!(conv.has_arc(1, 0) && !conv.has_arc(0, 1));

        let c3 = Digraph::directed_cycle(3);
        let cc = c3.converse();
        assert!(cc.has_arc(1, 0) && cc.has_arc(2, 1) && cc.has_arc(0, 2));
    }

    #[test]
    fn compose_cases() {
        let tt2 = Digraph::transitive_tournament(2);
        let single = Digraph::new(1);
        assert_eq!(Digraph::compose(&tt2, &[single.clone(), single.clone()]).unwrap(), tt2);

        let k3 = Digraph::reflexive_complete(3);
        let tt1 = Digraph::transitive_tournament(1);
        assert_eq!(Digraph::compose(&tt1, std::slice::from_ref(&k3)).unwrap(), k3);

        let k2 = Digraph::reflexive_complete(2);
        let composed = Digraph::compose(&tt2, &[single, k2]).unwrap();
        let expected = digraph(3, &[(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(composed, expected);

        let c3 = Digraph::directed_cycle(3);
        assert!(Digraph::compose(&c3, &[Digraph::new(1), Digraph::new(1), Digraph::new(1)]).is_err());
    }

    #[test]
    fn weak_components_cases() {
        assert_eq!(Digraph::new(2).weak_components(), vec![vec![0], vec![1]]);
        assert_eq!(Digraph::directed_cycle(3).weak_components().len(), 1);

        let mut d = Digraph::new(3);
        d.add_arc(0, 1).unwrap();
        d.add_arc(1, 0).unwrap();
        d.add_arc(0, 0).unwrap();
        d.add_arc(1, 1).unwrap();
        d.add_arc(2, 2).unwrap();
        assert_eq!(d.weak_components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn generator_forced_cases() {
        let a = random_semicomplete_wpl(7, 5, 0.4, 0.4);
        let b = random_semicomplete_wpl(7, 5, 0.4, 0.4);
        assert_eq!(a, b);

        assert_eq!(random_semicomplete_wpl(1, 3, 1.0, 1.0), Digraph::reflexive_complete(3));

        let t = random_semicomplete_wpl(2, 6, 0.0, 0.0);
        assert!(t.is_loopless());
        for u in 0..6 {
            for v in u + 1..6 {
                assert!(t.has_arc(u, v) ^ t.has_arc(v, u));
            }
        }
    }

    #[test]
    fn generator_outputs_are_semicomplete() {
        for seed in 0..1000u64 {
            let n = 1 + (seed as usize % 12);
            let h = random_semicomplete_wpl(seed, n, 0.3, 0.3);
            assert!(h.is_semicomplete_wpl(), "seed {seed}");
        }
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let w = digraph(2, &[(0, 1), (1, 0), (1, 1)]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":2,"arcs":[[0,1],[1,0],[1,1]]}"#);
        let back: Digraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);

        assert!(serde_json::from_str::<Digraph>(r#"{"n":0,"arcs":[]}"#).is_err());
        assert!(serde_json::from_str::<Digraph>(r#"{"n":1,"arcs":[[0,3]]}"#).is_err());
        // duplicate arcs collapse on load
        let dup: Digraph = serde_json::from_str(r#"{"n":2,"arcs":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(dup.arc_count(), 1);
    }

    proptest! {
        #[test]
        fn converse_is_an_involution(seed in 0u64..500, n in 1usize..8) {
            let h = random_digraph(seed, n, 0.5, 0.3);
            prop_assert_eq!(h.converse().converse(), h.clone());
            prop_assert_eq!(h.underlying_graph(), h.converse().underlying_graph());
        }

        #[test]
        fn symmetric_subdigraph_idempotent_and_loop_preserving(seed in 0u64..500, n in 1usize..8) {
            let h = random_digraph(seed, n, 0.5, 0.3);
            let s = h.symmetric_subdigraph();
            prop_assert_eq!(s.symmetric_subdigraph(), s.clone());
            for v in 0..n {
                prop_assert_eq!(s.has_loop(v), h.has_loop(v));
            }
        }

        #[test]
        fn compose_loop_split_recovers_block_loops(seed in 0u64..200, k in 1usize..4) {
            // blocks alternate loopless singletons and small reflexive digraphs
            let mut blocks = Vec::new();
            let mut expected_loops = std::collections::BTreeSet::new();
            let mut offset = 0usize;
            for i in 0..k {
                if (seed + i as u64).is_multiple_of(2) {
                    blocks.push(Digraph::new(1));
                    offset += 1;
                } else {
                    let b = Digraph::reflexive_complete(2);
                    expected_loops.insert(offset);
                    expected_loops.insert(offset + 1);
                    offset += 2;
                    blocks.push(b);
                }
            }
            let t = Digraph::transitive_tournament(k);
            let h = Digraph::compose(&t, &blocks).unwrap();
            prop_assert_eq!(h.loop_split().loop_vertices, expected_loops);
        }

        #[test]
        fn digraph_json_round_trips(seed in 0u64..300, n in 1usize..7) {
            let h = random_digraph(seed, n, 0.5, 0.5);
            let s = serde_json::to_string(&h).unwrap();
            let back: Digraph = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
