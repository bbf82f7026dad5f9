//! Undirected graphs. Self-loops are allowed so that reflexive graphs (one
//! loop per vertex) can be represented directly.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn has_selfloop(&self, u: usize) -> bool {
        self.has_edge(u, u)
    }

    /// Neighbors of `u`, including `u` itself when it carries a loop.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    /// Edges as pairs `(u, v)` with `u <= v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.has_selfloop(v))
    }

    /// True iff the graph has no self-loops.
    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|v| !self.has_selfloop(v))
    }

    /// Adds a loop at every vertex.
    pub fn make_reflexive(&mut self) {
        for v in 0..self.n {
            self.adj[v].insert(v);
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    /// Self-loops do not affect connectivity.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The subgraph induced by `verts`, relabeled to `0..k`, with the map
    /// from new indices back to original vertex ids (sorted ascending).
    pub fn induced(&self, verts: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
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
        let mut g = Graph::new(sorted.len());
        for &u in &sorted {
            for v in self.adj[u].iter().copied() {
                if v >= u && local[v] != usize::MAX {
                    g.add_edge(local[u], local[v]).expect("relabeled in range");
                }
            }
        }
        Ok((g, sorted))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphFile {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        if file.n == 0 {
            return Err(D::Error::custom(GraphError::Empty.to_string()));
        }
        Graph::from_edges(file.n, file.edges).map_err(|e| D::Error::custom(e.to_string()))
    }
}
