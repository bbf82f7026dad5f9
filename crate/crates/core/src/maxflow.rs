//! Dinic max-flow over exact integer capacities.
//!
//! Capacities are `u128` residuals; pushing flow moves capacity to the
//! reverse edge. The solver uses a large finite surrogate for unbounded arcs
//! and stops augmenting once the flow reaches the infeasibility threshold,
//! so no arithmetic here can overflow.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u128,
    rev: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Dinic {
    graph: Vec<Vec<Edge>>,
}

impl Dinic {
    pub fn new(n: usize) -> Self {
        Dinic {
            graph: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u128) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Edge { to, cap, rev: rev_from });
        self.graph[to].push(Edge { to: from, cap: 0, rev: rev_to });
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [i64]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && level[e.to] == -1 {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        level[t] != -1
    }

    /// One augmenting path along the level graph, found iteratively with a
    /// current-arc pointer. Returns the amount pushed (at most `limit`).
    fn augment(
        &mut self,
        s: usize,
        t: usize,
        level: &[i64],
        iter: &mut [usize],
        limit: u128,
    ) -> u128 {
        // stack of (vertex, edge index taken from it)
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let mut bottleneck = limit;
                for &(v, i) in &path {
                    bottleneck = bottleneck.min(self.graph[v][i].cap);
                }
                for &(v, i) in &path {
                    let rev = self.graph[v][i].rev;
                    let to = self.graph[v][i].to;
                    self.graph[v][i].cap -= bottleneck;
                    self.graph[to][rev].cap += bottleneck;
                }
                return bottleneck;
            }
            if iter[u] < self.graph[u].len() {
                let i = iter[u];
                let (cap, to) = {
                    let e = &self.graph[u][i];
                    (e.cap, e.to)
                };
                if cap > 0 && level[to] == level[u] + 1 {
                    path.push((u, i));
                    u = to;
                } else {
                    iter[u] += 1;
                }
            } else {
                // dead end: retreat
                match path.pop() {
                    Some((v, _)) => {
                        iter[v] += 1;
                        u = v;
                    }
                    None => return 0,
                }
            }
        }
    }

    /// Max flow from `s` to `t`, stopping early once the total reaches
    /// `cutoff`. When the true max flow is below the cutoff the result is
    /// exact.
    pub fn max_flow_capped(&mut self, s: usize, t: usize, cutoff: u128) -> u128 {
        let n = self.graph.len();
        let mut total: u128 = 0;
        let mut level = vec![-1i64; n];
        while total < cutoff && self.bfs(s, t, &mut level) {
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, &level, &mut iter, cutoff - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= cutoff {
                    return total;
                }
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual graph (the source side of
    /// a minimum cut once max flow has been reached).
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let n = self.graph.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_max_flow() {
        let mut d = Dinic::new(6);
        d.add_edge(0, 1, 10);
        d.add_edge(0, 2, 10);
        d.add_edge(1, 3, 4);
        d.add_edge(1, 4, 8);
        d.add_edge(2, 4, 9);
        d.add_edge(3, 5, 10);
        d.add_edge(4, 3, 6);
        d.add_edge(4, 5, 10);
        assert_eq!(d.max_flow_capped(0, 5, u128::MAX), 19);
    }

    #[test]
    fn disconnected_and_capped() {
        let mut d = Dinic::new(4);
        d.add_edge(0, 1, 10);
        d.add_edge(2, 3, 5);
        assert_eq!(d.max_flow_capped(0, 3, u128::MAX), 0);

        let mut d = Dinic::new(2);
        d.add_edge(0, 1, 1_000_000);
        assert_eq!(d.max_flow_capped(0, 1, 42), 42);
    }

    #[test]
    fn min_cut_side() {
        let mut d = Dinic::new(4);
        d.add_edge(0, 1, 3);
        d.add_edge(1, 2, 1);
        d.add_edge(2, 3, 3);
        assert_eq!(d.max_flow_capped(0, 3, u128::MAX), 1);
        let side = d.residual_reachable(0);
        assert_eq!(side, vec![true, true, false, false]);
    }
}
