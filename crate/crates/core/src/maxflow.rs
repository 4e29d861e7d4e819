//! Dinic's blocking-flow maximum flow over exact integers.

use std::collections::VecDeque;

use crate::arith::ExactInt;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: ExactInt,
}

/// Residual network; edge `2k` is the `k`-th added edge and `2k + 1` its
/// reverse.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    original: Vec<ExactInt>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            original: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds `u → v` with capacity `cap ≥ 0` and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: ExactInt) -> usize {
        let k = self.original.len();
        self.adj[u].push(self.edges.len());
        self.edges.push(Edge { to: v, cap: cap.clone() });
        self.adj[v].push(self.edges.len());
        self.edges.push(Edge {
            to: u,
            cap: ExactInt::zero(),
        });
        self.original.push(cap);
        k
    }

    /// Flow currently on edge `k`.
    pub fn flow(&self, k: usize) -> ExactInt {
        &self.original[k] - &self.edges[2 * k].cap
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.edges[e].to;
                if level[w] == usize::MAX && self.edges[e].cap.is_positive() {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    /// Finds one augmenting path in the level graph by iterative DFS and
    /// pushes its bottleneck. Returns the pushed amount (zero if none).
    fn augment(&mut self, s: usize, t: usize, level: &[usize], next: &mut [usize]) -> ExactInt {
        let mut path: Vec<usize> = Vec::new();
        let mut v = s;
        loop {
            if v == t {
                let push = path
                    .iter()
                    .map(|&e| self.edges[e].cap.clone())
                    .min()
                    .expect("path to t is nonempty");
                for &e in &path {
                    self.edges[e].cap -= &push;
                    self.edges[e ^ 1].cap += &push;
                }
                return push;
            }
            let mut advanced = false;
            while next[v] < self.adj[v].len() {
                let e = self.adj[v][next[v]];
                let w = self.edges[e].to;
                if self.edges[e].cap.is_positive() && level[w] == level[v] + 1 {
                    path.push(e);
                    v = w;
                    advanced = true;
                    break;
                }
                next[v] += 1;
            }
            if !advanced {
                if v == s {
                    return ExactInt::zero();
                }
                // Dead end: retreat and skip the edge that led here.
                let e = path.pop().expect("non-source node has an incoming path edge");
                v = self.edges[e ^ 1].to;
                next[v] += 1;
            }
        }
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> ExactInt {
        let mut total = ExactInt::zero();
        if s == t {
            return total;
        }
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let pushed = self.augment(s, t, &level, &mut next);
                if pushed.is_zero() {
                    break;
                }
                total += pushed;
            }
        }
    }
}
