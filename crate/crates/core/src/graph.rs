//! Directed multigraphs, incidence operators and minor bookkeeping.
//!
//! Incidence convention: the column of arc `(v, w)` has `-1` at `v` and `+1`
//! at `w`, so `(A x)_v` is inflow minus outflow.

use crate::arith::ExactInt;
use crate::error::SolveError;

pub type NodeId = usize;
pub type ArcId = usize;

/// Directed multigraph with stable arc ids. Parallel arcs and self-loops are
/// allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    node_count: usize,
    tails: Vec<NodeId>,
    heads: Vec<NodeId>,
}

impl MultiGraph {
    pub fn new(node_count: usize) -> Self {
        MultiGraph {
            node_count,
            tails: Vec::new(),
            heads: Vec::new(),
        }
    }

    pub fn from_arcs(node_count: usize, arcs: &[(NodeId, NodeId)]) -> Self {
        let mut g = MultiGraph::new(node_count);
        for &(t, h) in arcs {
            g.add_arc(t, h);
        }
        g
    }

    pub fn add_node(&mut self) -> NodeId {
        self.node_count += 1;
        self.node_count - 1
    }

    pub fn add_arc(&mut self, tail: NodeId, head: NodeId) -> ArcId {
        assert!(tail < self.node_count && head < self.node_count, "arc endpoint out of range");
        self.tails.push(tail);
        self.heads.push(head);
        self.tails.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    #[inline]
    pub fn tail(&self, a: ArcId) -> NodeId {
        self.tails[a]
    }

    #[inline]
    pub fn head(&self, a: ArcId) -> NodeId {
        self.heads[a]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, NodeId, NodeId)> + '_ {
        self.tails
            .iter()
            .zip(&self.heads)
            .enumerate()
            .map(|(a, (&t, &h))| (a, t, h))
    }

    /// `b = A x`: inflow minus outflow at every node.
    pub fn apply_incidence(&self, x: &[ExactInt]) -> Vec<ExactInt> {
        assert_eq!(x.len(), self.arc_count());
        let mut b = vec![ExactInt::zero(); self.node_count];
        for (a, t, h) in self.arcs() {
            if t != h {
                b[t] -= &x[a];
                b[h] += &x[a];
            }
        }
        b
    }

    /// `A^T y`: `y_head - y_tail` per arc.
    pub fn apply_incidence_transpose(&self, y: &[ExactInt]) -> Vec<ExactInt> {
        assert_eq!(y.len(), self.node_count);
        self.arcs().map(|(_, t, h)| &y[h] - &y[t]).collect()
    }

    /// Connected components of the underlying undirected graph, as a
    /// component index per node (numbered by lowest member).
    pub fn weak_components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.node_count);
        for (_, t, h) in self.arcs() {
            uf.union(t, h);
        }
        let mut comp = vec![usize::MAX; self.node_count];
        let mut next = 0;
        let mut of_root = vec![usize::MAX; self.node_count];
        for v in 0..self.node_count {
            let r = uf.find(v);
            if of_root[r] == usize::MAX {
                of_root[r] = next;
                next += 1;
            }
            comp[v] = of_root[r];
        }
        (next, comp)
    }
}

/// Union-find with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcStatus {
    Live,
    Deleted,
    /// `forest` is true when the contraction merged two classes; such arcs
    /// form the internal routing forest of their class.
    Contracted { forest: bool },
}

/// Deletion and contraction record over a fixed graph. Operations are never
/// revoked.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    classes: UnionFind,
    status: Vec<ArcStatus>,
    deleted: usize,
    contracted: usize,
}

impl ContractionMap {
    pub fn new(g: &MultiGraph) -> Self {
        ContractionMap {
            classes: UnionFind::new(g.node_count()),
            status: vec![ArcStatus::Live; g.arc_count()],
            deleted: 0,
            contracted: 0,
        }
    }

    pub fn status(&self, a: ArcId) -> ArcStatus {
        self.status[a]
    }

    pub fn is_live(&self, a: ArcId) -> bool {
        self.status[a] == ArcStatus::Live
    }

    pub fn deleted_count(&self) -> usize {
        self.deleted
    }

    pub fn contracted_count(&self) -> usize {
        self.contracted
    }

    pub fn deleted_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.status.len()).filter(|&a| self.status[a] == ArcStatus::Deleted)
    }

    pub fn contracted_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.status.len()).filter(|&a| matches!(self.status[a], ArcStatus::Contracted { .. }))
    }

    pub fn class_of(&mut self, v: NodeId) -> NodeId {
        self.classes.find(v)
    }

    pub fn delete(&mut self, a: ArcId) -> Result<(), SolveError> {
        if self.status[a] != ArcStatus::Live {
            return Err(SolveError::Precondition(format!(
                "arc {a} is already {:?}",
                self.status[a]
            )));
        }
        self.status[a] = ArcStatus::Deleted;
        self.deleted += 1;
        Ok(())
    }

    /// Contracts `a`, merging its endpoint classes. Returns whether two
    /// distinct classes were merged.
    pub fn contract(&mut self, g: &MultiGraph, a: ArcId) -> Result<bool, SolveError> {
        if self.status[a] != ArcStatus::Live {
            return Err(SolveError::Precondition(format!(
                "arc {a} is already {:?}",
                self.status[a]
            )));
        }
        let forest = self.classes.union(g.tail(a), g.head(a));
        self.status[a] = ArcStatus::Contracted { forest };
        self.contracted += 1;
        Ok(forest)
    }

    /// Read-only snapshot of the current minor.
    pub fn view(&mut self, g: &MultiGraph) -> MinorView {
        let n = g.node_count();
        let mut index_of_root = vec![usize::MAX; n];
        let mut class_of = vec![0; n];
        let mut classes = 0;
        for v in 0..n {
            let r = self.classes.find(v);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = classes;
                classes += 1;
            }
            class_of[v] = index_of_root[r];
        }
        let arcs: Vec<ArcId> = (0..g.arc_count()).filter(|&a| self.is_live(a)).collect();
        let tails = arcs.iter().map(|&a| class_of[g.tail(a)]).collect();
        let heads = arcs.iter().map(|&a| class_of[g.head(a)]).collect();
        MinorView {
            class_of,
            class_count: classes,
            arcs,
            tails,
            heads,
        }
    }
}

/// The minor obtained by deleting and contracting arcs. Minor nodes are the
/// contraction classes, numbered `0..class_count` by lowest member; minor arcs
/// are indexed `0..arcs.len()` and map back to original ids through `arcs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorView {
    pub class_of: Vec<usize>,
    pub class_count: usize,
    pub arcs: Vec<ArcId>,
    pub tails: Vec<usize>,
    pub heads: Vec<usize>,
}

impl MinorView {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_self_loop(&self, i: usize) -> bool {
        self.tails[i] == self.heads[i]
    }

    /// Incidence over classes for a minor-arc-indexed vector.
    pub fn apply_incidence(&self, x: &[ExactInt]) -> Vec<ExactInt> {
        let mut b = vec![ExactInt::zero(); self.class_count];
        for i in 0..self.arcs.len() {
            if self.tails[i] != self.heads[i] {
                b[self.tails[i]] -= &x[i];
                b[self.heads[i]] += &x[i];
            }
        }
        b
    }

    /// Class-potential differences `pi_head - pi_tail` per minor arc.
    pub fn apply_incidence_transpose(&self, pi: &[ExactInt]) -> Vec<ExactInt> {
        (0..self.arcs.len())
            .map(|i| &pi[self.heads[i]] - &pi[self.tails[i]])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| ExactInt::from(x)).collect()
    }

    fn triangle() -> MultiGraph {
        MultiGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn incidence_examples() {
        let g = MultiGraph::from_arcs(2, &[(0, 1)]);
        assert_eq!(g.apply_incidence(&ints(&[3])), ints(&[-3, 3]));
        let l = MultiGraph::from_arcs(1, &[(0, 0)]);
        assert_eq!(l.apply_incidence(&ints(&[7])), ints(&[0]));
        assert_eq!(triangle().apply_incidence(&ints(&[2, 2, 0])), ints(&[-2, 0, 2]));
    }

    #[test]
    fn transpose_examples() {
        let g = MultiGraph::from_arcs(2, &[(0, 1)]);
        assert_eq!(g.apply_incidence_transpose(&ints(&[0, 5])), ints(&[5]));
        let l = MultiGraph::from_arcs(2, &[(1, 1)]);
        assert_eq!(l.apply_incidence_transpose(&ints(&[0, 5])), ints(&[0]));
        let r = MultiGraph::from_arcs(2, &[(1, 0)]);
        assert_eq!(r.apply_incidence_transpose(&ints(&[0, 5])), ints(&[-5]));
    }

    #[test]
    fn contract_one_arc_of_triangle() {
        let g = triangle();
        let mut map = ContractionMap::new(&g);
        assert!(map.contract(&g, 0).unwrap());
        let view = map.view(&g);
        assert_eq!(view.class_count, 2);
        assert_eq!(view.arcs, vec![1, 2]);
        // both surviving arcs run class{0,1} -> class{2}
        assert_eq!(view.tails, vec![0, 0]);
        assert_eq!(view.heads, vec![1, 1]);
    }

    #[test]
    fn delete_one_arc_of_triangle() {
        let g = triangle();
        let mut map = ContractionMap::new(&g);
        map.delete(2).unwrap();
        assert_eq!(map.view(&g).arcs, vec![0, 1]);
        assert!(map.delete(2).is_err());
        assert!(map.contract(&g, 2).is_err());
    }

    #[test]
    fn contracting_two_arcs_leaves_a_self_loop() {
        let g = triangle();
        let mut map = ContractionMap::new(&g);
        map.contract(&g, 0).unwrap();
        map.contract(&g, 1).unwrap();
        let view = map.view(&g);
        assert_eq!(view.class_count, 1);
        assert_eq!(view.arcs, vec![2]);
        assert!(view.is_self_loop(0));
        // a further contraction inside the class is a chord
        assert!(!map.contract(&g, 2).unwrap());
        assert_eq!(map.status(2), ArcStatus::Contracted { forest: false });
    }

    fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..7).prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..12)))
    }

    proptest! {
        #[test]
        fn incidence_sums_to_zero((n, arcs) in graph_strategy(), seed in any::<u64>()) {
            let g = MultiGraph::from_arcs(n, &arcs);
            let x: Vec<ExactInt> = (0..arcs.len())
                .map(|i| ExactInt::from((seed.wrapping_mul(i as u64 + 7) % 1000) as i64 - 500))
                .collect();
            let b = g.apply_incidence(&x);
            prop_assert!(b.iter().sum::<ExactInt>().is_zero());
        }

        #[test]
        fn minor_arc_accounting((n, arcs) in graph_strategy(), ops in proptest::collection::vec((0usize..12, any::<bool>()), 0..12)) {
            let g = MultiGraph::from_arcs(n, &arcs);
            let mut map = ContractionMap::new(&g);
            for (a, del) in ops {
                if a >= g.arc_count() || !map.is_live(a) { continue; }
                if del { map.delete(a).unwrap(); } else { map.contract(&g, a).unwrap(); }
            }
            let view = map.view(&g);
            prop_assert_eq!(view.arc_count() + map.deleted_count() + map.contracted_count(), g.arc_count());
            // contracted arcs never straddle two classes
            for a in map.contracted_arcs() {
                prop_assert_eq!(view.class_of[g.tail(a)], view.class_of[g.head(a)]);
            }
        }
    }
}
