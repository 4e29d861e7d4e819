//! Spanning trees over a minor: fundamental cycles, cycle resistances, the
//! tree condition number and tree-induced voltages.
//!
//! A minor can lose connectivity when every arc at some class is deleted, so
//! the index is a spanning forest with one root per component. Fundamental
//! cycles and voltages never cross components.

use rand::Rng;

use crate::arith::{ceil_div, gcd, ExactInt};
use crate::error::SolveError;
use crate::graph::{MinorView, UnionFind};

const NO_PARENT: usize = usize::MAX;

/// Rooted spanning forest of a minor, built from minimum total resistance
/// (Kruskal, ties broken by arc id).
#[derive(Clone, Debug)]
pub struct TreeIndex {
    in_tree: Vec<bool>,
    /// Parent arc per node, `NO_PARENT` for roots.
    parent_arc: Vec<usize>,
    parent: Vec<usize>,
    /// +1 when the parent arc points parent -> child.
    parent_sign: Vec<i8>,
    depth: Vec<usize>,
    /// Nodes in root-to-leaf order.
    order: Vec<usize>,
    roots: Vec<usize>,
}

/// Signed arc list of `{a} ∪ P(head(a), tail(a))`, oriented along `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub arc: usize,
    pub arcs: Vec<(usize, i8)>,
    pub resistance: ExactInt,
}

/// Exact nonnegative rational `num / den` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: ExactInt,
    pub den: ExactInt,
}

impl Fraction {
    pub fn zero() -> Self {
        Fraction {
            num: ExactInt::zero(),
            den: ExactInt::one(),
        }
    }

    fn add(&self, num: &ExactInt, den: &ExactInt) -> Fraction {
        let n = &self.num * den + num * &self.den;
        let d = &self.den * den;
        let g = gcd(&n, &d);
        if g.is_zero() {
            return Fraction::zero();
        }
        Fraction {
            num: n.div_floor(&g),
            den: d.div_floor(&g),
        }
    }

    pub fn ceil(&self) -> ExactInt {
        ceil_div(&self.num, &self.den).expect("denominator is positive")
    }
}

impl TreeIndex {
    /// Spanning forest of `minor` minimizing total resistance. Self-loops
    /// never enter the forest.
    pub fn build(minor: &MinorView, r: &[ExactInt]) -> TreeIndex {
        let n = minor.class_count;
        let m = minor.arc_count();
        assert_eq!(r.len(), m);
        let mut by_resistance: Vec<usize> = (0..m).filter(|&i| !minor.is_self_loop(i)).collect();
        by_resistance.sort_by(|&a, &b| r[a].cmp(&r[b]).then(a.cmp(&b)));
        let mut uf = UnionFind::new(n);
        let mut in_tree = vec![false; m];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in by_resistance {
            if uf.union(minor.tails[i], minor.heads[i]) {
                in_tree[i] = true;
                adj[minor.tails[i]].push(i);
                adj[minor.heads[i]].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut parent_arc = vec![NO_PARENT; n];
        let mut parent = vec![NO_PARENT; n];
        let mut parent_sign = vec![0i8; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut roots = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            roots.push(root);
            let start = order.len();
            order.push(root);
            let mut head = start;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &i in &adj[v] {
                    let (t, h) = (minor.tails[i], minor.heads[i]);
                    let w = if t == v { h } else { t };
                    if seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    parent_arc[w] = i;
                    parent[w] = v;
                    parent_sign[w] = if t == v { 1 } else { -1 };
                    depth[w] = depth[v] + 1;
                    order.push(w);
                }
            }
        }
        TreeIndex {
            in_tree,
            parent_arc,
            parent,
            parent_sign,
            depth,
            order,
            roots,
        }
    }

    pub fn in_tree(&self, i: usize) -> bool {
        self.in_tree[i]
    }

    pub fn tree_arcs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.in_tree.len()).filter(|&i| self.in_tree[i])
    }

    pub fn off_tree_arcs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.in_tree.len()).filter(|&i| !self.in_tree[i])
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Signed cycle closed by the off-tree arc `i`, with its resistance.
    pub fn fundamental_cycle(
        &self,
        minor: &MinorView,
        i: usize,
        r: &[ExactInt],
    ) -> Result<FundamentalCycle, SolveError> {
        if self.in_tree[i] {
            return Err(SolveError::Precondition(format!(
                "minor arc {i} is a tree arc and closes no cycle"
            )));
        }
        let (v, w) = (minor.tails[i], minor.heads[i]);
        let mut arcs = vec![(i, 1i8)];
        // Walk from w up to the meeting point (against the parent
        // orientation), and from v up (these arcs are traversed downward).
        let (mut a, mut b) = (w, v);
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                if self.parent[a] == NO_PARENT {
                    return Err(SolveError::Invariant(format!(
                        "minor arc {i} joins two components of the forest"
                    )));
                }
                arcs.push((self.parent_arc[a], -self.parent_sign[a]));
                a = self.parent[a];
            } else {
                if self.parent[b] == NO_PARENT {
                    return Err(SolveError::Invariant(format!(
                        "minor arc {i} joins two components of the forest"
                    )));
                }
                down.push((self.parent_arc[b], self.parent_sign[b]));
                b = self.parent[b];
            }
        }
        arcs.extend(down.into_iter().rev());
        let resistance = arcs.iter().map(|&(j, _)| &r[j]).sum();
        Ok(FundamentalCycle {
            arc: i,
            arcs,
            resistance,
        })
    }

    /// `π_v`: signed sum of `r_a φ_a` along the tree path from the root of
    /// `v`'s component, so that `π_head - π_tail = r_a φ_a` on tree arcs.
    pub fn voltages(&self, minor: &MinorView, phi: &[ExactInt], r: &[ExactInt]) -> Vec<ExactInt> {
        let mut pi = vec![ExactInt::zero(); self.parent.len()];
        for &v in &self.order {
            let i = self.parent_arc[v];
            if i == NO_PARENT {
                continue;
            }
            let drop = &r[i] * &phi[i];
            let p = self.parent[v];
            debug_assert!(minor.tails[i] == p || minor.heads[i] == p);
            pi[v] = if self.parent_sign[v] > 0 {
                &pi[p] + &drop
            } else {
                &pi[p] - &drop
            };
        }
        pi
    }
}

/// `τ(T) = Σ_{a off-tree} r(C_a) / r_a`, exactly.
pub fn tree_condition_number(cycles: &[FundamentalCycle], r: &[ExactInt]) -> Fraction {
    cycles
        .iter()
        .fold(Fraction::zero(), |acc, c| acc.add(&c.resistance, &r[c.arc]))
}

/// Integer sampling weights `ceil(r(C_a) / r_a)`, one per cycle.
pub fn sampling_weights(cycles: &[FundamentalCycle], r: &[ExactInt]) -> Vec<ExactInt> {
    cycles
        .iter()
        .map(|c| ceil_div(&c.resistance, &r[c.arc]).expect("resistances are positive"))
        .collect()
}

/// Prefix sums for proportional sampling.
#[derive(Clone, Debug)]
pub struct WeightedSampler {
    prefix: Vec<ExactInt>,
    small: Option<Vec<u64>>,
}

impl WeightedSampler {
    pub fn new(weights: &[ExactInt]) -> Self {
        let mut prefix = Vec::with_capacity(weights.len());
        let mut acc = ExactInt::zero();
        for w in weights {
            acc += w;
            prefix.push(acc.clone());
        }
        let small = prefix
            .iter()
            .map(|p| p.to_i64().and_then(|v| u64::try_from(v).ok()))
            .collect::<Option<Vec<u64>>>();
        WeightedSampler { prefix, small }
    }

    pub fn total(&self) -> ExactInt {
        self.prefix.last().cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Index `k` with probability `w_k / Σ w`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        assert!(!self.prefix.is_empty(), "sampling from an empty sampler");
        if let Some(prefix) = &self.small {
            let ticket = rng.gen_range(0..*prefix.last().unwrap());
            return prefix.partition_point(|&p| p <= ticket);
        }
        let ticket = uniform_below(rng, &self.total());
        self.prefix.partition_point(|p| *p <= ticket)
    }
}

/// Uniform integer in `[0, bound)` by rejection over the bit length.
fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &ExactInt) -> ExactInt {
    let bits = bound.bits();
    loop {
        let mut v = ExactInt::zero();
        let mut left = bits;
        while left > 0 {
            let take = left.min(32);
            let chunk = rng.gen::<u32>() as u64 & ((1u64 << take) - 1);
            v = v * ExactInt::pow2(take as u32) + ExactInt::from(chunk);
            left -= take;
        }
        if v < *bound {
            return v;
        }
    }
}
