//! Independent ground truth: successive shortest paths, an exact
//! complementary-slackness verifier and a seeded instance generator.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::ExactInt;
use crate::instance::{RawArc, RawInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSolution {
    Optimal {
        flow: Vec<ExactInt>,
        objective: ExactInt,
        potential: Vec<ExactInt>,
    },
    Infeasible,
}

impl OracleSolution {
    pub fn objective(&self) -> Option<&ExactInt> {
        match self {
            OracleSolution::Optimal { objective, .. } => Some(objective),
            OracleSolution::Infeasible => None,
        }
    }
}

/// Residual arc `k`: forward arc of raw arc `k/2` if `k` is even.
struct Residual<'a> {
    inst: &'a RawInstance,
    flow: Vec<ExactInt>,
}

impl Residual<'_> {
    fn len(&self) -> usize {
        2 * self.inst.arc_count()
    }

    fn ends(&self, k: usize) -> (usize, usize) {
        let (t, h) = (self.inst.graph.tail(k / 2), self.inst.graph.head(k / 2));
        if k.is_multiple_of(2) {
            (t, h)
        } else {
            (h, t)
        }
    }

    fn cap(&self, k: usize) -> ExactInt {
        if k.is_multiple_of(2) {
            &self.inst.capacity[k / 2] - &self.flow[k / 2]
        } else {
            self.flow[k / 2].clone()
        }
    }

    fn cost(&self, k: usize) -> ExactInt {
        if k.is_multiple_of(2) {
            self.inst.cost[k / 2].clone()
        } else {
            -self.inst.cost[k / 2].clone()
        }
    }

    /// Bellman-Ford distances from all nodes in `sources` at distance 0.
    fn distances(&self, sources: &[bool]) -> (Vec<Option<ExactInt>>, Vec<Option<usize>>) {
        let n = self.inst.node_count();
        let mut dist: Vec<Option<ExactInt>> = sources
            .iter()
            .map(|&s| if s { Some(ExactInt::zero()) } else { None })
            .collect();
        let mut pred = vec![None; n];
        for _ in 0..n {
            let mut changed = false;
            for k in 0..self.len() {
                if !self.cap(k).is_positive() {
                    continue;
                }
                let (t, h) = self.ends(k);
                let Some(dt) = &dist[t] else { continue };
                let cand = dt + &self.cost(k);
                if dist[h].as_ref().is_none_or(|dh| cand < *dh) {
                    dist[h] = Some(cand);
                    pred[h] = Some(k);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (dist, pred)
    }
}

/// Successive shortest paths after saturating every negative-cost arc.
pub fn ssp_solve(inst: &RawInstance) -> OracleSolution {
    let n = inst.node_count();
    let flow: Vec<ExactInt> = (0..inst.arc_count())
        .map(|a| {
            if inst.cost[a].is_negative() {
                inst.capacity[a].clone()
            } else {
                ExactInt::zero()
            }
        })
        .collect();
    let mut res = Residual { inst, flow };
    loop {
        let ax = inst.graph.apply_incidence(&res.flow);
        // Positive: node still needs inflow; negative: node has surplus.
        let deficit: Vec<ExactInt> = inst.demand.iter().zip(&ax).map(|(b, a)| b - a).collect();
        if deficit.iter().all(|d| d.is_zero()) {
            break;
        }
        let sources: Vec<bool> = deficit.iter().map(|d| d.is_negative()).collect();
        let (dist, pred) = res.distances(&sources);
        let target = (0..n)
            .filter(|&v| deficit[v].is_positive() && dist[v].is_some())
            .min_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)));
        let Some(target) = target else {
            return OracleSolution::Infeasible;
        };
        let mut path = Vec::new();
        let mut v = target;
        while let Some(k) = pred[v] {
            path.push(k);
            v = res.ends(k).0;
            assert!(path.len() <= n, "shortest-path predecessors form a cycle");
        }
        let mut amount = deficit[target].clone().min(-deficit[v].clone());
        for &k in &path {
            amount = amount.min(res.cap(k));
        }
        for &k in &path {
            if k % 2 == 0 {
                res.flow[k / 2] += &amount;
            } else {
                res.flow[k / 2] -= &amount;
            }
        }
    }
    let (dist, _) = res.distances(&vec![true; n]);
    let potential: Vec<ExactInt> = dist.into_iter().map(|d| d.unwrap_or_default()).collect();
    let objective = inst.objective(&res.flow);
    OracleSolution::Optimal {
        flow: res.flow,
        objective,
        potential,
    }
}

/// Outcome of the five exact optimality checks for a capacitated instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateReport {
    pub conservation: bool,
    pub capacity: bool,
    /// `x_a = 0 ⇒ d_a ≥ 0`.
    pub at_lower: bool,
    /// `x_a = u_a ⇒ d_a ≤ 0`.
    pub at_upper: bool,
    /// `0 < x_a < u_a ⇒ d_a = 0`.
    pub interior: bool,
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.conservation && self.capacity && self.at_lower && self.at_upper && self.interior
    }
}

/// Verify `(x, y)` against `inst` with reduced costs
/// `d_a = c_a - (y_head - y_tail)`.
pub fn verify_certificate(inst: &RawInstance, x: &[ExactInt], y: &[ExactInt]) -> CertificateReport {
    let mut r = CertificateReport {
        conservation: true,
        capacity: true,
        at_lower: true,
        at_upper: true,
        interior: true,
        failures: Vec::new(),
    };
    if x.len() != inst.arc_count() || y.len() != inst.node_count() {
        r.conservation = false;
        r.failures.push("solution vectors have the wrong length".into());
        return r;
    }
    let ax = inst.graph.apply_incidence(x);
    for v in 0..inst.node_count() {
        if ax[v] != inst.demand[v] {
            r.conservation = false;
            r.failures.push(format!("node {v}: net inflow {} != demand {}", ax[v], inst.demand[v]));
        }
    }
    let dy = inst.graph.apply_incidence_transpose(y);
    for a in 0..inst.arc_count() {
        let (f, u) = (&x[a], &inst.capacity[a]);
        if f.is_negative() || f > u {
            r.capacity = false;
            r.failures.push(format!("arc {a}: flow {f} outside [0, {u}]"));
            continue;
        }
        if u.is_zero() {
            continue;
        }
        let d = &inst.cost[a] - &dy[a];
        if f.is_zero() {
            if d.is_negative() {
                r.at_lower = false;
                r.failures.push(format!("arc {a}: empty with reduced cost {d}"));
            }
        } else if f == u {
            if d.is_positive() {
                r.at_upper = false;
                r.failures.push(format!("arc {a}: saturated with reduced cost {d}"));
            }
        } else if !d.is_zero() {
            r.interior = false;
            r.failures.push(format!("arc {a}: interior flow with reduced cost {d}"));
        }
    }
    r
}

/// True when the optimal flow is the only optimal flow: no cycle of
/// zero-reduced-cost residual arcs exists.
pub fn has_unique_optimal_flow(inst: &RawInstance, x: &[ExactInt], y: &[ExactInt]) -> bool {
    let res = Residual {
        inst,
        flow: x.to_vec(),
    };
    let dy = inst.graph.apply_incidence_transpose(y);
    let tight: Vec<usize> = (0..res.len())
        .filter(|&k| res.cap(k).is_positive() && (&inst.cost[k / 2] - &dy[k / 2]).is_zero())
        .collect();
    let n = inst.node_count();
    for &k in &tight {
        let (t, h) = res.ends(k);
        // Path h -> t avoiding both directions of arc k/2.
        let mut seen = vec![false; n];
        seen[h] = true;
        let mut queue = VecDeque::from([h]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                return false;
            }
            for &j in &tight {
                let (a, b) = res.ends(j);
                if a == v && j / 2 != k / 2 && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Demands are the boundary of a random flow within capacities.
    Feasible,
    /// Demands are arbitrary zero-sum values.
    Raw,
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorParams {
    pub nodes: usize,
    pub arcs: usize,
    pub max_capacity: i64,
    pub max_cost: i64,
    pub mode: GeneratorMode,
}

/// Random multigraph instance: a random spanning tree (as far as the arc
/// budget allows) plus random extra arcs between distinct nodes.
pub fn random_instance(seed: u64, p: &GeneratorParams) -> RawInstance {
    assert!(p.nodes >= 2, "generator needs at least two nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ends = Vec::with_capacity(p.arcs);
    for v in 1..p.nodes.min(p.arcs + 1) {
        let w = rng.gen_range(0..v);
        ends.push(if rng.gen_bool(0.5) { (v, w) } else { (w, v) });
    }
    while ends.len() < p.arcs {
        let t = rng.gen_range(0..p.nodes);
        let mut h = rng.gen_range(0..p.nodes - 1);
        if h >= t {
            h += 1;
        }
        ends.push((t, h));
    }
    let arcs: Vec<RawArc> = ends
        .into_iter()
        .map(|(t, h)| {
            RawArc::new(
                t,
                h,
                rng.gen_range(1..=p.max_capacity.max(1)),
                rng.gen_range(-p.max_cost..=p.max_cost),
            )
        })
        .collect();
    let demand = match p.mode {
        GeneratorMode::Feasible => {
            let witness: Vec<ExactInt> = arcs
                .iter()
                .map(|a| ExactInt::from(rng.gen_range(0..=a.capacity.to_i64().unwrap_or(0))))
                .collect();
            let g = crate::graph::MultiGraph::from_arcs(
                p.nodes,
                &arcs.iter().map(|a| (a.tail, a.head)).collect::<Vec<_>>(),
            );
            g.apply_incidence(&witness)
        }
        GeneratorMode::Raw => {
            let mut d: Vec<ExactInt> = (0..p.nodes - 1)
                .map(|_| ExactInt::from(rng.gen_range(-p.max_capacity..=p.max_capacity)))
                .collect();
            let total: ExactInt = d.iter().sum();
            d.push(-total);
            d
        }
    };
    RawInstance::new(demand, arcs)
}
