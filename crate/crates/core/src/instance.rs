//! Raw capacitated instances, their normalization and scaling, and the
//! uncapacitated auxiliary instance with its interior starting point.

use std::collections::VecDeque;

use crate::arith::{ceil_div, gcd_all, next_pow2, ExactInt};
use crate::error::SolveError;
use crate::graph::{ArcId, MultiGraph, NodeId};

/// Capacitated min-cost flow instance: minimize `cᵀx` subject to
/// `A x = b`, `0 ≤ x ≤ u`, where `(A x)_v` is inflow minus outflow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInstance {
    pub graph: MultiGraph,
    pub demand: Vec<ExactInt>,
    pub capacity: Vec<ExactInt>,
    pub cost: Vec<ExactInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: ExactInt,
    pub cost: ExactInt,
}

impl RawArc {
    pub fn new(tail: NodeId, head: NodeId, capacity: impl Into<ExactInt>, cost: impl Into<ExactInt>) -> Self {
        RawArc {
            tail,
            head,
            capacity: capacity.into(),
            cost: cost.into(),
        }
    }
}

impl RawInstance {
    pub fn new(demand: Vec<ExactInt>, arcs: Vec<RawArc>) -> Self {
        let mut graph = MultiGraph::new(demand.len());
        let mut capacity = Vec::with_capacity(arcs.len());
        let mut cost = Vec::with_capacity(arcs.len());
        for a in arcs {
            graph.add_arc(a.tail, a.head);
            capacity.push(a.capacity);
            cost.push(a.cost);
        }
        RawInstance {
            graph,
            demand,
            capacity,
            cost,
        }
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn arc(&self, a: ArcId) -> RawArc {
        RawArc {
            tail: self.graph.tail(a),
            head: self.graph.head(a),
            capacity: self.capacity[a].clone(),
            cost: self.cost[a].clone(),
        }
    }

    /// Demands sum to zero, capacities are nonnegative and all vectors have
    /// consistent lengths.
    pub fn validate(&self) -> Result<(), SolveError> {
        if self.demand.len() != self.graph.node_count() {
            return Err(SolveError::InvalidInstance("demand vector length differs from node count".into()));
        }
        if self.capacity.len() != self.graph.arc_count() || self.cost.len() != self.graph.arc_count() {
            return Err(SolveError::InvalidInstance("arc data length differs from arc count".into()));
        }
        let total: ExactInt = self.demand.iter().sum();
        if !total.is_zero() {
            return Err(SolveError::InvalidInstance(format!("demands sum to {total}, not 0")));
        }
        if let Some(a) = self.capacity.iter().position(|u| u.is_negative()) {
            return Err(SolveError::InvalidInstance(format!("arc {a} has negative capacity")));
        }
        Ok(())
    }

    pub fn objective(&self, flow: &[ExactInt]) -> ExactInt {
        self.cost.iter().zip(flow).map(|(c, x)| c * x).sum()
    }
}

/// A weakly connected piece of a raw instance after zero-capacity arcs are
/// dropped, with the raw ids of its nodes and arcs.
#[derive(Clone, Debug)]
pub struct Component {
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<ArcId>,
    pub instance: RawInstance,
}

/// Drop zero-capacity arcs and split the rest into weakly connected
/// components, ordered by lowest raw node id.
pub fn split_components(raw: &RawInstance) -> Vec<Component> {
    let kept: Vec<ArcId> = (0..raw.arc_count()).filter(|&a| raw.capacity[a].is_positive()).collect();
    let pruned = MultiGraph::from_arcs(
        raw.node_count(),
        &kept.iter().map(|&a| (raw.graph.tail(a), raw.graph.head(a))).collect::<Vec<_>>(),
    );
    let (count, comp) = pruned.weak_components();
    let mut nodes = vec![Vec::new(); count];
    let mut local = vec![0; raw.node_count()];
    for v in 0..raw.node_count() {
        local[v] = nodes[comp[v]].len();
        nodes[comp[v]].push(v);
    }
    let mut arcs = vec![Vec::new(); count];
    for &a in &kept {
        arcs[comp[raw.graph.tail(a)]].push(a);
    }
    nodes
        .into_iter()
        .zip(arcs)
        .map(|(nodes, arcs)| {
            let demand = nodes.iter().map(|&v| raw.demand[v].clone()).collect();
            let list = arcs
                .iter()
                .map(|&a| {
                    let mut arc = raw.arc(a);
                    arc.tail = local[arc.tail];
                    arc.head = local[arc.head];
                    arc
                })
                .collect();
            Component {
                instance: RawInstance::new(demand, list),
                nodes,
                arcs,
            }
        })
        .collect()
}

/// An instance with nonnegative costs plus the record needed to translate
/// flows back.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub instance: RawInstance,
    pub reversed: Vec<bool>,
    /// `Σ c_a u_a` over reversed arcs (original costs).
    pub offset: ExactInt,
}

impl Normalized {
    /// Flow on the original arcs from flow on the normalized arcs.
    pub fn restore_flow(&self, flow: &[ExactInt]) -> Vec<ExactInt> {
        flow.iter()
            .enumerate()
            .map(|(a, x)| {
                if self.reversed[a] {
                    &self.instance.capacity[a] - x
                } else {
                    x.clone()
                }
            })
            .collect()
    }
}

/// Replace every negative-cost arc by its reversal, saturating the original.
pub fn normalize_costs(inst: &RawInstance) -> Normalized {
    let mut demand = inst.demand.clone();
    let mut arcs = Vec::with_capacity(inst.arc_count());
    let mut reversed = Vec::with_capacity(inst.arc_count());
    let mut offset = ExactInt::zero();
    for a in 0..inst.arc_count() {
        let arc = inst.arc(a);
        if arc.cost.is_negative() {
            demand[arc.tail] += &arc.capacity;
            demand[arc.head] -= &arc.capacity;
            offset += &arc.cost * &arc.capacity;
            arcs.push(RawArc {
                tail: arc.head,
                head: arc.tail,
                capacity: arc.capacity,
                cost: -arc.cost,
            });
            reversed.push(true);
        } else {
            arcs.push(arc);
            reversed.push(false);
        }
    }
    Normalized {
        instance: RawInstance::new(demand, arcs),
        reversed,
        offset,
    }
}

#[derive(Clone, Debug)]
pub struct Downscaled {
    pub instance: RawInstance,
    pub beta0: ExactInt,
    pub gamma0: ExactInt,
    /// `max(‖u‖∞, ‖b‖₁/2)` of the downscaled instance.
    pub u_bound: ExactInt,
    /// `‖c‖∞` of the downscaled instance, at least 1.
    pub c_bound: ExactInt,
}

/// Divide out `β₀ = gcd(b, u)` and `γ₀ = gcd(c)`.
pub fn downscale(inst: &RawInstance) -> Downscaled {
    let beta0 = gcd_all(inst.demand.iter().chain(&inst.capacity));
    let beta0 = if beta0.is_zero() { ExactInt::one() } else { beta0 };
    let gamma0 = gcd_all(&inst.cost);
    let gamma0 = if gamma0.is_zero() { ExactInt::one() } else { gamma0 };
    let demand: Vec<ExactInt> = inst.demand.iter().map(|b| b.div_floor(&beta0)).collect();
    let arcs: Vec<RawArc> = (0..inst.arc_count())
        .map(|a| {
            let arc = inst.arc(a);
            RawArc {
                capacity: arc.capacity.div_floor(&beta0),
                cost: arc.cost.div_floor(&gamma0),
                ..arc
            }
        })
        .collect();
    let u_inf = arcs.iter().map(|a| a.capacity.clone()).max().unwrap_or_default();
    let b_half = demand.iter().map(|b| b.abs()).sum::<ExactInt>().div_floor(&ExactInt::from(2));
    let c_inf = arcs.iter().map(|a| a.cost.abs()).max().unwrap_or_default();
    Downscaled {
        instance: RawInstance::new(demand, arcs),
        beta0,
        gamma0,
        u_bound: u_inf.max(b_half).max(ExactInt::one()),
        c_bound: c_inf.max(ExactInt::one()),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ScalingMode {
    /// `γ = 2^15 m^4 β U C`.
    #[default]
    Standard,
    /// `γ = 2^20 m^5 β U C`.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingCertificate {
    pub beta0: ExactInt,
    pub gamma0: ExactInt,
    pub beta: ExactInt,
    pub gamma: ExactInt,
    /// Arc-count bound `3 m₀` used in every formula.
    pub m: ExactInt,
    pub u: ExactInt,
    pub c: ExactInt,
    pub t: ExactInt,
    pub mu0: ExactInt,
}

impl ScalingCertificate {
    /// `β γ U C`.
    pub fn beta_gamma_uc(&self) -> ExactInt {
        &self.beta * &self.gamma * &self.u * &self.c
    }

    pub fn m_usize(&self) -> usize {
        self.m.to_i64().expect("arc count fits in i64") as usize
    }
}

pub fn compute_scaling(
    m0: usize,
    u: &ExactInt,
    c: &ExactInt,
    beta0: &ExactInt,
    gamma0: &ExactInt,
    mode: ScalingMode,
) -> ScalingCertificate {
    let m = ExactInt::from(3 * m0);
    let beta = next_pow2(&(ExactInt::pow2(8) * m.pow(3)));
    let gamma = match mode {
        ScalingMode::Standard => ExactInt::pow2(15) * m.pow(4),
        ScalingMode::Strict => ExactInt::pow2(20) * m.pow(5),
    } * &beta
        * u
        * c;
    let bguc = &beta * &gamma * u * c;
    let mu0 = &m * &bguc * 24;
    let t = &mu0 - &(&bguc * 2);
    ScalingCertificate {
        beta0: beta0.clone(),
        gamma0: gamma0.clone(),
        beta,
        gamma,
        m,
        u: u.clone(),
        c: c.clone(),
        t,
        mu0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcRole {
    /// `(v, vw)` carrying the original flow, cost `c_a`.
    Up(ArcId),
    /// `(w, vw)` carrying `u_a` minus the original flow, cost 0.
    Down(ArcId),
    /// Expensive artificial arc between the original endpoints.
    Hat(ArcId),
}

/// Uncapacitated instance over the original nodes `0..n₀` and one node
/// `n₀ + a` per original arc `a`. Arc `2a` is up(a), `2a + 1` is down(a);
/// hat arcs follow in original-arc order.
#[derive(Clone, Debug)]
pub struct AuxiliaryInstance {
    pub graph: MultiGraph,
    pub demand: Vec<ExactInt>,
    pub cost: Vec<ExactInt>,
    pub roles: Vec<ArcRole>,
    pub original_nodes: usize,
}

impl AuxiliaryInstance {
    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn hat_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.roles.len()).filter(|&a| matches!(self.roles[a], ArcRole::Hat(_)))
    }
}

#[derive(Clone, Debug)]
pub struct InitialPoint {
    pub x: Vec<ExactInt>,
    pub s: Vec<ExactInt>,
    pub y: Vec<ExactInt>,
    pub mu: ExactInt,
}

/// BFS spanning tree from node 0 and the tree solution `z` with `A z = b`
/// (possibly negative). `inst` must be weakly connected.
pub fn tree_solution(inst: &RawInstance) -> Result<Vec<ExactInt>, SolveError> {
    let n = inst.node_count();
    let mut z = vec![ExactInt::zero(); inst.arc_count()];
    if n == 0 {
        return Ok(z);
    }
    let mut adj = vec![Vec::new(); n];
    for (a, t, h) in inst.graph.arcs() {
        adj[t].push(a);
        adj[h].push(a);
    }
    let mut parent: Vec<Option<ArcId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &a in &adj[v] {
            let w = if inst.graph.tail(a) == v { inst.graph.head(a) } else { inst.graph.tail(a) };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(a);
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(SolveError::Precondition("instance is not weakly connected".into()));
    }
    let mut need = inst.demand.clone();
    for &v in order.iter().rev() {
        let Some(a) = parent[v] else { continue };
        let r = std::mem::take(&mut need[v]);
        if inst.graph.head(a) == v {
            need[inst.graph.tail(a)] += &r;
            z[a] = r;
        } else {
            need[inst.graph.head(a)] += &r;
            z[a] = -r;
        }
    }
    if !need[0].is_zero() {
        return Err(SolveError::Precondition("demands do not sum to zero".into()));
    }
    Ok(z)
}

/// Build the auxiliary instance for a connected downscaled instance with
/// nonnegative costs, together with its initial point for `μ₀`.
pub fn build_auxiliary(
    inst: &RawInstance,
    cert: &ScalingCertificate,
) -> Result<(AuxiliaryInstance, InitialPoint), SolveError> {
    let n0 = inst.node_count();
    let m0 = inst.arc_count();
    if inst.cost.iter().any(|c| c.is_negative()) {
        return Err(SolveError::Precondition("auxiliary construction needs nonnegative costs".into()));
    }
    let beta = &cert.beta;
    let gamma = &cert.gamma;
    let b: Vec<ExactInt> = inst.demand.iter().map(|v| v * beta).collect();
    let u: Vec<ExactInt> = inst.capacity.iter().map(|v| v * beta).collect();
    let c: Vec<ExactInt> = inst.cost.iter().map(|v| v * gamma).collect();
    let scaled = RawInstance {
        graph: inst.graph.clone(),
        demand: b.clone(),
        capacity: u.clone(),
        cost: c.clone(),
    };
    let z = tree_solution(&scaled)?;

    let mut graph = MultiGraph::new(n0 + m0);
    let mut demand = vec![ExactInt::zero(); n0 + m0];
    demand[..n0].clone_from_slice(&b);
    let mut cost = Vec::with_capacity(3 * m0);
    let mut roles = Vec::with_capacity(3 * m0);
    let mut x = Vec::with_capacity(3 * m0);
    let mut y = vec![ExactInt::zero(); n0 + m0];
    let two = ExactInt::from(2);
    let two_t = &cert.t * 2;
    for a in 0..m0 {
        let (v, w) = (inst.graph.tail(a), inst.graph.head(a));
        let vw = n0 + a;
        demand[w] -= &u[a];
        demand[vw] = u[a].clone();
        let half = u[a].div_floor(&two);
        graph.add_arc(v, vw);
        cost.push(c[a].clone());
        roles.push(ArcRole::Up(a));
        x.push(half.clone());
        graph.add_arc(w, vw);
        cost.push(ExactInt::zero());
        roles.push(ArcRole::Down(a));
        x.push(half);
        y[vw] = -ceil_div(&two_t, &u[a])?;
    }
    for a in 0..m0 {
        let d = &z[a] - &x[2 * a];
        if d.is_zero() {
            continue;
        }
        let (v, w) = (inst.graph.tail(a), inst.graph.head(a));
        if d.is_positive() {
            graph.add_arc(v, w);
        } else {
            graph.add_arc(w, v);
        }
        let xh = d.abs();
        cost.push(gamma * &ceil_div(&cert.t, &(gamma * &xh))?);
        roles.push(ArcRole::Hat(a));
        x.push(xh);
    }
    let dy = graph.apply_incidence_transpose(&y);
    let s: Vec<ExactInt> = cost.iter().zip(&dy).map(|(c, d)| c - d).collect();
    let aux = AuxiliaryInstance {
        graph,
        demand,
        cost,
        roles,
        original_nodes: n0,
    };
    let init = InitialPoint {
        x,
        s,
        y,
        mu: cert.mu0.clone(),
    };
    verify_initial_point(&aux, &init, cert)?;
    Ok((aux, init))
}

/// Exact checks on a constructed initial point: feasibility, positivity,
/// `x_a s_a ∈ [t, t + 2βγUC]`, centrality and hat-cost dominance.
pub fn verify_initial_point(
    aux: &AuxiliaryInstance,
    init: &InitialPoint,
    cert: &ScalingCertificate,
) -> Result<(), SolveError> {
    let fail = |msg: String| Err(SolveError::Invariant(format!("initial point: {msg}")));
    if aux.graph.apply_incidence(&init.x) != aux.demand {
        return fail("A x != b".into());
    }
    let dy = aux.graph.apply_incidence_transpose(&init.y);
    for a in 0..aux.arc_count() {
        if &dy[a] + &init.s[a] != aux.cost[a] {
            return fail(format!("dual residual on arc {a}"));
        }
    }
    let hi = &cert.t + &(cert.beta_gamma_uc() * 2);
    let mut dev = ExactInt::zero();
    for a in 0..aux.arc_count() {
        if !init.x[a].is_positive() || !init.s[a].is_positive() {
            return fail(format!("nonpositive value on arc {a}"));
        }
        let p = &init.x[a] * &init.s[a];
        if p < cert.t || p > hi {
            return fail(format!("product on arc {a} outside [t, t+2βγUC]"));
        }
        dev += (p - &init.mu).abs();
    }
    if dev * 8 > init.mu {
        return fail("8·Σ|x s - μ₀| > μ₀".into());
    }
    let plain: ExactInt = aux
        .roles
        .iter()
        .zip(&aux.cost)
        .filter(|(r, _)| !matches!(r, ArcRole::Hat(_)))
        .map(|(_, c)| c.clone())
        .sum();
    if let Some(h) = aux.hat_arcs().find(|&h| aux.cost[h] <= plain) {
        return fail(format!("hat arc {h} is not more expensive than all other arcs together"));
    }
    Ok(())
}

/// Solution of a downscaled, normalized component in its own units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentSolution {
    Optimal {
        /// Flow per arc of the normalized instance, undoing the `β₀` scaling.
        flow: Vec<ExactInt>,
        /// Node potentials, undoing the `γ₀` scaling.
        potential: Vec<ExactInt>,
    },
    Infeasible,
}

/// Map an optimal auxiliary pair back: `flow_a = x_up(a) / β · β₀`,
/// `y_v = y_T(v) / γ · γ₀`; positive hat flow means infeasible.
pub fn unscale_solution(
    aux: &AuxiliaryInstance,
    cert: &ScalingCertificate,
    x: &[ExactInt],
    y: &[ExactInt],
) -> Result<ComponentSolution, SolveError> {
    if aux.hat_arcs().any(|h| x[h].is_positive()) {
        return Ok(ComponentSolution::Infeasible);
    }
    let mut flow = Vec::new();
    for (a, role) in aux.roles.iter().enumerate() {
        if let ArcRole::Up(_) = role {
            if !x[a].is_multiple_of(&cert.beta) {
                return Err(SolveError::Invariant(format!("flow on arc {a} is not a multiple of β")));
            }
            flow.push(x[a].div_floor(&cert.beta) * &cert.beta0);
        }
    }
    let mut potential = Vec::with_capacity(aux.original_nodes);
    for (v, yv) in y.iter().take(aux.original_nodes).enumerate() {
        if !yv.is_multiple_of(&cert.gamma) {
            return Err(SolveError::Invariant(format!("potential of node {v} is not a multiple of γ")));
        }
        potential.push(yv.div_floor(&cert.gamma) * &cert.gamma0);
    }
    Ok(ComponentSolution::Optimal { flow, potential })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| e(x)).collect()
    }

    fn e1() -> RawInstance {
        RawInstance::new(
            ints(&[-2, 0, 2]),
            vec![RawArc::new(0, 1, 2, 1), RawArc::new(1, 2, 2, 1), RawArc::new(0, 2, 1, 3)],
        )
    }

    #[test]
    fn reversal_of_a_negative_arc() {
        let inst = RawInstance::new(ints(&[-3, 3]), vec![RawArc::new(0, 1, 3, -2)]);
        let n = normalize_costs(&inst);
        assert_eq!(n.instance.arc(0), RawArc::new(1, 0, 3, 2));
        assert_eq!(n.instance.demand, ints(&[0, 0]));
        assert_eq!(n.offset, e(-6));
        assert_eq!(n.restore_flow(&ints(&[0])), ints(&[3]));
    }

    #[test]
    fn nonnegative_instance_is_unchanged() {
        let n = normalize_costs(&e1());
        assert_eq!(n.instance, e1());
        assert!(n.offset.is_zero());
    }

    #[test]
    fn downscale_examples() {
        let d = downscale(&RawInstance::new(ints(&[-4, 4]), vec![RawArc::new(0, 1, 4, 6)]));
        assert_eq!((d.beta0.clone(), d.gamma0.clone()), (e(4), e(6)));
        assert_eq!((d.u_bound.clone(), d.c_bound.clone()), (e(1), e(1)));
        let d = downscale(&RawInstance::new(ints(&[0, 0]), vec![RawArc::new(0, 1, 1, 0), RawArc::new(1, 0, 1, 6)]));
        assert_eq!(d.gamma0, e(6));
        let d = downscale(&e1());
        assert_eq!((d.beta0, d.gamma0), (e(1), e(1)));
        assert_eq!(d.instance, e1());
    }

    #[test]
    fn scaling_examples() {
        let cert = compute_scaling(1, &e(1), &e(1), &e(1), &e(1), ScalingMode::Standard);
        assert_eq!(cert.beta, e(8192));
        assert_eq!(cert.gamma, e(21_743_271_936));
        assert_eq!(cert.mu0, cert.beta_gamma_uc() * 24 * 3);
        let strict = compute_scaling(1, &e(1), &e(1), &e(1), &e(1), ScalingMode::Strict);
        assert_eq!(strict.gamma, ExactInt::pow2(20) * 243 * 8192);
    }

    #[test]
    fn tree_solution_satisfies_demands() {
        let inst = e1();
        let z = tree_solution(&inst).unwrap();
        assert_eq!(inst.graph.apply_incidence(&z), inst.demand);
        // BFS from 0 uses arcs 0 and 2; arc 1 is off-tree.
        assert_eq!(z, ints(&[0, 0, 2]));
    }

    #[test]
    fn auxiliary_instance_of_e1() {
        let d = downscale(&e1());
        let cert = compute_scaling(3, &d.u_bound, &d.c_bound, &d.beta0, &d.gamma0, ScalingMode::Standard);
        let (aux, init) = build_auxiliary(&d.instance, &cert).unwrap();
        assert_eq!(aux.node_count(), 6);
        // z = (0, 0, 2β) vs u/2 = (β, β, β/2): three hats.
        assert_eq!(aux.arc_count(), 9);
        assert_eq!(aux.roles[6], ArcRole::Hat(0));
        assert_eq!((aux.graph.tail(6), aux.graph.head(6)), (1, 0));
        assert_eq!((aux.graph.tail(8), aux.graph.head(8)), (0, 2));
        let down = &init.x[1] * &init.s[1];
        assert!(down >= cert.t && down < &cert.t + &cert.beta);
        assert!(aux.cost.iter().all(|c| c.is_multiple_of(&cert.gamma)));
    }

    #[test]
    fn no_hat_when_tree_flow_is_half_capacity() {
        let inst = RawInstance::new(ints(&[-1, 1]), vec![RawArc::new(0, 1, 2, 5)]);
        let d = downscale(&inst);
        let cert = compute_scaling(1, &d.u_bound, &d.c_bound, &d.beta0, &d.gamma0, ScalingMode::Standard);
        let (aux, _) = build_auxiliary(&d.instance, &cert).unwrap();
        assert_eq!(aux.hat_arcs().count(), 0);
    }

    #[test]
    fn components_split_and_drop_zero_capacity() {
        let inst = RawInstance::new(
            ints(&[-1, 1, 0, 0]),
            vec![RawArc::new(0, 1, 2, 1), RawArc::new(1, 2, 0, 1), RawArc::new(3, 2, 4, 1)],
        );
        let comps = split_components(&inst);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].nodes, vec![0, 1]);
        assert_eq!(comps[0].arcs, vec![0]);
        assert_eq!(comps[1].nodes, vec![2, 3]);
        assert_eq!(comps[1].instance.arc(0), RawArc::new(1, 0, 4, 1));
    }
}
