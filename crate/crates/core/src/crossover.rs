//! From a proxy iterate to an optimal spanning-tree basis: nested-cut dual
//! crossover on the perturbed data, dual tree solution on the true costs, and
//! a primal solution on the admissible arcs by maximum flow.

use crate::arith::{BoundMonitor, ExactInt};
use crate::error::SolveError;
use crate::graph::{ArcId, ArcStatus, MultiGraph};
use crate::instance::{AuxiliaryInstance, ScalingCertificate};
use crate::ipm::{is_proxy, ProxyResult};
use crate::maxflow::FlowNetwork;
use crate::observe::Observer;

/// `b̂ = b - A·I_D·x` and `ĉ = c - I_C·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedData {
    pub b_hat: Vec<ExactInt>,
    pub c_hat: Vec<ExactInt>,
}

impl PerturbedData {
    pub fn demand_shift(&self, b: &[ExactInt]) -> ExactInt {
        b.iter().zip(&self.b_hat).map(|(a, h)| (a - h).abs()).sum()
    }

    pub fn cost_shift(&self, c: &[ExactInt]) -> ExactInt {
        c.iter().zip(&self.c_hat).map(|(a, h)| (a - h).abs()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalBasis {
    /// Spanning tree arcs in the order they joined the tree.
    pub tree: Vec<ArcId>,
    pub y: Vec<ExactInt>,
    pub s: Vec<ExactInt>,
    pub x: Vec<ExactInt>,
}

/// Perturbed demands and costs at proxy time, with the exact checks
/// `81·Σ_{A_H} x s < 4βγ`, `9‖b - b̂‖₁ ≤ 14β` and `9‖c - ĉ‖₁ ≤ 7γ`.
pub fn build_perturbed(
    aux: &AuxiliaryInstance,
    proxy: &ProxyResult,
    cert: &ScalingCertificate,
) -> Result<PerturbedData, SolveError> {
    let st = &proxy.state;
    if !is_proxy(&proxy.minor, &st.x, &st.s, cert) {
        return Err(SolveError::Invariant("iterate is not a proxy for the optimum".into()));
    }
    let g = &aux.graph;
    let mut b_hat = aux.demand.clone();
    let mut c_hat = aux.cost.clone();
    for a in 0..g.arc_count() {
        match st.map.status(a) {
            ArcStatus::Deleted => {
                b_hat[g.tail(a)] += &st.x[a];
                b_hat[g.head(a)] -= &st.x[a];
            }
            ArcStatus::Contracted { .. } => c_hat[a] -= &st.s[a],
            ArcStatus::Live => {}
        }
    }
    let data = PerturbedData { b_hat, c_hat };
    if data.demand_shift(&aux.demand) * 9 > &cert.beta * 14 {
        return Err(SolveError::Invariant("demand perturbation exceeds 2ε̄β".into()));
    }
    if data.cost_shift(&aux.cost) * 9 > &cert.gamma * 7 {
        return Err(SolveError::Invariant("cost perturbation exceeds ε̄γ".into()));
    }
    Ok(data)
}

/// Grow nested cuts from node 0. While `b̂(S) ≥ 0` raise `y` on `S` by the
/// smallest reduced cost of an arc entering `S`, otherwise lower it by the
/// smallest reduced cost of an arc leaving `S`; the tight arc (smallest id
/// on ties) joins the tree. `on_step` sees `b̂ᵀy` before the first and after
/// every step.
pub fn nested_cut_crossover(
    g: &MultiGraph,
    b_hat: &[ExactInt],
    c_hat: &[ExactInt],
    y_init: &[ExactInt],
    on_step: &mut dyn FnMut(usize, &ExactInt),
) -> Result<(Vec<ArcId>, Vec<ExactInt>), SolveError> {
    let n = g.node_count();
    let mut y = y_init.to_vec();
    let dy = g.apply_incidence_transpose(&y);
    let mut rc: Vec<ExactInt> = c_hat.iter().zip(&dy).map(|(c, d)| c - d).collect();
    if let Some(a) = rc.iter().position(|r| r.is_negative()) {
        return Err(SolveError::Invariant(format!(
            "crossover start has negative reduced cost on arc {a}"
        )));
    }
    let mut objective: ExactInt = b_hat.iter().zip(&y).map(|(b, v)| b * v).sum();
    on_step(0, &objective);
    let mut in_s = vec![false; n];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return Ok((tree, y));
    }
    in_s[0] = true;
    let mut b_s = b_hat[0].clone();
    for step in 1..n {
        // Arcs crossing the cut, split by direction.
        let best = |entering: bool| -> Option<ArcId> {
            let mut best: Option<ArcId> = None;
            for (a, t, h) in g.arcs() {
                let crosses = if entering { in_s[h] && !in_s[t] } else { in_s[t] && !in_s[h] };
                if crosses && best.is_none_or(|b| rc[a] < rc[b]) {
                    best = Some(a);
                }
            }
            best
        };
        let raise = !b_s.is_negative();
        let (arc, raise) = match (raise, best(true), best(false)) {
            (true, Some(a), _) => (a, true),
            (true, None, Some(a)) if b_s.is_zero() => (a, false),
            (false, _, Some(a)) => (a, false),
            _ => {
                return Err(SolveError::Invariant(
                    "no arc crosses the cut in the required direction".into(),
                ))
            }
        };
        let theta = rc[arc].clone();
        if !theta.is_zero() {
            let delta = if raise { theta.clone() } else { -theta.clone() };
            for v in 0..n {
                if in_s[v] {
                    y[v] += &delta;
                }
            }
            for (a, t, h) in g.arcs() {
                match (in_s[t], in_s[h]) {
                    (false, true) => rc[a] -= &delta,
                    (true, false) => rc[a] += &delta,
                    _ => {}
                }
            }
            objective += &b_s * &delta;
        }
        let far = if in_s[g.tail(arc)] { g.head(arc) } else { g.tail(arc) };
        in_s[far] = true;
        b_s += &b_hat[far];
        tree.push(arc);
        on_step(step, &objective);
    }
    Ok((tree, y))
}

/// Dual tree solution for costs `c` on a spanning tree, root potential 0,
/// and its reduced costs; fails if any reduced cost is negative.
pub fn lift_tree_to_original(
    g: &MultiGraph,
    tree: &[ArcId],
    c: &[ExactInt],
) -> Result<(Vec<ExactInt>, Vec<ExactInt>), SolveError> {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for &a in tree {
        adj[g.tail(a)].push(a);
        adj[g.head(a)].push(a);
    }
    let mut y = vec![ExactInt::zero(); n];
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    if n > 0 {
        seen[0] = true;
        stack.push(0);
    }
    while let Some(v) = stack.pop() {
        for &a in &adj[v] {
            let (t, h) = (g.tail(a), g.head(a));
            let w = if t == v { h } else { t };
            if seen[w] {
                continue;
            }
            seen[w] = true;
            // s_a = c_a - (y_h - y_t) = 0 on tree arcs.
            y[w] = if w == h { &y[v] + &c[a] } else { &y[v] - &c[a] };
            stack.push(w);
        }
    }
    if seen.iter().any(|&b| !b) {
        return Err(SolveError::Invariant("crossover tree does not span the graph".into()));
    }
    let dy = g.apply_incidence_transpose(&y);
    let s: Vec<ExactInt> = c.iter().zip(&dy).map(|(c, d)| c - d).collect();
    if let Some(a) = s.iter().position(|v| v.is_negative()) {
        return Err(SolveError::Invariant(format!(
            "tree dual has negative reduced cost on arc {a}"
        )));
    }
    Ok((y, s))
}

/// A `b`-flow supported on arcs with zero reduced cost, via one maximum
/// flow from the supply nodes to the demand nodes.
pub fn admissible_primal(
    g: &MultiGraph,
    b: &[ExactInt],
    s: &[ExactInt],
) -> Result<Vec<ExactInt>, SolveError> {
    let n = g.node_count();
    let supply: ExactInt = b.iter().filter(|v| v.is_negative()).map(|v| -v.clone()).sum();
    let mut net = FlowNetwork::new(n + 2);
    let (src, sink) = (n, n + 1);
    let mut edge_of = vec![None; g.arc_count()];
    for (a, t, h) in g.arcs() {
        if s[a].is_zero() && t != h {
            edge_of[a] = Some(net.add_edge(t, h, supply.clone()));
        }
    }
    for (v, bv) in b.iter().enumerate() {
        if bv.is_negative() {
            net.add_edge(src, v, -bv.clone());
        } else if bv.is_positive() {
            net.add_edge(v, sink, bv.clone());
        }
    }
    let value = net.max_flow(src, sink);
    if value != supply {
        return Err(SolveError::Invariant(format!(
            "admissible network carries {value} of {supply} supply"
        )));
    }
    Ok(edge_of
        .iter()
        .map(|e| e.map_or_else(ExactInt::zero, |k| net.flow(k)))
        .collect())
}

/// Full crossover for a proxy iterate of `aux`.
pub fn crossover(
    aux: &AuxiliaryInstance,
    proxy: &ProxyResult,
    cert: &ScalingCertificate,
    monitor: &mut BoundMonitor,
    obs: &mut dyn Observer,
) -> Result<(PerturbedData, OptimalBasis), SolveError> {
    let data = build_perturbed(aux, proxy, cert)?;
    obs.on_proxy(proxy, &data);
    let (tree, y_cut) = nested_cut_crossover(
        &aux.graph,
        &data.b_hat,
        &data.c_hat,
        &proxy.state.y,
        &mut |step, value| obs.on_crossover_step(step, value),
    )?;
    monitor.record_all(&y_cut)?;
    let (y, s) = lift_tree_to_original(&aux.graph, &tree, &aux.cost)?;
    monitor.record_all(&y)?;
    monitor.record_all(&s)?;
    let x = admissible_primal(&aux.graph, &aux.demand, &s)?;
    monitor.record_all(&x)?;
    let basis = OptimalBasis { tree, y, s, x };
    obs.on_basis(&basis);
    Ok((data, basis))
}
