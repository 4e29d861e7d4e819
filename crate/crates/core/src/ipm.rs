//! Outer path-following loop: minor maintenance, `μ` decrements, centering on
//! the minor and lifting the update back to the full auxiliary graph.

use rand::Rng;

use crate::arith::{isqrt, BoundMonitor, ExactInt};
use crate::centering::{centering_step, CenteringLimits, CenteringOutcome};
use crate::error::SolveError;
use crate::graph::{ArcId, ArcStatus, ContractionMap, MinorView, MultiGraph, NodeId};
use crate::instance::{AuxiliaryInstance, InitialPoint, ScalingCertificate};
use crate::observe::Observer;

#[derive(Clone, Debug, Default)]
pub struct IpmLimits {
    pub refresh_interval: Option<u64>,
    pub max_updates: Option<u64>,
    /// Overrides the default outer-iteration ceiling when set.
    pub max_iterations: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct IterateState {
    pub x: Vec<ExactInt>,
    pub s: Vec<ExactInt>,
    pub y: Vec<ExactInt>,
    pub mu: ExactInt,
    pub map: ContractionMap,
    pub iterations: u64,
    pub centering_updates: u64,
}

/// Per-iteration summary used by the trace output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub iter: u64,
    pub mu: ExactInt,
    pub minor_arcs: usize,
    pub contracted: usize,
    pub deleted: usize,
    /// `Σ_{A_H} x_a s_a` over the minor of this iteration.
    pub gap_sum: ExactInt,
    pub max_abs: ExactInt,
    pub centering_updates: u64,
}

#[derive(Clone, Debug)]
pub struct ProxyResult {
    pub state: IterateState,
    /// The minor on which the proxy condition was established.
    pub minor: MinorView,
}

/// `μ - max(1, floor(μ / (8√m)))`, evaluated as `isqrt(μ² div 64m)`.
pub fn decrement_mu(mu: &ExactInt, m: &ExactInt) -> Result<ExactInt, SolveError> {
    let step = isqrt(&(mu * mu).div_floor(&(m * 64)))?;
    Ok(mu - &step.max(ExactInt::one()))
}

/// Integer lower bound of `16·√m·ln(μ₀) + m` using `isqrt(m)` and
/// `ln μ₀ ≥ 0.693·(bits(μ₀) - 1)`.
pub fn iteration_ceiling(m: &ExactInt, mu0: &ExactInt) -> u64 {
    let root = isqrt(m).ok().and_then(|r| r.to_i64()).unwrap_or(0).max(0) as u64;
    let m = m.to_i64().unwrap_or(i64::MAX).max(0) as u64;
    let bits = mu0.bits().saturating_sub(1);
    16 * root * bits * 693 / 1000 + m
}

/// Delete arcs with `9·m·x_a < 7β` and contract arcs with `9·m·s_a < 7γ`.
pub fn compute_minor(
    g: &MultiGraph,
    map: &mut ContractionMap,
    x: &[ExactInt],
    s: &[ExactInt],
    cert: &ScalingCertificate,
) -> Result<(), SolveError> {
    let nine_m = &cert.m * 9;
    let del_bound = &cert.beta * 7;
    let con_bound = &cert.gamma * 7;
    for a in 0..g.arc_count() {
        if !map.is_live(a) {
            continue;
        }
        let del = &nine_m * &x[a] < del_bound;
        let con = &nine_m * &s[a] < con_bound;
        match (del, con) {
            (true, true) => {
                return Err(SolveError::Invariant(format!(
                    "arc {a} qualifies for both deletion and contraction"
                )))
            }
            (true, false) => map.delete(a)?,
            (false, true) => {
                map.contract(g, a)?;
            }
            (false, false) => {}
        }
    }
    Ok(())
}

/// `81·Σ_{A_H} x_a s_a < 4βγ`.
pub fn is_proxy(minor: &MinorView, x: &[ExactInt], s: &[ExactInt], cert: &ScalingCertificate) -> bool {
    gap_sum(minor, x, s) * 81 < &cert.beta * &cert.gamma * 4
}

pub fn gap_sum(minor: &MinorView, x: &[ExactInt], s: &[ExactInt]) -> ExactInt {
    minor.arcs.iter().map(|&a| &x[a] * &s[a]).sum()
}

/// Route `need` (required net inflow per node, zero-sum on every tree) over
/// a forest given as `(arc, tail, head)` triples. Returns flow per listed arc.
fn route_on_forest(
    n: usize,
    forest: &[(ArcId, NodeId, NodeId)],
    mut need: Vec<ExactInt>,
) -> Result<Vec<ExactInt>, SolveError> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(_, t, h)) in forest.iter().enumerate() {
        adj[t].push(i);
        adj[h].push(i);
    }
    let mut flow = vec![ExactInt::zero(); forest.len()];
    let mut seen = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut order = vec![root];
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            k += 1;
            for &i in &adj[v] {
                let (_, t, h) = forest[i];
                let w = if t == v { h } else { t };
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(i);
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            let Some(i) = parent[v] else { continue };
            let (_, t, h) = forest[i];
            let r = std::mem::take(&mut need[v]);
            if h == v {
                need[t] += &r;
                flow[i] = r;
            } else {
                need[h] += &r;
                flow[i] = -r;
            }
        }
        if !need[root].is_zero() {
            return Err(SolveError::Invariant(format!(
                "class of node {root} has unbalanced lifted flow"
            )));
        }
    }
    Ok(flow)
}

/// Apply a centering outcome computed on `minor` to the full iterate.
pub fn lift_updates(
    state: &mut IterateState,
    aux: &AuxiliaryInstance,
    minor: &MinorView,
    out: &CenteringOutcome,
) -> Result<(), SolveError> {
    let g = &aux.graph;
    let mut need = vec![ExactInt::zero(); g.node_count()];
    for (i, &a) in minor.arcs.iter().enumerate() {
        let dx = &out.x[i] - &state.x[a];
        need[g.tail(a)] += &dx;
        need[g.head(a)] -= &dx;
        state.x[a] = out.x[i].clone();
    }
    let forest: Vec<(ArcId, NodeId, NodeId)> = g
        .arcs()
        .filter(|&(a, _, _)| state.map.status(a) == ArcStatus::Contracted { forest: true })
        .collect();
    let flow = route_on_forest(g.node_count(), &forest, need)?;
    for (&(a, _, _), f) in forest.iter().zip(flow) {
        state.x[a] += f;
        if !state.x[a].is_positive() {
            return Err(SolveError::ContractedArcPositivity { arc: a });
        }
    }
    for v in 0..g.node_count() {
        state.y[v] += &out.pi[minor.class_of[v]];
    }
    let dy = g.apply_incidence_transpose(&state.y);
    for a in 0..g.arc_count() {
        state.s[a] = &aux.cost[a] - &dy[a];
    }
    for (i, &a) in minor.arcs.iter().enumerate() {
        if state.s[a] != out.s[i] {
            return Err(SolveError::Invariant(format!("lifted slack differs on arc {a}")));
        }
    }
    Ok(())
}

/// `A x = b`, `x > 0` on the full auxiliary graph.
pub fn check_primal(aux: &AuxiliaryInstance, x: &[ExactInt]) -> Result<(), SolveError> {
    if aux.graph.apply_incidence(x) != aux.demand {
        return Err(SolveError::Invariant("A x != b after lifting".into()));
    }
    if let Some(a) = x.iter().position(|v| !v.is_positive()) {
        return Err(SolveError::Invariant(format!("x is not positive on arc {a}")));
    }
    Ok(())
}

/// Run the outer loop from a centered initial point until the minor
/// iterate is a proxy for the optimum.
pub fn run<R: Rng + ?Sized>(
    aux: &AuxiliaryInstance,
    init: &InitialPoint,
    cert: &ScalingCertificate,
    rng: &mut R,
    limits: &IpmLimits,
    monitor: &mut BoundMonitor,
    obs: &mut dyn Observer,
) -> Result<ProxyResult, SolveError> {
    let g = &aux.graph;
    let mut state = IterateState {
        x: init.x.clone(),
        s: init.s.clone(),
        y: init.y.clone(),
        mu: init.mu.clone(),
        map: ContractionMap::new(g),
        iterations: 0,
        centering_updates: 0,
    };
    let ceiling = limits
        .max_iterations
        .unwrap_or_else(|| iteration_ceiling(&cert.m, &cert.mu0));
    let climits = CenteringLimits {
        refresh_interval: limits.refresh_interval,
        max_updates: limits.max_updates,
        mu0_bits: cert.mu0.bits(),
    };
    loop {
        compute_minor(g, &mut state.map, &state.x, &state.s, cert)?;
        let minor = state.map.view(g);
        if is_proxy(&minor, &state.x, &state.s, cert) {
            return Ok(ProxyResult { state, minor });
        }
        if state.iterations >= ceiling {
            return Err(SolveError::ConvergenceCeiling {
                iterations: state.iterations,
                ceiling,
            });
        }
        let mu = decrement_mu(&state.mu, &cert.m)?;
        if !mu.is_positive() {
            return Err(SolveError::Invariant("μ reached zero before the proxy condition".into()));
        }
        let x_h: Vec<ExactInt> = minor.arcs.iter().map(|&a| state.x[a].clone()).collect();
        let s_h: Vec<ExactInt> = minor.arcs.iter().map(|&a| state.s[a].clone()).collect();
        let iter = state.iterations + 1;
        obs.on_centering_start(iter, &minor, &x_h, &s_h, &mu);
        let out = centering_step(&minor, &x_h, &s_h, &mu, rng, &climits, monitor, &mut |r| {
            obs.on_refresh(iter, r)
        })?;
        lift_updates(&mut state, aux, &minor, &out)?;
        check_primal(aux, &state.x)?;
        monitor.record_all(&state.x)?;
        monitor.record_all(&state.s)?;
        monitor.record_all(&state.y)?;
        state.mu = mu;
        state.iterations = iter;
        state.centering_updates += out.updates;
        let record = IterationRecord {
            iter,
            mu: state.mu.clone(),
            minor_arcs: minor.arc_count(),
            contracted: state.map.contracted_count(),
            deleted: state.map.deleted_count(),
            gap_sum: gap_sum(&minor, &state.x, &state.s),
            max_abs: monitor.max_seen().clone(),
            centering_updates: out.updates,
        };
        obs.on_iteration(&record, &state, &minor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{compute_scaling, ScalingMode};

    fn e(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn decrement_examples() {
        assert_eq!(decrement_mu(&e(800), &e(4)).unwrap(), e(750));
        assert_eq!(decrement_mu(&e(1), &e(4)).unwrap(), e(0));
        // μ' ≥ (1 - 1/(8√m)) μ: 64 m (μ - μ')² ≤ μ² whenever the floor of 1
        // is not active.
        for mu in [1000i64, 12345, 999_999] {
            let next = decrement_mu(&e(mu), &e(7)).unwrap();
            let d = e(mu) - next;
            assert!(&d * &d * 64 * 7 <= e(mu) * e(mu));
        }
    }

    #[test]
    fn deletion_threshold_example() {
        let cert = compute_scaling(1, &e(1), &e(1), &e(1), &e(1), ScalingMode::Standard);
        assert_eq!(cert.beta, e(8192));
        let g = MultiGraph::from_arcs(2, &[(0, 1), (0, 1)]);
        let mut map = ContractionMap::new(&g);
        let x = vec![e(2000), e(5000)];
        let s = vec![cert.gamma.clone(), cert.gamma.clone()];
        compute_minor(&g, &mut map, &x, &s, &cert).unwrap();
        assert_eq!(map.status(0), ArcStatus::Deleted);
        assert_eq!(map.status(1), ArcStatus::Live);
        // Already deleted arcs are skipped on later passes.
        compute_minor(&g, &mut map, &x, &s, &cert).unwrap();
        assert_eq!(map.deleted_count(), 1);
    }

    #[test]
    fn both_thresholds_is_an_invariant_failure() {
        let cert = compute_scaling(1, &e(1), &e(1), &e(1), &e(1), ScalingMode::Standard);
        let g = MultiGraph::from_arcs(2, &[(0, 1)]);
        let mut map = ContractionMap::new(&g);
        assert!(compute_minor(&g, &mut map, &[e(1)], &[e(1)], &cert).is_err());
    }

    #[test]
    fn forest_routing_by_hand() {
        // Contracted arc 0 = (0 -> 1). A minor flow of 3 enters the class at
        // node 0 and leaves at node 1, so node 0 has surplus 3 (needs -3
        // inflow) and node 1 needs +3; arc 0 must carry +3.
        let flow = route_on_forest(3, &[(0, 0, 1)], vec![e(-3), e(3), e(0)]).unwrap();
        assert_eq!(flow, vec![e(3)]);
        let flow = route_on_forest(3, &[(0, 0, 1)], vec![e(3), e(-3), e(0)]).unwrap();
        assert_eq!(flow, vec![e(-3)]);
        assert!(route_on_forest(2, &[], vec![e(1), e(-1)]).is_err());
    }

    #[test]
    fn ceiling_is_below_the_real_formula() {
        let m = e(48);
        let mu0 = ExactInt::pow2(100);
        let c = iteration_ceiling(&m, &mu0) as f64;
        assert!(c <= 16.0 * 48f64.sqrt() * 100.0 * std::f64::consts::LN_2 + 48.0);
        assert!(c > 0.0);
    }
}
