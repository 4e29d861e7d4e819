//! End-to-end solve of a raw instance: per component, normalize, downscale,
//! scale, build the auxiliary instance, run the interior point method,
//! cross over and map the optimum back.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{BoundMonitor, ExactInt, MonitorMode};
use crate::crossover::crossover;
use crate::error::SolveError;
use crate::instance::{
    build_auxiliary, compute_scaling, downscale, normalize_costs, split_components, unscale_solution,
    ComponentSolution, RawInstance, ScalingMode,
};
use crate::ipm::{self, IpmLimits};
use crate::observe::{ComponentContext, Observer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub seed: u64,
    pub scaling: ScalingMode,
    pub monitor: MonitorMode,
    pub refresh_interval: Option<u64>,
    pub max_updates: Option<u64>,
    pub max_iterations: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            seed: 1,
            scaling: ScalingMode::Standard,
            monitor: MonitorMode::Strict,
            refresh_interval: None,
            max_updates: None,
            max_iterations: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

/// Statistics for one weakly connected component that needed the interior
/// point method.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub nodes: usize,
    pub arcs: usize,
    pub aux_arcs: usize,
    pub iterations: u64,
    pub iteration_ceiling: u64,
    pub centering_updates: u64,
    pub max_abs: ExactInt,
    /// `2^31 m^10 U^2 C^2` for this component.
    pub limit: ExactInt,
    pub status: SolveStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub status: SolveStatus,
    /// Flow per raw arc (empty when infeasible).
    pub flow: Vec<ExactInt>,
    /// Potential per raw node (empty when infeasible).
    pub potential: Vec<ExactInt>,
    pub objective: Option<ExactInt>,
    pub components: Vec<ComponentReport>,
}

impl Solution {
    pub fn iterations(&self) -> u64 {
        self.components.iter().map(|c| c.iterations).sum()
    }

    pub fn max_abs(&self) -> ExactInt {
        self.components.iter().map(|c| c.max_abs.clone()).max().unwrap_or_default()
    }
}

pub fn solve(raw: &RawInstance, config: &SolveConfig, obs: &mut dyn Observer) -> Result<Solution, SolveError> {
    raw.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let limits = IpmLimits {
        refresh_interval: config.refresh_interval,
        max_updates: config.max_updates,
        max_iterations: config.max_iterations,
    };
    let mut flow = vec![ExactInt::zero(); raw.arc_count()];
    let mut potential = vec![ExactInt::zero(); raw.node_count()];
    let mut reports = Vec::new();
    let infeasible = |reports| Solution {
        status: SolveStatus::Infeasible,
        flow: Vec::new(),
        potential: Vec::new(),
        objective: None,
        components: reports,
    };
    for (index, comp) in split_components(raw).iter().enumerate() {
        if comp.arcs.is_empty() {
            if comp.instance.demand.iter().any(|b| !b.is_zero()) {
                return Ok(infeasible(reports));
            }
            continue;
        }
        let total: ExactInt = comp.instance.demand.iter().sum();
        if !total.is_zero() {
            return Ok(infeasible(reports));
        }
        let normalized = normalize_costs(&comp.instance);
        let down = downscale(&normalized.instance);
        let cert = compute_scaling(
            comp.arcs.len(),
            &down.u_bound,
            &down.c_bound,
            &down.beta0,
            &down.gamma0,
            config.scaling,
        );
        obs.on_component(&ComponentContext {
            index,
            component: comp,
            normalized: &normalized,
            downscaled: &down,
            cert: &cert,
        });
        let limit = BoundMonitor::size_limit(&cert.m, &cert.u, &cert.c);
        let mut monitor = BoundMonitor::new(limit.clone(), config.monitor);
        let (aux, init) = build_auxiliary(&down.instance, &cert)?;
        monitor.record_all(&aux.demand)?;
        monitor.record_all(&aux.cost)?;
        monitor.record_all(&init.x)?;
        monitor.record_all(&init.s)?;
        monitor.record_all(&init.y)?;
        obs.on_initial_point(&aux, &init);
        let proxy = ipm::run(&aux, &init, &cert, &mut rng, &limits, &mut monitor, obs)?;
        let (_, basis) = crossover(&aux, &proxy, &cert, &mut monitor, obs)?;
        let outcome = unscale_solution(&aux, &cert, &basis.x, &basis.y)?;
        let status = match outcome {
            ComponentSolution::Infeasible => SolveStatus::Infeasible,
            ComponentSolution::Optimal { .. } => SolveStatus::Optimal,
        };
        reports.push(ComponentReport {
            nodes: comp.nodes.len(),
            arcs: comp.arcs.len(),
            aux_arcs: aux.arc_count(),
            iterations: proxy.state.iterations,
            iteration_ceiling: limits
                .max_iterations
                .unwrap_or_else(|| ipm::iteration_ceiling(&cert.m, &cert.mu0)),
            centering_updates: proxy.state.centering_updates,
            max_abs: monitor.max_seen().clone(),
            limit,
            status,
        });
        let ComponentSolution::Optimal { flow: f, potential: p } = outcome else {
            return Ok(infeasible(reports));
        };
        let original = normalized.restore_flow(&f);
        for (k, &a) in comp.arcs.iter().enumerate() {
            flow[a] = original[k].clone();
        }
        for (k, &v) in comp.nodes.iter().enumerate() {
            potential[v] = p[k].clone();
        }
    }
    let objective = raw.objective(&flow);
    Ok(Solution {
        status: SolveStatus::Optimal,
        flow,
        potential,
        objective: Some(objective),
        components: reports,
    })
}
