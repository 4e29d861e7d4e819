//! Fixtures shared by the benchmarks in `benches/`.

use intflow_core::instance::{
    build_auxiliary, compute_scaling, downscale, normalize_costs, split_components, AuxiliaryInstance,
    InitialPoint, ScalingCertificate,
};
use intflow_core::oracle::{random_instance, GeneratorMode, GeneratorParams};
use intflow_core::{RawInstance, ScalingMode};

pub const E1: &str = "p min 3 3\nn 1 2\nn 3 -2\na 1 2 0 2 1\na 2 3 0 2 1\na 1 3 0 1 3\n";

/// Feasible random instance with capacities and |costs| up to 10.
pub fn random_feasible(seed: u64, nodes: usize, arcs: usize) -> RawInstance {
    random_instance(
        seed,
        &GeneratorParams {
            nodes,
            arcs,
            max_capacity: 10,
            max_cost: 10,
            mode: GeneratorMode::Feasible,
        },
    )
}

/// Auxiliary instance and initial point of the largest component of `inst`.
pub fn auxiliary(inst: &RawInstance) -> (AuxiliaryInstance, InitialPoint, ScalingCertificate) {
    let comp = split_components(inst)
        .into_iter()
        .max_by_key(|c| c.arcs.len())
        .expect("instance has a node");
    let down = downscale(&normalize_costs(&comp.instance).instance);
    let cert = compute_scaling(
        comp.arcs.len(),
        &down.u_bound,
        &down.c_bound,
        &down.beta0,
        &down.gamma0,
        ScalingMode::Standard,
    );
    let (aux, init) = build_auxiliary(&down.instance, &cert).expect("fixture is well formed");
    (aux, init, cert)
}
