#![allow(dead_code)]

use intflow_core::oracle::{random_instance, GeneratorMode, GeneratorParams};
use intflow_core::RawInstance;

/// The three-node instance used throughout the tests: optimum 4 with flow
/// (2, 2, 0).
pub const E1: &str = "p min 3 3\nn 1 2\nn 3 -2\na 1 2 0 2 1\na 2 3 0 2 1\na 1 3 0 1 3\n";

/// Parameters of the `seed`-th instance of the random suite: 2 to 8 nodes,
/// at most 16 arcs, capacities and |costs| up to 10, every third instance
/// with unconstrained (often infeasible) demands.
pub fn suite_params(seed: u64) -> GeneratorParams {
    let n = 2 + (seed % 7) as usize;
    let m = (n - 1) + (seed as usize * 7) % (17 - n);
    GeneratorParams {
        nodes: n,
        arcs: m.min(16),
        max_capacity: 10,
        max_cost: 10,
        mode: if seed % 3 == 2 { GeneratorMode::Raw } else { GeneratorMode::Feasible },
    }
}

pub fn suite_instance(seed: u64) -> RawInstance {
    random_instance(seed, &suite_params(seed))
}
