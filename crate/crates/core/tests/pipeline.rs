use intflow_core::arith::gcd_all;
use intflow_core::instance::{
    build_auxiliary, compute_scaling, downscale, normalize_costs, split_components, ArcRole,
};
use intflow_core::oracle::{random_instance, ssp_solve, GeneratorMode, GeneratorParams};
use intflow_core::{solve, ExactInt, NoObserver, RawArc, RawInstance, ScalingMode, SolveConfig};
use proptest::prelude::*;

fn params(nodes: usize, arcs: usize, mode: GeneratorMode) -> GeneratorParams {
    GeneratorParams {
        nodes,
        arcs,
        max_capacity: 12,
        max_cost: 9,
        mode,
    }
}

fn feasible(seed: u64) -> RawInstance {
    random_instance(seed, &params(2 + (seed % 6) as usize, 3 + (seed % 9) as usize, GeneratorMode::Feasible))
}

fn scaled(inst: &RawInstance, flow_factor: i64, cost_factor: i64) -> RawInstance {
    RawInstance::new(
        inst.demand.iter().map(|b| b * flow_factor).collect(),
        (0..inst.arc_count())
            .map(|a| {
                let arc = inst.arc(a);
                RawArc {
                    capacity: arc.capacity * flow_factor,
                    cost: arc.cost * cost_factor,
                    ..arc
                }
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_preserves_objective(seed in any::<u64>()) {
        let inst = feasible(seed);
        let norm = normalize_costs(&inst);
        prop_assert!(norm.instance.cost.iter().all(|c| !c.is_negative()));
        if let Some(obj) = ssp_solve(&norm.instance).objective() {
            let opt = ssp_solve(&inst);
            prop_assert_eq!(Some(&(obj + &norm.offset)), opt.objective());
        }
        // Any normalized flow maps to a raw flow with the same demands and
        // objective shifted by the offset.
        let x: Vec<ExactInt> = norm.instance.capacity.iter().map(|u| u.div_floor(&ExactInt::from(2))).collect();
        let raw_x = norm.restore_flow(&x);
        prop_assert_eq!(inst.objective(&raw_x), norm.instance.objective(&x) + &norm.offset);
        let excess = |g: &RawInstance, f: &[ExactInt]| g.graph.apply_incidence(f);
        let lhs: Vec<ExactInt> = excess(&inst, &raw_x).iter().zip(&inst.demand).map(|(e, b)| e - b).collect();
        let rhs: Vec<ExactInt> =
            excess(&norm.instance, &x).iter().zip(&norm.instance.demand).map(|(e, b)| e - b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn components_partition_positive_arcs(seed in any::<u64>()) {
        let inst = random_instance(seed, &params(7, 5, GeneratorMode::Raw));
        let comps = split_components(&inst);
        let mut nodes: Vec<usize> = comps.iter().flat_map(|c| c.nodes.clone()).collect();
        nodes.sort();
        prop_assert_eq!(nodes, (0..7).collect::<Vec<_>>());
        let arcs: usize = comps.iter().map(|c| c.arcs.len()).sum();
        prop_assert_eq!(arcs, inst.capacity.iter().filter(|u| u.is_positive()).count());
    }

    #[test]
    fn auxiliary_instance_shape(seed in any::<u64>(), strict in any::<bool>()) {
        let inst = feasible(seed);
        let comp = &split_components(&inst)[0];
        prop_assume!(!comp.arcs.is_empty());
        let norm = normalize_costs(&comp.instance);
        let down = downscale(&norm.instance);
        let mode = if strict { ScalingMode::Strict } else { ScalingMode::Standard };
        let m0 = comp.arcs.len();
        let cert = compute_scaling(m0, &down.u_bound, &down.c_bound, &down.beta0, &down.gamma0, mode);
        prop_assert_eq!(&cert.beta, &ExactInt::pow2(cert.beta.bits() as u32 - 1));
        let (aux, init) = build_auxiliary(&down.instance, &cert).unwrap();
        // A hat arc exists only where the tree solution is not u/2.
        prop_assert!(aux.arc_count() >= 2 * m0 && aux.arc_count() <= 3 * m0);
        prop_assert_eq!(aux.hat_arcs().count(), aux.arc_count() - 2 * m0);
        prop_assert_eq!(aux.node_count(), comp.nodes.len() + m0);
        prop_assert_eq!(aux.demand.iter().sum::<ExactInt>(), ExactInt::zero());
        prop_assert!(aux.cost.iter().all(|c| !c.is_negative()));
        let cheap: ExactInt = (0..aux.arc_count())
            .filter(|&a| !matches!(aux.roles[a], ArcRole::Hat(_)))
            .map(|a| aux.cost[a].clone())
            .sum();
        for a in aux.hat_arcs() {
            prop_assert!(aux.cost[a] > cheap);
        }
        prop_assert!(init.x.iter().chain(&init.s).all(|v| v.is_positive()));
        prop_assert_eq!(aux.graph.apply_incidence(&init.x), aux.demand.clone());
        prop_assert_eq!(init.mu, cert.mu0);
        // Downscaling divided out exactly the common factors.
        let b_gcd = gcd_all(down.instance.demand.iter().chain(&down.instance.capacity));
        prop_assert!(b_gcd <= ExactInt::one());
    }

    #[test]
    fn objective_scales_with_data(seed in 0u64..400, k in 2i64..5) {
        let inst = feasible(seed);
        let config = SolveConfig { seed, ..Default::default() };
        let base = solve(&inst, &config, &mut NoObserver).unwrap();
        let by_cost = solve(&scaled(&inst, 1, k), &config, &mut NoObserver).unwrap();
        let by_flow = solve(&scaled(&inst, k, 1), &config, &mut NoObserver).unwrap();
        let expect = base.objective.clone().map(|o| o * k);
        prop_assert_eq!(&by_cost.objective, &expect);
        prop_assert_eq!(&by_flow.objective, &expect);
    }

    #[test]
    fn objective_independent_of_seed(seed in 0u64..400, other in any::<u64>()) {
        let inst = feasible(seed);
        let a = solve(&inst, &SolveConfig { seed, ..Default::default() }, &mut NoObserver).unwrap();
        let b = solve(&inst, &SolveConfig { seed: other, ..Default::default() }, &mut NoObserver).unwrap();
        prop_assert_eq!(a.objective, b.objective);
    }
}

#[test]
fn strict_scaling_agrees_with_default() {
    for seed in 0..20 {
        let inst = feasible(seed);
        let config = SolveConfig {
            scaling: ScalingMode::Strict,
            ..Default::default()
        };
        let strict = solve(&inst, &config, &mut NoObserver).unwrap();
        assert_eq!(strict.objective.as_ref(), ssp_solve(&inst).objective(), "seed {seed}");
    }
}

#[test]
fn same_seed_same_solution() {
    for seed in 0..10 {
        let inst = feasible(seed);
        let config = SolveConfig { seed, ..Default::default() };
        let a = solve(&inst, &config, &mut NoObserver).unwrap();
        let b = solve(&inst, &config, &mut NoObserver).unwrap();
        assert_eq!(a, b);
    }
}
