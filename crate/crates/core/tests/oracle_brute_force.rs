//! The reference solver and the interior point solver against exhaustive
//! enumeration of every integral flow on tiny instances.

use intflow_core::oracle::{ssp_solve, verify_certificate, OracleSolution};
use intflow_core::{solve, ExactInt, NoObserver, RawArc, RawInstance, SolveConfig, SolveStatus};
use proptest::prelude::*;

/// Minimum objective over all integral flows, or `None` if none is feasible.
fn brute_force(inst: &RawInstance) -> (Option<i64>, Vec<Vec<i64>>) {
    let m = inst.arc_count();
    let caps: Vec<i64> = inst.capacity.iter().map(|u| u.to_i64().unwrap()).collect();
    let mut x = vec![0i64; m];
    let mut best: Option<i64> = None;
    let mut feasible = Vec::new();
    loop {
        let mut b = vec![0i64; inst.node_count()];
        for (a, t, h) in inst.graph.arcs() {
            b[t] -= x[a];
            b[h] += x[a];
        }
        if b.iter().zip(&inst.demand).all(|(v, d)| d.to_i64() == Some(*v)) {
            let obj: i64 = (0..m).map(|a| x[a] * inst.cost[a].to_i64().unwrap()).sum();
            best = Some(best.map_or(obj, |o| o.min(obj)));
            feasible.push(x.clone());
        }
        let Some(i) = (0..m).find(|&i| x[i] < caps[i]) else { break };
        x[i] += 1;
        x[..i].iter_mut().for_each(|v| *v = 0);
    }
    (best, feasible)
}

fn instance() -> impl Strategy<Value = RawInstance> {
    (2usize..=4).prop_flat_map(|n| {
        let arc = (0..n, 0..n, 0i64..=3, -3i64..=3);
        let demand = prop::collection::vec(-3i64..=3, n - 1);
        (prop::collection::vec(arc, 1..=5), demand).prop_map(move |(arcs, mut d)| {
            d.push(-d.iter().sum::<i64>());
            RawInstance::new(
                d.into_iter().map(ExactInt::from).collect(),
                arcs.into_iter().map(|(t, h, u, c)| RawArc::new(t, h, u, c)).collect(),
            )
        })
    })
}

fn ints(v: &[i64]) -> Vec<ExactInt> {
    v.iter().map(|&x| ExactInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracle_matches_enumeration(inst in instance()) {
        let (best, feasible) = brute_force(&inst);
        match ssp_solve(&inst) {
            OracleSolution::Optimal { flow, objective, potential } => {
                prop_assert_eq!(Some(objective.to_i64().unwrap()), best);
                prop_assert!(verify_certificate(&inst, &flow, &potential).passed());
                // A feasible flow passes the checks with the oracle's
                // potential exactly when it is optimal.
                for x in &feasible {
                    let x = ints(x);
                    let optimal = inst.objective(&x).to_i64() == best;
                    prop_assert_eq!(verify_certificate(&inst, &x, &potential).passed(), optimal);
                }
            }
            OracleSolution::Infeasible => prop_assert_eq!(best, None),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_matches_enumeration(inst in instance(), seed in 0u64..1000) {
        let (best, _) = brute_force(&inst);
        let sol = solve(&inst, &SolveConfig { seed, ..Default::default() }, &mut NoObserver).unwrap();
        prop_assert_eq!(sol.objective.as_ref().map(|o| o.to_i64().unwrap()), best);
        if sol.status == SolveStatus::Optimal {
            prop_assert!(verify_certificate(&inst, &sol.flow, &sol.potential).passed());
        }
    }
}
