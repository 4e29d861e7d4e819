//! Subcommand implementations behind the `intflow` binary. Each command
//! reads its inputs as text, writes to the given sinks and returns the
//! process exit code.

use std::io::Write;

use anyhow::{bail, Context, Result};
use serde_json::json;

use intflow_core::centering::RefreshRecord;
use intflow_core::graph::MinorView;
use intflow_core::ipm::{IterateState, IterationRecord};
use intflow_core::observe::ComponentContext;
use intflow_core::oracle::{random_instance, GeneratorParams};
use intflow_core::{
    parse_dimacs, solve, ssp_solve, verify_certificate, write_dimacs, ExactInt, Observer,
    OracleSolution, RawInstance, Solution, SolveConfig, SolveError, SolveStatus,
};

pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Dimacs,
    JsonLines,
}

/// Exit code for a solver error.
pub fn exit_code(err: &SolveError) -> i32 {
    match err {
        SolveError::ConvergenceCeiling { .. } | SolveError::CenteringStalled { .. } => EXIT_CEILING,
        _ => EXIT_ERROR,
    }
}

/// Solution in either output format. `stats` adds magnitude and iteration
/// lines.
pub fn format_solution(
    inst: &RawInstance,
    status: SolveStatus,
    flow: &[ExactInt],
    potential: &[ExactInt],
    stats: Option<&Solution>,
    format: OutputFormat,
) -> String {
    let mut out = String::new();
    let objective = inst.objective(flow);
    match format {
        OutputFormat::Dimacs => {
            if status == SolveStatus::Infeasible {
                out.push_str("s infeasible\n");
            } else {
                out.push_str(&format!("s {objective}\n"));
            }
            if let Some(sol) = stats {
                out.push_str(&format!("c iterations {}\n", sol.iterations()));
                out.push_str(&format!("c max_abs {}\n", sol.max_abs()));
                for (i, c) in sol.components.iter().enumerate() {
                    out.push_str(&format!(
                        "c component {i} nodes {} arcs {} iterations {} updates {} max_abs {} limit {}\n",
                        c.nodes, c.arcs, c.iterations, c.centering_updates, c.max_abs, c.limit
                    ));
                }
            }
            if status == SolveStatus::Optimal {
                for (a, f) in flow.iter().enumerate() {
                    out.push_str(&format!("f {} {} {f}\n", inst.graph.tail(a) + 1, inst.graph.head(a) + 1));
                }
                for (v, p) in potential.iter().enumerate() {
                    out.push_str(&format!("d {} {p}\n", v + 1));
                }
            }
        }
        OutputFormat::JsonLines => {
            let mut line = |v: serde_json::Value| {
                out.push_str(&v.to_string());
                out.push('\n');
            };
            match status {
                SolveStatus::Infeasible => line(json!({"type": "status", "status": "infeasible"})),
                SolveStatus::Optimal => line(json!({
                    "type": "status", "status": "optimal", "objective": objective.to_string()
                })),
            }
            if let Some(sol) = stats {
                line(json!({
                    "type": "stats",
                    "iterations": sol.iterations(),
                    "max_abs": sol.max_abs().to_string(),
                }));
            }
            if status == SolveStatus::Optimal {
                for (a, f) in flow.iter().enumerate() {
                    line(json!({
                        "type": "flow", "arc": a + 1, "tail": inst.graph.tail(a) + 1,
                        "head": inst.graph.head(a) + 1, "flow": f.to_string()
                    }));
                }
                for (v, p) in potential.iter().enumerate() {
                    line(json!({"type": "potential", "node": v + 1, "value": p.to_string()}));
                }
            }
        }
    }
    out
}

/// Solve a DIMACS instance, writing the solution to `out` and diagnostics
/// to `err`. `obs` sees every solver event.
pub fn cmd_solve_with(
    text: &str,
    config: &SolveConfig,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
    obs: &mut dyn Observer,
) -> Result<i32> {
    let inst = parse_dimacs(text)?;
    match solve(&inst, config, obs) {
        Ok(sol) => {
            out.write_all(
                format_solution(&inst, sol.status, &sol.flow, &sol.potential, Some(&sol), format).as_bytes(),
            )?;
            if sol.status == SolveStatus::Infeasible {
                writeln!(err, "infeasible: an artificial arc carries flow in the auxiliary optimum")?;
                return Ok(EXIT_INFEASIBLE);
            }
            Ok(EXIT_OPTIMAL)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}

pub fn cmd_solve(
    text: &str,
    config: &SolveConfig,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    cmd_solve_with(text, config, format, out, err, &mut intflow_core::NoObserver)
}

/// Emits one JSON line per outer iteration.
pub struct TraceObserver<'a> {
    out: &'a mut dyn Write,
    component: usize,
    refreshes: bool,
    pub error: Option<std::io::Error>,
}

impl<'a> TraceObserver<'a> {
    pub fn new(out: &'a mut dyn Write, refreshes: bool) -> Self {
        TraceObserver {
            out,
            component: 0,
            refreshes,
            error: None,
        }
    }

    fn emit(&mut self, v: serde_json::Value) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{v}") {
                self.error = Some(e);
            }
        }
    }
}

impl Observer for TraceObserver<'_> {
    fn on_component(&mut self, ctx: &ComponentContext<'_>) {
        self.component = ctx.index;
        self.emit(json!({
            "component": ctx.index,
            "nodes": ctx.component.nodes.len(),
            "arcs": ctx.component.arcs.len(),
            "beta": ctx.cert.beta.to_string(),
            "gamma": ctx.cert.gamma.to_string(),
            "mu0": ctx.cert.mu0.to_string(),
        }));
    }

    fn on_refresh(&mut self, iter: u64, r: &RefreshRecord) {
        if self.refreshes {
            self.emit(json!({
                "component": self.component,
                "iter": iter,
                "updates": r.updates,
                "deviation_sum": r.deviation_sum.to_string(),
                "max_abs": r.max_abs.to_string(),
            }));
        }
    }

    fn on_iteration(&mut self, r: &IterationRecord, _state: &IterateState, _minor: &MinorView) {
        self.emit(json!({
            "component": self.component,
            "iter": r.iter,
            "mu": r.mu.to_string(),
            "minor_arcs": r.minor_arcs,
            "contracted": r.contracted,
            "deleted": r.deleted,
            "gap_sum": r.gap_sum.to_string(),
            "max_abs": r.max_abs.to_string(),
            "updates": r.centering_updates,
        }));
    }
}

/// Solve with per-iteration trace records on `out`, followed by a summary
/// record.
pub fn cmd_trace(
    text: &str,
    config: &SolveConfig,
    refreshes: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let inst = parse_dimacs(text)?;
    let mut obs = TraceObserver::new(out, refreshes);
    let result = solve(&inst, config, &mut obs);
    if let Some(e) = obs.error.take() {
        return Err(e.into());
    }
    match result {
        Ok(sol) => {
            let status = match sol.status {
                SolveStatus::Optimal => "optimal",
                SolveStatus::Infeasible => "infeasible",
            };
            writeln!(
                out,
                "{}",
                json!({
                    "status": status,
                    "objective": sol.objective.as_ref().map(|o| o.to_string()),
                    "iterations": sol.iterations(),
                    "max_abs": sol.max_abs().to_string(),
                })
            )?;
            Ok(if sol.status == SolveStatus::Optimal { EXIT_OPTIMAL } else { EXIT_INFEASIBLE })
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}

/// Solve with the successive-shortest-path oracle.
pub fn cmd_oracle(text: &str, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let inst = parse_dimacs(text)?;
    match ssp_solve(&inst) {
        OracleSolution::Optimal { flow, potential, .. } => {
            out.write_all(format_solution(&inst, SolveStatus::Optimal, &flow, &potential, None, format).as_bytes())?;
            Ok(EXIT_OPTIMAL)
        }
        OracleSolution::Infeasible => {
            out.write_all(format_solution(&inst, SolveStatus::Infeasible, &[], &[], None, format).as_bytes())?;
            Ok(EXIT_INFEASIBLE)
        }
    }
}

/// A solution file in the DIMACS output format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSolution {
    pub objective: Option<ExactInt>,
    pub flow: Vec<ExactInt>,
    pub potential: Vec<ExactInt>,
}

pub fn parse_solution(text: &str, inst: &RawInstance) -> Result<ParsedSolution> {
    let mut objective = None;
    let mut seen_status = false;
    let mut flow = Vec::new();
    let mut potential = vec![None; inst.node_count()];
    for (i, line) in text.lines().enumerate() {
        let f: Vec<&str> = line.split_whitespace().collect();
        let ctx = || format!("solution line {}", i + 1);
        match f.as_slice() {
            [] | ["c", ..] => {}
            ["s", "infeasible"] => seen_status = true,
            ["s", v] => {
                seen_status = true;
                objective = Some(v.parse::<ExactInt>().map_err(anyhow::Error::msg).with_context(ctx)?);
            }
            ["f", t, h, v] => {
                let a = flow.len();
                if a >= inst.arc_count() {
                    bail!("{}: more flow lines than arcs", ctx());
                }
                let (t, h): (usize, usize) = (t.parse().with_context(ctx)?, h.parse().with_context(ctx)?);
                if (t, h) != (inst.graph.tail(a) + 1, inst.graph.head(a) + 1) {
                    bail!("{}: flow line does not match arc {}", ctx(), a + 1);
                }
                flow.push(v.parse::<ExactInt>().map_err(anyhow::Error::msg).with_context(ctx)?);
            }
            ["d", v, p] => {
                let v: usize = v.parse().with_context(ctx)?;
                if v == 0 || v > inst.node_count() {
                    bail!("{}: node {v} out of range", ctx());
                }
                potential[v - 1] = Some(p.parse::<ExactInt>().map_err(anyhow::Error::msg).with_context(ctx)?);
            }
            _ => bail!("{}: unrecognized line `{line}`", ctx()),
        }
    }
    if !seen_status {
        bail!("solution has no `s` line");
    }
    if objective.is_some() && flow.len() != inst.arc_count() {
        bail!("solution has {} flow lines for {} arcs", flow.len(), inst.arc_count());
    }
    let potential = if objective.is_some() {
        potential
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.with_context(|| format!("missing potential for node {}", v + 1)))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(ParsedSolution {
        objective,
        flow,
        potential,
    })
}

/// Check a solution file against an instance. Optimal claims get the five
/// exact optimality checks; infeasibility claims are checked by the oracle.
pub fn cmd_verify(instance: &str, solution: &str, out: &mut dyn Write) -> Result<i32> {
    let inst = parse_dimacs(instance)?;
    let sol = parse_solution(solution, &inst)?;
    let Some(claimed) = sol.objective else {
        let ok = ssp_solve(&inst) == OracleSolution::Infeasible;
        writeln!(out, "infeasibility {}", if ok { "confirmed" } else { "REFUTED by oracle" })?;
        return Ok(if ok { EXIT_OPTIMAL } else { EXIT_ERROR });
    };
    let report = verify_certificate(&inst, &sol.flow, &sol.potential);
    let objective_ok = inst.objective(&sol.flow) == claimed;
    for (name, ok) in [
        ("conservation", report.conservation),
        ("capacity", report.capacity),
        ("empty arcs", report.at_lower),
        ("saturated arcs", report.at_upper),
        ("interior arcs", report.interior),
        ("objective", objective_ok),
    ] {
        writeln!(out, "{name}: {}", if ok { "pass" } else { "FAIL" })?;
    }
    for f in &report.failures {
        writeln!(out, "  {f}")?;
    }
    Ok(if report.passed() && objective_ok { EXIT_OPTIMAL } else { EXIT_ERROR })
}

pub fn cmd_gen(seed: u64, params: &GeneratorParams, out: &mut dyn Write) -> Result<i32> {
    if params.nodes < 2 {
        bail!("the generator needs at least two nodes");
    }
    let inst = random_instance(seed, params);
    let comment = format!(
        "intflow gen seed {seed} nodes {} arcs {} max-capacity {} max-cost {} mode {:?}",
        params.nodes, params.arcs, params.max_capacity, params.max_cost, params.mode
    );
    out.write_all(write_dimacs(&inst, &[comment]).as_bytes())?;
    Ok(EXIT_OPTIMAL)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = "p min 3 3\nn 1 2\nn 3 -2\na 1 2 0 2 1\na 2 3 0 2 1\na 1 3 0 1 3\n";

    #[test]
    fn solve_e1() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cmd_solve(E1, &SolveConfig::default(), OutputFormat::Dimacs, &mut out, &mut err).unwrap();
        assert_eq!(code, EXIT_OPTIMAL);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("s 4\n"));
        assert!(text.contains("f 1 2 2\nf 2 3 2\nf 1 3 0\n"));
    }

    #[test]
    fn oracle_e1_and_verify() {
        let mut out = Vec::new();
        assert_eq!(cmd_oracle(E1, OutputFormat::Dimacs, &mut out).unwrap(), EXIT_OPTIMAL);
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("s 4\n"));
        let mut report = Vec::new();
        assert_eq!(cmd_verify(E1, &text, &mut report).unwrap(), EXIT_OPTIMAL);
    }

    #[test]
    fn verify_rejects_suboptimal() {
        let sol = "s 6\nf 1 2 1\nf 2 3 1\nf 1 3 1\nd 1 0\nd 2 1\nd 3 2\n";
        let mut report = Vec::new();
        assert_eq!(cmd_verify(E1, sol, &mut report).unwrap(), EXIT_ERROR);
    }

    #[test]
    fn json_lines_output() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        cmd_solve(E1, &SolveConfig::default(), OutputFormat::JsonLines, &mut out, &mut err).unwrap();
        let text = String::from_utf8(out).unwrap();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["objective"], "4");
        assert!(text.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
    }

    #[test]
    fn trace_has_iteration_fields() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(cmd_trace(E1, &SolveConfig::default(), false, &mut out, &mut err).unwrap(), EXIT_OPTIMAL);
        let text = String::from_utf8(out).unwrap();
        let rec: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
        for key in ["iter", "mu", "minor_arcs", "contracted", "deleted", "gap_sum", "max_abs"] {
            assert!(rec.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn ceiling_maps_to_exit_three() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let config = SolveConfig {
            max_iterations: Some(1),
            ..Default::default()
        };
        assert_eq!(cmd_solve(E1, &config, OutputFormat::Dimacs, &mut out, &mut err).unwrap(), EXIT_CEILING);
    }
}
