//! DIMACS min-cost flow format.
//!
//! Node lines give supplies (outflow positive); internally demands are
//! inflow positive, so `b_v = -supply_v`. Lower bounds must be zero.

use std::fmt::Write;

use thiserror::Error;

use crate::arith::ExactInt;
use crate::instance::{RawArc, RawInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: nonzero lower bound {low} is not supported")]
    LowerBound { line: usize, low: String },
}

fn format_err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Format {
        line,
        message: message.into(),
    }
}

fn field<'a>(
    it: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<&'a str, DimacsError> {
    it.next().ok_or_else(|| format_err(line, format!("missing {what}")))
}

fn int(tok: &str, line: usize, what: &str) -> Result<ExactInt, DimacsError> {
    tok.parse()
        .map_err(|_| format_err(line, format!("{what} `{tok}` is not an integer")))
}

fn node(tok: &str, line: usize, n: usize) -> Result<usize, DimacsError> {
    let id: usize = tok
        .parse()
        .map_err(|_| format_err(line, format!("node id `{tok}` is not a positive integer")))?;
    if id == 0 || id > n {
        return Err(format_err(line, format!("node id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_dimacs(text: &str) -> Result<RawInstance, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut supply: Vec<ExactInt> = Vec::new();
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut it = raw.split_whitespace();
        let Some(kind) = it.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(format_err(line, "second problem line"));
                }
                if field(&mut it, line, "problem type")? != "min" {
                    return Err(format_err(line, "problem type must be `min`"));
                }
                let n = field(&mut it, line, "node count")?
                    .parse()
                    .map_err(|_| format_err(line, "bad node count"))?;
                let m = field(&mut it, line, "arc count")?
                    .parse()
                    .map_err(|_| format_err(line, "bad arc count"))?;
                header = Some((n, m));
                supply = vec![ExactInt::zero(); n];
            }
            "n" | "a" => {
                let Some((n, _)) = header else {
                    return Err(format_err(line, "data before the problem line"));
                };
                if kind == "n" {
                    let v = node(field(&mut it, line, "node id")?, line, n)?;
                    supply[v] = int(field(&mut it, line, "supply")?, line, "supply")?;
                } else {
                    let t = node(field(&mut it, line, "tail")?, line, n)?;
                    let h = node(field(&mut it, line, "head")?, line, n)?;
                    let low_tok = field(&mut it, line, "lower bound")?;
                    let low = int(low_tok, line, "lower bound")?;
                    let cap = int(field(&mut it, line, "capacity")?, line, "capacity")?;
                    let cost = int(field(&mut it, line, "cost")?, line, "cost")?;
                    if !low.is_zero() {
                        return Err(DimacsError::LowerBound {
                            line,
                            low: low_tok.to_string(),
                        });
                    }
                    if cap.is_negative() {
                        return Err(format_err(line, "negative capacity"));
                    }
                    arcs.push(RawArc {
                        tail: t,
                        head: h,
                        capacity: cap,
                        cost,
                    });
                }
            }
            other => return Err(format_err(line, format!("unknown line type `{other}`"))),
        }
        if it.next().is_some() {
            return Err(format_err(line, "trailing fields"));
        }
    }
    let Some((_, m)) = header else {
        return Err(format_err(last_line, "missing problem line"));
    };
    if arcs.len() != m {
        return Err(format_err(
            last_line,
            format!("problem line announces {m} arcs, found {}", arcs.len()),
        ));
    }
    let total: ExactInt = supply.iter().sum();
    if !total.is_zero() {
        return Err(format_err(last_line, format!("supplies sum to {total}, not 0")));
    }
    Ok(RawInstance::new(supply.into_iter().map(|s| -s).collect(), arcs))
}

/// Canonical DIMACS text: problem line, nonzero node lines in id order, then
/// arcs in id order.
pub fn write_dimacs(inst: &RawInstance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p min {} {}", inst.node_count(), inst.arc_count());
    for (v, b) in inst.demand.iter().enumerate() {
        if !b.is_zero() {
            let _ = writeln!(out, "n {} {}", v + 1, -b.clone());
        }
    }
    for a in 0..inst.arc_count() {
        let arc = inst.arc(a);
        let _ = writeln!(
            out,
            "a {} {} 0 {} {}",
            arc.tail + 1,
            arc.head + 1,
            arc.capacity,
            arc.cost
        );
    }
    out
}
