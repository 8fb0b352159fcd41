//! Analysis of a parsed program and its JSON and text renderings.

use std::time::Instant;

use fpfilter::intervals::{FpInterval, VarDomain};
use fpfilter::propagate::{detect_anomaly, propagate_fixpoint, AnomalyFinding, AnomalyStatus, Config, Constraint};
use fpfilter::softfloat::RoundingMode;
use serde_json::{json, Map, Value};

use crate::parse::Program;

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub format: String,
    pub consistent: bool,
    /// Refined domains, or None when the system is inconsistent.
    pub domains: Option<Vec<VarDomain>>,
    pub findings: Vec<AnomalyFinding>,
    pub iterations: u64,
    pub truncated: bool,
    pub search_nodes: u64,
    pub wall_time_ms: u128,
}

pub fn analyze(prog: &Program, cfg: &Config) -> Report {
    let start = Instant::now();
    let sys = &prog.system;
    let (consistent, domains, iterations, truncated) = match propagate_fixpoint(sys, cfg) {
        Ok(r) => (true, Some(r.domains), r.iterations, r.truncated),
        Err(e) => (false, None, e.iterations, false),
    };
    let mut findings = Vec::new();
    for (i, c) in sys.constraints.iter().enumerate() {
        if !matches!(c, Constraint::Arith { .. }) {
            continue;
        }
        for &kind in &prog.checks {
            findings.push(detect_anomaly(sys, i, kind, cfg));
        }
    }
    let search_nodes = findings.iter().map(|f| f.nodes).sum();
    Report {
        format: prog.format_name.clone(),
        consistent,
        domains,
        findings,
        iterations,
        truncated,
        search_nodes,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

pub fn mode_name(r: RoundingMode) -> &'static str {
    match r {
        RoundingMode::Nearest => "n",
        RoundingMode::Down => "down",
        RoundingMode::Up => "up",
        RoundingMode::TowardZero => "zero",
    }
}

fn status_name(s: &AnomalyStatus) -> &'static str {
    match s {
        AnomalyStatus::WitnessFound(_) => "witness_found",
        AnomalyStatus::ProvedImpossible => "proved_impossible",
        AnomalyStatus::Unknown => "unknown",
    }
}

fn interval_json(i: &FpInterval) -> Value {
    match i.bounds() {
        None => json!("empty"),
        Some((l, u)) => json!([l.to_string(), u.to_string()]),
    }
}

pub fn to_json(prog: &Program, rep: &Report) -> Value {
    let sys = &prog.system;
    let mut vars = Map::new();
    for (i, name) in sys.names.iter().enumerate() {
        let (interval, nan) = match &rep.domains {
            Some(d) => (interval_json(&d[i].interval), d[i].nan.may()),
            None => (json!("empty"), false),
        };
        vars.insert(name.clone(), json!({ "interval": interval, "may_be_nan": nan }));
    }
    let findings: Vec<Value> = rep
        .findings
        .iter()
        .map(|f| {
            let mut o = Map::new();
            o.insert("kind".into(), json!(f.kind.name()));
            o.insert("constraint".into(), json!(prog.constraint_text[f.constraint]));
            o.insert("status".into(), json!(status_name(&f.status)));
            if let AnomalyStatus::WitnessFound(w) = &f.status {
                let mut wit = Map::new();
                for (name, v) in sys.names.iter().zip(&w.values) {
                    wit.insert(name.clone(), json!(v.to_string()));
                }
                wit.insert("rounding".into(), json!(mode_name(w.mode)));
                o.insert("witness".into(), Value::Object(wit));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "format": rep.format,
        "consistent": rep.consistent,
        "variables": vars,
        "findings": findings,
        "stats": {
            "iterations": rep.iterations,
            "truncated": rep.truncated,
            "search_nodes": rep.search_nodes,
            "wall_time_ms": rep.wall_time_ms as u64,
        },
    })
}

pub fn to_text(prog: &Program, rep: &Report) -> String {
    let sys = &prog.system;
    let mut out = format!("format {}\n", rep.format);
    if !rep.consistent {
        out.push_str("system is inconsistent\n");
    }
    for (i, name) in sys.names.iter().enumerate() {
        let line = match &rep.domains {
            Some(d) => format!("{name} in {}{}\n", d[i].interval, if d[i].nan.may() { " or nan" } else { "" }),
            None => format!("{name} in empty\n"),
        };
        out.push_str(&line);
    }
    for f in &rep.findings {
        out.push_str(&format!("{}: {}: {}", prog.constraint_text[f.constraint], f.kind.name(), status_name(&f.status)));
        if let AnomalyStatus::WitnessFound(w) = &f.status {
            let vals: Vec<String> = sys.names.iter().zip(&w.values).map(|(n, v)| format!("{n}={v}")).collect();
            out.push_str(&format!(" ({}, rounding {})", vals.join(", "), mode_name(w.mode)));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} iterations{}, {} search nodes, {} ms\n",
        rep.iterations,
        if rep.truncated { " (limit reached)" } else { "" },
        rep.search_nodes,
        rep.wall_time_ms
    ));
    out
}
