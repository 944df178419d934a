//! Subcommand implementations. Each returns the JSON report, the text
//! rendering and whether the run should count as a success.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use lfds_core::oracle::{export_dot, export_summary_dot, FunctionalGraph, DOT_LIMIT};
use lfds_core::GrPoly;
use serde::Serialize;

pub mod analyze;
pub mod decompose;
pub mod factor;
pub mod graph;
pub mod histogram;
pub mod order;

/// Version of the JSON report layout described in `docs/report-schema.md`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub ok: bool,
}

#[derive(Serialize)]
struct Envelope<'a, Q: Serialize, B: Serialize> {
    schema_version: u32,
    command: &'a str,
    request: &'a Q,
    #[serde(flatten)]
    body: &'a B,
}

pub fn outcome<Q: Serialize, B: Serialize>(command: &str, request: &Q, body: &B, text: String, ok: bool) -> Result<Outcome> {
    let envelope = Envelope { schema_version: SCHEMA_VERSION, command, request, body };
    let mut json = serde_json::to_string_pretty(&envelope)?;
    json.push('\n');
    Ok(Outcome { json, text, ok })
}

/// Wall-clock microseconds per pipeline stage.
pub struct Timer {
    enabled: bool,
    stages: BTreeMap<&'static str, u64>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer { enabled, stages: BTreeMap::new() }
    }

    pub fn stage<T>(&mut self, name: &'static str, run: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = run();
        if self.enabled {
            let us = u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX);
            *self.stages.entry(name).or_default() += us;
        }
        out
    }

    pub fn report(self) -> Option<BTreeMap<&'static str, u64>> {
        self.enabled.then_some(self.stages)
    }
}

pub fn render_timing(timing: &Option<BTreeMap<&'static str, u64>>) -> String {
    match timing {
        Some(stages) if !stages.is_empty() => {
            let parts: Vec<String> = stages.iter().map(|(k, v)| format!("{k} {:.3} ms", *v as f64 / 1000.0)).collect();
            format!("timing: {}\n", parts.join(", "))
        }
        _ => String::new(),
    }
}

/// A primary factor `g^k`.
#[derive(Serialize)]
pub struct Primary {
    pub g: String,
    pub k: u32,
}

pub fn primaries(items: &[(GrPoly, u32)]) -> Vec<Primary> {
    items.iter().map(|(g, k)| Primary { g: g.to_string(), k: *k }).collect()
}

#[derive(Serialize)]
pub struct DotEcho {
    pub path: String,
    /// `full` (one vertex per state) or `summary` (one vertex per cycle length).
    pub kind: &'static str,
}

/// Writes the full graph when it is small enough for [`DOT_LIMIT`],
/// otherwise the cycle summary.
pub fn write_dot(graph: &FunctionalGraph, path: &Path) -> Result<DotEcho> {
    let (text, kind) = if graph.state_count() <= DOT_LIMIT {
        (export_dot(graph)?, "full")
    } else {
        (export_summary_dot(&graph.summarize()), "summary")
    };
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(DotEcho { path: path.display().to_string(), kind })
}

pub fn set_text(lengths: &[u128]) -> String {
    let parts: Vec<String> = lengths.iter().map(u128::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}
