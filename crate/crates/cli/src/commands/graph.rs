use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use lfds_core::oracle::{build_functional_graph, CycleCount, DEFAULT_CAP};
use lfds_core::par::Execution;
use serde::{Deserialize, Serialize};

use super::{outcome, set_text, write_dot, DotEcho, Outcome};
use crate::system::{SystemArgs, SystemEcho};

#[derive(Args, Clone, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Largest state count to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub oracle_cap: u64,
    /// Write the graph as Graphviz text.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRequest {
    #[serde(flatten)]
    pub system: SystemEcho,
    pub oracle_cap: u64,
    pub dot: Option<String>,
}

#[derive(Serialize)]
struct Body {
    precision: u32,
    state_count: u64,
    cycles: Vec<CycleCount>,
    max_height: u32,
    component_count: usize,
    dot: Option<DotEcho>,
}

/// Enumerates the functional graph at precision `e`.
pub fn run(args: &GraphArgs) -> Result<Outcome> {
    let sys = args.system.system()?;
    let request = GraphRequest {
        system: sys.echo(),
        oracle_cap: args.oracle_cap,
        dot: args.dot.as_ref().map(|p| p.display().to_string()),
    };
    let graph = build_functional_graph(&sys.f, &sys.m, sys.e, args.oracle_cap, Execution::default())?;
    let summary = graph.summarize();
    let dot = args.dot.as_ref().map(|path| write_dot(&graph, path)).transpose()?;
    let body = Body {
        precision: sys.e,
        state_count: summary.state_count,
        component_count: summary.components.len(),
        cycles: summary.cycles,
        max_height: summary.max_height,
        dot,
    };
    let mut text = String::new();
    let _ = writeln!(text, "system: {}", sys.describe());
    let _ = writeln!(text, "states: {}, components: {}", body.state_count, body.component_count);
    let lengths: Vec<u128> = body.cycles.iter().map(|c| c.length).collect();
    let _ = writeln!(text, "cycle lengths: {}", set_text(&lengths));
    for c in &body.cycles {
        let _ = writeln!(text, "  {} cycle(s) of length {}", c.count, c.length);
    }
    let _ = writeln!(text, "max height: {}", body.max_height);
    if let Some(d) = &body.dot {
        let _ = writeln!(text, "dot: {} ({})", d.path, d.kind);
    }
    outcome("graph", &request, &body, text, true)
}
