use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use lfds_core::cycles::{analyze_field, ring_cycle_sets, CycleCensusField, FactorOrders, Variant};
use lfds_core::decompose::group_by_order;
use lfds_core::height::{height_ring, HeightReport};
use lfds_core::hensel::lift_f_decomposition;
use lfds_core::oracle::{build_functional_graph, DEFAULT_CAP};
use lfds_core::par::Execution;
use lfds_core::ring::intfact::checked_lcm;
use serde::{Deserialize, Serialize};

use super::{outcome, primaries, render_timing, set_text, write_dot, DotEcho, Outcome, Primary, Timer};
use crate::system::{SystemArgs, SystemEcho};

#[derive(Args, Clone, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Track one witness per class of factors sharing a base order.
    #[arg(long)]
    pub grouped: bool,
    /// Compare every precision with the brute-force functional graph.
    #[arg(long)]
    pub check_oracle: bool,
    /// Largest state count the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub oracle_cap: u64,
    /// Write the functional graph at precision e as Graphviz text.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    #[serde(flatten)]
    pub system: SystemEcho,
    pub grouped: bool,
    pub check_oracle: bool,
    pub oracle_cap: u64,
    pub dot: Option<String>,
}

#[derive(Serialize)]
struct Decomposition {
    field_m1_degree: usize,
    field_m1: String,
    field_m2: String,
    m1: String,
    m2: String,
    nilpotency_exponent: u128,
    factors: Vec<FactorOrders>,
    nilpotent_factors: Vec<Primary>,
}

#[derive(Serialize)]
struct OrderClass {
    base_order: u128,
    /// Indices into `decomposition.factors`.
    members: Vec<usize>,
    /// Order of `f` modulo the lifted class product at each precision.
    orders: Vec<u128>,
}

#[derive(Serialize)]
struct Level {
    precision: u32,
    lengths: Vec<u128>,
}

#[derive(Serialize)]
struct OracleLevel {
    precision: u32,
    state_count: usize,
    lengths: Vec<u128>,
    max_height: u32,
}

#[derive(Serialize)]
struct OracleVerdict {
    cap: u64,
    levels: Vec<OracleLevel>,
    agrees: bool,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct Body {
    variant: &'static str,
    decomposition: Decomposition,
    order_classes: Vec<OrderClass>,
    cycle_sets: Vec<Level>,
    field_census: CycleCensusField,
    height: HeightReport,
    oracle: Option<OracleVerdict>,
    dot: Option<DotEcho>,
    timing_us: Option<BTreeMap<&'static str, u64>>,
}

pub fn run(args: &AnalyzeArgs, timing: bool) -> Result<Outcome> {
    let sys = args.system.system()?;
    let request = AnalyzeRequest {
        system: sys.echo(),
        grouped: args.grouped,
        check_oracle: args.check_oracle,
        oracle_cap: args.oracle_cap,
        dot: args.dot.as_ref().map(|p| p.display().to_string()),
    };
    let exec = Execution::default();
    let (f, m, e) = (&sys.f, &sys.m, sys.e);
    let p = sys.spec.p();
    let mut timer = Timer::new(timing);

    let fa = timer.stage("field", || analyze_field(f, m, sys.ring.seed, exec))?;
    let lifted = timer.stage("decomposition", || lift_f_decomposition(f, m, (&fa.split.m1, &fa.split.m2), e))?;
    let variant = if args.grouped { Variant::Grouped } else { Variant::PerFactor };
    let rc = timer.stage("cycle_sets", || ring_cycle_sets(f, m, e, &fa, variant, exec))?;
    let census = timer.stage("census", || fa.census())?;
    let height = timer.stage("height", || height_ring(f, m, e, &fa.split.m2, rc.max_length()))?;

    let bases: Vec<u128> = fa.factors.iter().map(|fo| fo.base_order).collect();
    let mut order_classes = Vec::new();
    for (j, (base_order, members)) in group_by_order(&bases).into_iter().enumerate() {
        let orders = (1..=e)
            .map(|eps| {
                if args.grouped {
                    rc.tracks[j].order_at(p, eps).map_err(anyhow::Error::from)
                } else {
                    members.iter().try_fold(1u128, |acc, &i| {
                        Ok(checked_lcm(acc, rc.tracks[i].order_at(p, eps)?)?)
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        order_classes.push(OrderClass { base_order, members, orders });
    }

    let oracle = if args.check_oracle {
        Some(timer.stage("oracle", || -> Result<OracleVerdict> {
            let mut levels = Vec::new();
            let mut mismatches = Vec::new();
            for eps in 1..=e {
                let g = build_functional_graph(f, m, eps, args.oracle_cap, exec)?;
                let summary = g.summarize();
                let lengths = summary.cycle_set().lengths();
                let ours = rc.levels[eps as usize - 1].lengths();
                if lengths != ours {
                    mismatches.push(format!(
                        "precision {eps}: oracle {} vs computed {}",
                        set_text(&lengths),
                        set_text(&ours)
                    ));
                }
                if eps == e && summary.max_height != height.height {
                    mismatches.push(format!(
                        "height: oracle {} vs computed {}",
                        summary.max_height, height.height
                    ));
                }
                levels.push(OracleLevel {
                    precision: eps,
                    state_count: g.state_count(),
                    lengths,
                    max_height: summary.max_height,
                });
            }
            Ok(OracleVerdict { cap: args.oracle_cap, levels, agrees: mismatches.is_empty(), mismatches })
        })?)
    } else {
        None
    };

    let dot = match &args.dot {
        Some(path) => Some(timer.stage("dot", || -> Result<DotEcho> {
            write_dot(&build_functional_graph(f, m, e, args.oracle_cap, exec)?, path)
        })?),
        None => None,
    };

    let body = Body {
        variant: if args.grouped { "grouped" } else { "per-factor" },
        decomposition: Decomposition {
            field_m1_degree: fa.split.m1.deg(),
            field_m1: fa.split.m1.to_string(),
            field_m2: fa.split.m2.to_string(),
            m1: lifted.m1.to_string(),
            m2: lifted.m2.to_string(),
            nilpotency_exponent: lifted.n,
            factors: fa.factors.clone(),
            nilpotent_factors: primaries(&fa.split.nilpotent),
        },
        order_classes,
        cycle_sets: rc
            .levels
            .iter()
            .enumerate()
            .map(|(i, c)| Level { precision: i as u32 + 1, lengths: c.lengths() })
            .collect(),
        field_census: census,
        height,
        oracle,
        dot,
        timing_us: timer.report(),
    };
    let ok = body.oracle.as_ref().is_none_or(|o| o.agrees);
    let text = render(&sys.describe(), &body);
    outcome("analyze", &request, &body, text, ok)
}

fn render(system: &str, b: &Body) -> String {
    let mut out = String::new();
    let d = &b.decomposition;
    let _ = writeln!(out, "system: {system}");
    let _ = writeln!(out, "field split: deg M1 = {}, M2 = {}", d.field_m1_degree, d.field_m2);
    let _ = writeln!(
        out,
        "primary factors of M1: {} in {} order classes ({})",
        d.factors.len(),
        b.order_classes.len(),
        b.variant
    );
    for level in &b.cycle_sets {
        let _ = writeln!(out, "C(Γ_{}) = {}", level.precision, set_text(&level.lengths));
    }
    let h = &b.height;
    let _ = writeln!(out, "height: {} (field height {}, bound {})", h.height, h.field_height, h.bound);
    if let Some(o) = &b.oracle {
        if o.agrees {
            let _ = writeln!(out, "oracle: agrees at all {} precisions", o.levels.len());
        } else {
            let _ = writeln!(out, "oracle: MISMATCH");
            for m in &o.mismatches {
                let _ = writeln!(out, "  {m}");
            }
        }
    }
    if let Some(dot) = &b.dot {
        let _ = writeln!(out, "dot: {} ({})", dot.path, dot.kind);
    }
    out.push_str(&render_timing(&b.timing_us));
    out
}
