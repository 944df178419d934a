use anyhow::Result;
use clap::Args;
use lfds_core::cycles::analyze_field;
use lfds_core::order::order_histogram;
use lfds_core::par::Execution;
use serde::{Deserialize, Serialize};

use super::{outcome, Outcome};
use crate::system::{SystemArgs, SystemEcho};

#[derive(Args, Clone, Debug)]
pub struct HistogramArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramRequest {
    #[serde(flatten)]
    pub system: SystemEcho,
}

#[derive(Serialize)]
struct Row {
    order: u128,
    count: usize,
}

#[derive(Serialize)]
struct Body {
    /// Irreducible divisors of `M₁`, i.e. the sum of all counts.
    divisor_count: usize,
    rows: Vec<Row>,
}

/// Rows `(order, count)`: how many irreducible divisors `G` of `M₁` have
/// `O(f mod p, G) = order`. The text form is CSV.
pub fn run(args: &HistogramArgs) -> Result<Outcome> {
    let sys = args.system.system()?;
    let fa = analyze_field(&sys.f, &sys.m, sys.ring.seed, Execution::default())?;
    let rows: Vec<Row> = order_histogram(fa.factors.iter().map(|fo| fo.base_order))
        .into_iter()
        .map(|(order, count)| Row { order, count })
        .collect();
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    csv.write_record(["order", "count"])?;
    for r in &rows {
        csv.write_record([r.order.to_string(), r.count.to_string()])?;
    }
    let text = String::from_utf8(csv.into_inner()?)?;
    let body = Body { divisor_count: fa.factors.len(), rows };
    outcome("orders-histogram", &HistogramRequest { system: sys.echo() }, &body, text, true)
}
