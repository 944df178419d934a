use std::fmt::Write as _;

use anyhow::Result;
use clap::Args;
use lfds_core::cycles::{analyze_field, ring_cycle_sets, FactorOrders, Variant};
use lfds_core::par::Execution;
use lfds_core::ring::intfact::checked_lcm;
use serde::{Deserialize, Serialize};

use super::{outcome, Outcome};
use crate::system::{SystemArgs, SystemEcho};

#[derive(Args, Clone, Debug)]
pub struct OrderArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRequest {
    #[serde(flatten)]
    pub system: SystemEcho,
}

#[derive(Serialize)]
struct Level {
    precision: u32,
    /// Order of `f` modulo `(m₁, p^ε)`.
    order: u128,
}

#[derive(Serialize)]
struct Body {
    /// False when part of `m` is nilpotent for `f`; orders then refer to `m₁`.
    invertible: bool,
    factors: Vec<FactorOrders>,
    /// Order of `f` modulo each lifted primary factor, per precision.
    factor_orders: Vec<Vec<u128>>,
    levels: Vec<Level>,
}

/// Orders of `f` modulo the bijective part of `m`, at every precision.
pub fn run(args: &OrderArgs) -> Result<Outcome> {
    let sys = args.system.system()?;
    let exec = Execution::default();
    let p = sys.spec.p();
    let fa = analyze_field(&sys.f, &sys.m, sys.ring.seed, exec)?;
    let rc = ring_cycle_sets(&sys.f, &sys.m, sys.e, &fa, Variant::PerFactor, exec)?;
    let factor_orders = rc
        .tracks
        .iter()
        .map(|t| (1..=sys.e).map(|eps| t.order_at(p, eps)).collect::<lfds_core::Result<Vec<_>>>())
        .collect::<lfds_core::Result<Vec<_>>>()?;
    let levels = (1..=sys.e)
        .map(|eps| {
            let order = factor_orders
                .iter()
                .try_fold(1u128, |acc, row| checked_lcm(acc, row[eps as usize - 1]))?;
            Ok(Level { precision: eps, order })
        })
        .collect::<lfds_core::Result<Vec<_>>>()?;
    let body = Body {
        invertible: fa.split.m2.deg() == 0,
        factors: fa.factors.clone(),
        factor_orders,
        levels,
    };
    let mut text = String::new();
    let _ = writeln!(text, "system: {}", sys.describe());
    if !body.invertible {
        let _ = writeln!(text, "f is not invertible mod m; orders are taken modulo the part m1 (M2 = {})", fa.split.m2);
    }
    for (fo, row) in body.factors.iter().zip(&body.factor_orders) {
        let orders: Vec<String> = row.iter().map(u128::to_string).collect();
        let _ = writeln!(text, "  ({})^{}: O = {}", fo.g, fo.k, orders.join(" -> "));
    }
    for l in &body.levels {
        let _ = writeln!(text, "O_{}(f, m1) = {}", l.precision, l.order);
    }
    outcome("order", &OrderRequest { system: sys.echo() }, &body, text, true)
}
