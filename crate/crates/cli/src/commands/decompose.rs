use std::fmt::Write as _;

use anyhow::Result;
use clap::Args;
use lfds_core::decompose::{split_system_with, theta_grouping_with};
use lfds_core::order::order_irreducible;
use lfds_core::par::Execution;
use serde::{Deserialize, Serialize};

use super::{outcome, primaries, Outcome, Primary};
use crate::system::{SystemArgs, SystemEcho};

#[derive(Args, Clone, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeRequest {
    #[serde(flatten)]
    pub system: SystemEcho,
}

#[derive(Serialize)]
struct FieldPart {
    m1: String,
    m2: String,
    bijective: Vec<Primary>,
    nilpotent: Vec<Primary>,
}

#[derive(Serialize)]
struct Bezout {
    /// `alpha f + beta m₁ ≡ 1 mod p^e`.
    alpha: String,
    beta: String,
}

#[derive(Serialize)]
struct LiftedPart {
    m1: String,
    m2: String,
    /// `f^N ≡ 0 mod (m₂, p^e)`.
    nilpotency_exponent: u128,
    bezout: Bezout,
    bijective_factors: Vec<String>,
}

#[derive(Serialize)]
struct ThetaClass {
    base_order: u128,
    members: Vec<usize>,
    theta_field: String,
    theta: String,
}

#[derive(Serialize)]
struct Body {
    precision: u32,
    field: FieldPart,
    lifted: LiftedPart,
    order_classes: Vec<ThetaClass>,
}

/// `m ≡ m₁ m₂` with certificates, lifted primary factors of `m₁` and the
/// classes of factors sharing a base order.
pub fn run(args: &DecomposeArgs) -> Result<Outcome> {
    let sys = args.system.system()?;
    let exec = Execution::default();
    let split = split_system_with(&sys.f, &sys.m, sys.e, sys.ring.seed, exec)?;
    split.decomposition.verify(&sys.f, &sys.m)?;
    let fbar = sys.f.project(1)?;
    let bases = split
        .field_data()
        .iter()
        .map(|(g, _)| order_irreducible(&fbar, g))
        .collect::<lfds_core::Result<Vec<_>>>()?;
    let classes = theta_grouping_with(&split, &bases, exec)?;
    let d = &split.decomposition;
    let body = Body {
        precision: sys.e,
        field: FieldPart {
            m1: split.field.m1.to_string(),
            m2: split.field.m2.to_string(),
            bijective: primaries(&split.field.bijective),
            nilpotent: primaries(&split.field.nilpotent),
        },
        lifted: LiftedPart {
            m1: d.m1.to_string(),
            m2: d.m2.to_string(),
            nilpotency_exponent: d.n,
            bezout: Bezout { alpha: d.bezout.x.to_string(), beta: d.bezout.y.to_string() },
            bijective_factors: split.bijective_factors.iter().map(|g| g.to_string()).collect(),
        },
        order_classes: classes
            .into_iter()
            .map(|c| ThetaClass {
                base_order: c.base_order,
                members: c.members,
                theta_field: c.theta_field.to_string(),
                theta: c.theta.to_string(),
            })
            .collect(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "system: {}", sys.describe());
    let _ = writeln!(text, "m1 = {}", body.lifted.m1);
    let _ = writeln!(text, "m2 = {}  (f^{} = 0 mod m2)", body.lifted.m2, body.lifted.nilpotency_exponent);
    let _ = writeln!(text, "bijective primary factors: {}", body.lifted.bijective_factors.len());
    for (g, lifted) in body.field.bijective.iter().zip(&body.lifted.bijective_factors) {
        let _ = writeln!(text, "  ({})^{}  ->  {}", g.g, g.k, lifted);
    }
    let _ = writeln!(text, "order classes: {}", body.order_classes.len());
    for c in &body.order_classes {
        let _ = writeln!(text, "  base order {}: factors {:?}", c.base_order, c.members);
    }
    outcome("decompose", &DecomposeRequest { system: sys.echo() }, &body, text, true)
}
