use std::fmt::Write as _;

use anyhow::Result;
use clap::Args;
use lfds_core::factor::factor_with;
use lfds_core::hensel::hensel_multi_with;
use lfds_core::par::Execution;
use lfds_core::GrPoly;
use serde::{Deserialize, Serialize};

use super::{outcome, Outcome};
use crate::system::{parse_modulus, RingArgs, RingEcho};

#[derive(Args, Clone, Debug)]
pub struct FactorArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Polynomial to factor, monic (or with a unit leading coefficient).
    #[arg(short = 'm', long = "modulus", value_name = "M", allow_hyphen_values = true)]
    pub m: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRequest {
    #[serde(flatten)]
    pub ring: RingEcho,
    pub m: String,
}

#[derive(Serialize)]
struct Lifted {
    /// Irreducible factor mod p.
    g: String,
    k: u32,
    /// Monic factor at precision e reducing to `g^k`.
    factor: String,
}

#[derive(Serialize)]
struct Body {
    precision: u32,
    factors: Vec<Lifted>,
}

/// Primary factorization: irreducibles mod p, lifted to precision `e`.
pub fn run(args: &FactorArgs) -> Result<Outcome> {
    let spec = args.ring.spec()?;
    let e = args.ring.e;
    let m = parse_modulus(&spec, e, &args.m)?;
    if m.deg() == 0 {
        return Err(lfds_core::Error::Usage("nothing to factor: m is constant".into()).into());
    }
    let exec = Execution::default();
    let fac = factor_with(&m.project(1)?, args.ring.seed, exec)?;
    let parts: Vec<GrPoly> = fac
        .factors
        .iter()
        .map(|(g, k)| (0..*k).fold(GrPoly::one(&spec, 1), |a, _| &a * g))
        .collect();
    let lifted = hensel_multi_with(&m, &parts, e, exec)?;
    let factors: Vec<Lifted> = fac
        .factors
        .iter()
        .zip(&lifted)
        .map(|((g, k), l)| Lifted { g: g.to_string(), k: *k, factor: l.to_string() })
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "{} primary factor(s) of {} over GR({}^{}, {})", factors.len(), m, spec.p(), e, spec.d());
    for l in &factors {
        if e == 1 {
            let _ = writeln!(text, "  ({})^{}", l.g, l.k);
        } else {
            let _ = writeln!(text, "  ({})^{}  ->  {}", l.g, l.k, l.factor);
        }
    }
    let request = FactorRequest { ring: args.ring.echo(&spec), m: m.to_string() };
    outcome("factor", &request, &Body { precision: e, factors }, text, true)
}
