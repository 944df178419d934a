//! Turning command-line text into a validated ring and system.

use std::sync::Arc;

use anyhow::{Context, Result};
use clap::Args;
use lfds_core::decompose::check_system;
use lfds_core::factor::DEFAULT_SEED;
use lfds_core::poly::text::{format_int_poly, parse_int_poly};
use lfds_core::{Error, GrPoly, RingSpec};
use serde::{Deserialize, Serialize};

#[derive(Args, Clone, Debug)]
pub struct RingArgs {
    /// Characteristic of the residue field.
    #[arg(short = 'p', long = "prime")]
    pub p: u64,
    /// Degree of the residue field over F_p.
    #[arg(short = 'd', long = "degree", default_value_t = 1)]
    pub d: usize,
    /// Coefficients are taken modulo p^e.
    #[arg(short = 'e', long = "precision", default_value_t = 1)]
    pub e: u32,
    /// Defining polynomial h(t), monic of degree d and irreducible mod p.
    /// Required when d > 1.
    #[arg(short = 'h', long = "defining", value_name = "H")]
    pub h: Option<String>,
    /// Seed for the randomized factorization.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug)]
pub struct SystemArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Multiplier f, as polynomial text in x.
    #[arg(short = 'f', long = "multiplier", value_name = "F", allow_hyphen_values = true)]
    pub f: String,
    /// Modulus m, monic (or with a unit leading coefficient).
    #[arg(short = 'm', long = "modulus", value_name = "M", allow_hyphen_values = true)]
    pub m: String,
}

/// The ring and polynomials echoed back in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEcho {
    pub p: u64,
    pub d: usize,
    pub e: u32,
    pub h: Option<String>,
    pub seed: u64,
}

impl RingArgs {
    pub fn spec(&self) -> Result<Arc<RingSpec>> {
        let h = match (&self.h, self.d) {
            (None, 1) => None,
            (None, d) => {
                return Err(Error::Usage(format!("d = {d} needs an explicit defining polynomial -h")).into())
            }
            (Some(text), _) => {
                let ints = parse_int_poly(text, 't').context("reading -h")?;
                let p = self.p as i64;
                if p <= 0 {
                    return Err(Error::Usage(format!("p = {} is out of range", self.p)).into());
                }
                Some(ints.iter().map(|c| c.rem_euclid(p) as u64).collect::<Vec<u64>>())
            }
        };
        Ok(RingSpec::new(self.p, self.d, self.e, h.as_deref())?)
    }

    pub fn echo(&self, spec: &RingSpec) -> RingEcho {
        RingEcho {
            p: spec.p(),
            d: spec.d(),
            e: spec.e(),
            h: self.h.as_ref().map(|_| format_int_poly(spec.h(), 't')),
            seed: self.seed,
        }
    }
}

/// Parses `src` at the top precision and makes it monic when its leading
/// coefficient is a unit.
pub fn parse_modulus(spec: &Arc<RingSpec>, e: u32, src: &str) -> Result<GrPoly> {
    let m = GrPoly::parse(spec, e, src).context("reading -m")?;
    if m.is_zero() {
        return Err(Error::Usage("modulus m is zero".into()).into());
    }
    if m.is_monic() {
        return Ok(m);
    }
    m.make_monic()
        .map_err(|_| Error::Domain(format!("modulus {m} has a non-unit leading coefficient")))
        .map_err(Into::into)
}

#[derive(Clone, Debug)]
pub struct System {
    pub spec: Arc<RingSpec>,
    pub e: u32,
    pub f: GrPoly,
    pub m: GrPoly,
    pub ring: RingEcho,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEcho {
    #[serde(flatten)]
    pub ring: RingEcho,
    pub f: String,
    pub m: String,
}

impl SystemArgs {
    pub fn system(&self) -> Result<System> {
        let spec = self.ring.spec()?;
        let e = self.ring.e;
        let f = GrPoly::parse(&spec, e, &self.f).context("reading -f")?;
        let m = parse_modulus(&spec, e, &self.m)?;
        check_system(&f, &m)?;
        Ok(System { ring: self.ring.echo(&spec), spec, e, f, m })
    }
}

impl System {
    pub fn echo(&self) -> SystemEcho {
        SystemEcho { ring: self.ring.clone(), f: self.f.to_string(), m: self.m.to_string() }
    }

    pub fn describe(&self) -> String {
        format!("GR({}^{}, {}): f = {}, m = {}", self.spec.p(), self.e, self.spec.d(), self.f, self.m)
    }
}
