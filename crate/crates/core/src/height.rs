//! Transient height: the longest path into a cycle, which equals the
//! preperiod of the element `1`.

use serde::Serialize;

use crate::decompose::check_system;
use crate::error::{domain, invariant, resource, usage, Result};
use crate::factor::{factor, DEFAULT_SEED};
use crate::poly::GrPoly;

/// Multiplicity of the irreducible `g` in `a` (`a` nonzero).
fn kappa(g: &GrPoly, a: &GrPoly) -> Result<u32> {
    let mut a = a.clone();
    let mut k = 0;
    loop {
        let (q, r) = a.divmod(g)?;
        if !r.is_zero() {
            return Ok(k);
        }
        a = q;
        k += 1;
    }
}

/// Height over the residue field: the max over irreducible `G | M₂` of
/// `⌈κ_G(M₂) / κ_G(F)⌉`; 0 when `M₂ = 1`.
pub fn height_field(big_f: &GrPoly, m2: &GrPoly) -> Result<u32> {
    big_f.check_compatible(m2)?;
    if big_f.precision() != 1 || !m2.is_monic() || big_f.is_zero() {
        return Err(usage("height_field expects nonzero F and monic M2 over the residue field"));
    }
    if m2.deg() == 0 {
        return Ok(0);
    }
    let fac = factor(m2, DEFAULT_SEED)?;
    let mut h = 0;
    for (g, k) in &fac.factors {
        let kf = kappa(g, big_f)?;
        if kf == 0 {
            return Err(domain(format!("{g} divides M2 but not F")));
        }
        h = h.max(k.div_ceil(kf));
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    /// Height over the residue field, `τ`.
    pub field_height: u32,
    /// Upper bound `e τ`.
    pub bound: u32,
    pub height: u32,
    pub probe_count: u32,
}

/// Least `h` with `f^{h+ℓ} ≡ f^h mod (m, p^e)`, searched on `[τ, eτ]`.
///
/// `m2` is the field-level nilpotent part and `l_max = max C(Γ_e)`.
pub fn height_ring(f: &GrPoly, m: &GrPoly, e: u32, m2: &GrPoly, l_max: u128) -> Result<HeightReport> {
    check_system(f, m)?;
    if e == 0 || e > f.precision() {
        return Err(usage(format!("precision {e} out of range")));
    }
    let tau = height_field(&f.project(1)?, m2)?;
    let bound = tau
        .checked_mul(e)
        .ok_or_else(|| resource("height bound overflows"))?;
    if tau == 0 {
        return Ok(HeightReport { field_height: 0, bound: 0, height: 0, probe_count: 0 });
    }
    let f = f.project(e)?;
    let m = m.project(e)?;
    let shift = f.mod_pow_u128(l_max, &m)?;
    let mut probes = 0u32;
    let mut probe = |h: u32| -> Result<bool> {
        probes += 1;
        let fh = f.mod_pow_u128(h as u128, &m)?;
        Ok((&shift * &fh).rem(&m)? == fh)
    };
    let (mut lo, mut hi) = (tau, bound);
    if !probe(hi)? {
        return Err(invariant(format!("no height found below the bound {bound}")));
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            if cfg!(debug_assertions) && mid < bound && !probe(mid + 1)? {
                return Err(invariant("probe congruence is not monotone"));
            }
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo > 0 && probe(lo - 1)? {
        return Err(invariant(format!("height search ended at {lo} but {} also satisfies", lo - 1)));
    }
    Ok(HeightReport { field_height: tau, bound, height: lo, probe_count: probes })
}

/// `(pper, per)` of `z` under `g -> f g mod (m, p^ε)`, by Brent's method.
/// Fails after `limit` steps.
pub fn per_pper(f: &GrPoly, m: &GrPoly, z: &GrPoly, limit: u128) -> Result<(u128, u128)> {
    f.check_compatible(m)?;
    f.check_compatible(z)?;
    if !m.is_monic() || m.deg() == 0 {
        return Err(usage("modulus must be monic of positive degree"));
    }
    let step = |g: &GrPoly| -> GrPoly { g.mulmod(f, m) };
    let x0 = z.rem(m)?;
    let too_long = || resource(format!("orbit did not close within {limit} steps"));
    let (mut power, mut lam) = (1u128, 1u128);
    let mut tortoise = x0.clone();
    let mut hare = step(&x0);
    let mut steps = 1u128;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = step(&hare);
        lam += 1;
        steps += 1;
        if steps > limit {
            return Err(too_long());
        }
    }
    let mut tortoise = x0.clone();
    let mut hare = x0;
    for _ in 0..lam {
        hare = step(&hare);
    }
    let mut mu = 0u128;
    while tortoise != hare {
        tortoise = step(&tortoise);
        hare = step(&hare);
        mu += 1;
        if mu > limit {
            return Err(too_long());
        }
    }
    Ok((mu, lam))
}

/// `(pper, per)` of the element `1` at precision `ε`.
pub fn per_pper_of_one(f: &GrPoly, m: &GrPoly, eps: u32, limit: u128) -> Result<(u128, u128)> {
    check_system(f, m)?;
    let f = f.project(eps)?;
    let m = m.project(eps)?;
    per_pper(&f, &m, &GrPoly::one(f.spec(), eps), limit)
}
