//! Generalized polynomial orders `O(F, G)`: least `k >= 1` with
//! `F^k ≡ 1 mod G`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{domain, resource, usage, Result};
use crate::factor::{factor_with, DEFAULT_SEED};
use crate::par::{self, Execution};
use crate::poly::GrPoly;
use crate::ring::intfact::{checked_lcm, checked_pow, int_factorize_wide};

fn require_field(f: &GrPoly, g: &GrPoly) -> Result<()> {
    f.check_compatible(g)?;
    if f.precision() != 1 {
        return Err(usage("orders are computed over the residue field"));
    }
    if !g.is_monic() {
        return Err(usage(format!("modulus {g} is not monic")));
    }
    Ok(())
}

/// `O(F, G)` for monic irreducible `G` by stripping prime factors from
/// `q^{deg G} - 1`.
pub fn order_irreducible(big_f: &GrPoly, g: &GrPoly) -> Result<u128> {
    require_field(big_f, g)?;
    if g.deg() == 0 {
        return Ok(1);
    }
    let base = big_f.rem(g)?;
    if base.is_zero() {
        return Err(domain(format!("{g} divides F, so F is not invertible mod G")));
    }
    let q = g.spec().q()?;
    let group = checked_pow(q, g.deg() as u32)? - 1;
    let mut z = group;
    for (rho, r) in int_factorize_wide(group)? {
        let rho = rho as u128;
        for _ in 0..r {
            if base.mod_pow_u128(z / rho, g)?.is_one() {
                z /= rho;
            } else {
                break;
            }
        }
    }
    if !base.mod_pow_u128(z, g)?.is_one() {
        return Err(domain(format!("{g} is not irreducible: no order divides q^deg - 1")));
    }
    Ok(z)
}

/// Saturation of a constant `F`: every power of `G` divides `F^ℓ - 1 = 0`.
pub const UNBOUNDED: u32 = u32::MAX;

/// Order of `F` modulo the prime power `G^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderRecord {
    #[serde(serialize_with = "crate::report::poly_string")]
    pub g: GrPoly,
    pub t: u32,
    /// `O(F, G)`.
    pub base_order: u128,
    /// Multiplicity of `G` in `F^ℓ - 1`.
    pub s: u32,
    pub order: u128,
}

/// Exact multiplicity of `G` in `F^ℓ - 1`, working modulo growing powers
/// of `G`. A constant `F` has `F^ℓ = 1` and reports [`UNBOUNDED`].
pub fn saturation(big_f: &GrPoly, g: &GrPoly, base_order: u128) -> Result<u32> {
    require_field(big_f, g)?;
    if big_f.deg() == 0 {
        return if big_f.mod_pow_u128(base_order, g)?.is_one() {
            Ok(UNBOUNDED)
        } else {
            Err(domain(format!("F^{base_order} is not 1 mod {g}")))
        };
    }
    let bound = big_f.deg() as u128 * base_order / g.deg().max(1) as u128;
    let mut cap = 2u32;
    loop {
        let gc = crate::decompose::power(g, cap);
        let w = &big_f.mod_pow_u128(base_order, &gc)? - &GrPoly::one(g.spec(), 1);
        let mut w = w.rem(&gc)?;
        if w.is_zero() {
            if cap as u128 > bound {
                return Err(domain("saturation exceeded its degree bound"));
            }
            cap = cap.checked_mul(2).ok_or_else(|| resource("saturation cap overflow"))?;
            continue;
        }
        let mut s = 0;
        loop {
            let (q, r) = w.divmod(g)?;
            if !r.is_zero() {
                break;
            }
            w = q;
            s += 1;
        }
        if s == 0 {
            return Err(domain(format!("F^{base_order} is not 1 mod {g}")));
        }
        return Ok(s);
    }
}

/// `O(F, G^t) = p^k ℓ` with the least `k` such that `t <= s p^k`.
pub fn order_from_saturation(p: u64, base_order: u128, s: u32, t: u32) -> Result<u128> {
    let mut reach = s as u128;
    let mut order = base_order;
    while (t as u128) > reach {
        reach *= p as u128;
        order = order
            .checked_mul(p as u128)
            .ok_or_else(|| resource("order overflows 128 bits"))?;
    }
    Ok(order)
}

pub fn order_prime_power(big_f: &GrPoly, g: &GrPoly, base_order: u128, t: u32) -> Result<OrderRecord> {
    if t == 0 {
        return Err(usage("exponent t must be at least 1"));
    }
    let s = saturation(big_f, g, base_order)?;
    let order = order_from_saturation(g.spec().p(), base_order, s, t)?;
    Ok(OrderRecord { g: g.clone(), t, base_order, s, order })
}

/// `O(F, G^t)` for `t = 1..=k`.
pub fn order_ladder(big_f: &GrPoly, g: &GrPoly, k: u32) -> Result<(u128, u32, Vec<u128>)> {
    let base = order_irreducible(big_f, g)?;
    let s = saturation(big_f, g, base)?;
    let p = g.spec().p();
    let ladder = (1..=k)
        .map(|t| order_from_saturation(p, base, s, t))
        .collect::<Result<Vec<_>>>()?;
    Ok((base, s, ladder))
}

/// `O(F, M)` for arbitrary monic `M` coprime to `F`: lcm over primary factors.
pub fn order_composite(big_f: &GrPoly, big_m: &GrPoly) -> Result<u128> {
    order_composite_with(big_f, big_m, DEFAULT_SEED, Execution::default())
}

pub fn order_composite_with(big_f: &GrPoly, big_m: &GrPoly, seed: u64, exec: Execution) -> Result<u128> {
    require_field(big_f, big_m)?;
    if big_m.deg() == 0 {
        return Ok(1);
    }
    let fac = factor_with(big_m, seed, exec)?;
    let parts = par::map(exec, &fac.factors, |(g, k)| {
        let base = order_irreducible(big_f, g)?;
        Ok(order_prime_power(big_f, g, base, *k)?.order)
    });
    parts
        .into_iter()
        .try_fold(1u128, |acc, o: Result<u128>| checked_lcm(acc, o?))
}

/// Whether the order grows from `prev_order` when the precision is raised
/// to `ε`: tests `f^{prev} w ≢ w mod (m, p^ε)` for `w = g̃^{p^{ε-1}}`.
pub fn omega_step(f: &GrPoly, m: &GrPoly, witness: &GrPoly, prev_order: u128, eps: u32) -> Result<bool> {
    let f = f.project(eps)?;
    let m = m.project(eps)?;
    let w0 = if witness.precision() < eps {
        witness.lift_canonical(eps)?
    } else {
        witness.project(eps)?
    };
    let p = BigUint::from(f.spec().p());
    let w = w0.mod_pow(&p.pow(eps - 1), &m)?;
    let moved = f.mod_pow_u128(prev_order, &m)?.mulmod(&w, &m.make_monic()?);
    Ok(moved != w)
}

/// `O(F, M)` by repeated multiplication, for cross-checks on small inputs.
pub fn order_naive(big_f: &GrPoly, big_m: &GrPoly, limit: u128) -> Result<u128> {
    big_f.check_compatible(big_m)?;
    if big_m.deg() == 0 {
        return Ok(1);
    }
    let base = big_f.rem(big_m)?;
    let mut acc = base.clone();
    for k in 1..=limit {
        if acc.is_one() {
            return Ok(k);
        }
        acc = acc.mulmod(&base, big_m);
    }
    Err(resource(format!("no order found below {limit}")))
}

/// Number of items per distinct order, ascending by order.
pub fn order_histogram(orders: impl IntoIterator<Item = u128>) -> Vec<(u128, usize)> {
    let mut hist: BTreeMap<u128, usize> = BTreeMap::new();
    for o in orders {
        *hist.entry(o).or_default() += 1;
    }
    hist.into_iter().collect()
}
