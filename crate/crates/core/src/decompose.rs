//! Splitting a system into its nilpotent and bijective parts, and the
//! bijective part into primary factors and order classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain, usage, Result};
use crate::factor::{factor_with, Factorization};
use crate::hensel::{hensel_multi_with, lift_f_decomposition, FDecomposition};
use crate::par::Execution;
use crate::poly::GrPoly;

/// Preconditions shared by every system-level routine: `f`, `m` over the
/// same ring at the same precision, `m` monic, `1 <= deg f < deg m` and
/// `f` not divisible by `p`.
pub fn check_system(f: &GrPoly, m: &GrPoly) -> Result<()> {
    f.check_compatible(m)?;
    if !m.is_monic() {
        return Err(usage(format!("modulus {m} is not monic")));
    }
    let (Some(df), Some(dm)) = (f.degree(), m.degree()) else {
        return Err(usage("f and m must be nonzero"));
    };
    if df < 1 || df >= dm {
        return Err(usage(format!("need 1 <= deg f < deg m, got deg f = {df}, deg m = {dm}")));
    }
    if f.project(1)?.is_zero() {
        return Err(domain("f is 0 mod p, a zero divisor; only regular f are supported"));
    }
    Ok(())
}

/// The residue-field split `M = M₁ M₂` together with the factorization that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSplit {
    pub m1: GrPoly,
    pub m2: GrPoly,
    /// Primary factors `(G, k)` of `M₁`, canonical order.
    pub bijective: Vec<(GrPoly, u32)>,
    /// Primary factors of `M₂`; every `G` divides `F`.
    pub nilpotent: Vec<(GrPoly, u32)>,
}

/// Splits `M` into the greatest divisor `M₁` coprime to `F` and the rest.
pub fn f_decompose_field(big_f: &GrPoly, big_m: &GrPoly) -> Result<(GrPoly, GrPoly)> {
    let s = field_split(big_f, big_m, crate::factor::DEFAULT_SEED, Execution::default())?;
    Ok((s.m1, s.m2))
}

pub fn field_split(big_f: &GrPoly, big_m: &GrPoly, seed: u64, exec: Execution) -> Result<FieldSplit> {
    big_f.check_compatible(big_m)?;
    if big_f.precision() != 1 {
        return Err(usage("the field split works over the residue field"));
    }
    if !big_m.is_monic() || big_m.deg() < 1 {
        return Err(usage("M must be monic of degree at least 1"));
    }
    if big_f.is_zero() || big_f.deg() >= big_m.deg() {
        return Err(usage("need F nonzero with deg F < deg M"));
    }
    let Factorization { factors, .. } = factor_with(big_m, seed, exec)?;
    split_factors(big_f, factors)
}

fn split_factors(big_f: &GrPoly, factors: Vec<(GrPoly, u32)>) -> Result<FieldSplit> {
    let spec = big_f.spec();
    let (mut m1, mut m2) = (GrPoly::one(spec, 1), GrPoly::one(spec, 1));
    let (mut bijective, mut nilpotent) = (Vec::new(), Vec::new());
    for (g, k) in factors {
        let gk = power(&g, k);
        if big_f.rem(&g)?.is_zero() {
            m2 = &m2 * &gk;
            nilpotent.push((g, k));
        } else {
            m1 = &m1 * &gk;
            bijective.push((g, k));
        }
    }
    Ok(FieldSplit { m1, m2, bijective, nilpotent })
}

pub(crate) fn power(g: &GrPoly, k: u32) -> GrPoly {
    (0..k).fold(GrPoly::one(g.spec(), g.precision()), |a, _| &a * g)
}

/// The system `(f, m)` at precision `ε` split as `m ≡ m₁ m₂`, with `m₁`
/// further split into lifted primary factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSplit {
    pub precision: u32,
    pub field: FieldSplit,
    pub decomposition: FDecomposition,
    /// Monic `g_i` with `π₁(g_i) = G_i^{k_i}` and `∏ g_i = m₁`.
    pub bijective_factors: Vec<GrPoly>,
}

impl SystemSplit {
    pub fn nilpotent_modulus(&self) -> &GrPoly {
        &self.decomposition.m2
    }

    pub fn bijective_modulus(&self) -> &GrPoly {
        &self.decomposition.m1
    }

    /// Primary factors `(G_i, k_i)` of `M₁`.
    pub fn field_data(&self) -> &[(GrPoly, u32)] {
        &self.field.bijective
    }
}

pub fn split_system(f: &GrPoly, m: &GrPoly, eps: u32) -> Result<SystemSplit> {
    split_system_with(f, m, eps, crate::factor::DEFAULT_SEED, Execution::default())
}

pub fn split_system_with(
    f: &GrPoly,
    m: &GrPoly,
    eps: u32,
    seed: u64,
    exec: Execution,
) -> Result<SystemSplit> {
    check_system(f, m)?;
    if eps == 0 || eps > f.precision() {
        return Err(usage(format!("precision {eps} out of range 1..={}", f.precision())));
    }
    let field = field_split(&f.project(1)?, &m.project(1)?, seed, exec)?;
    let decomposition = lift_f_decomposition(f, m, (&field.m1, &field.m2), eps)?;
    let bijective_factors = if field.bijective.is_empty() {
        Vec::new()
    } else {
        let primaries: Vec<GrPoly> = field.bijective.iter().map(|(g, k)| power(g, *k)).collect();
        hensel_multi_with(&decomposition.m1, &primaries, eps, exec)?
    };
    Ok(SystemSplit { precision: eps, field, decomposition, bijective_factors })
}

/// One order class: all primary factors of `M₁` whose irreducible base has
/// the same order `ℓ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaGroup {
    pub class_index: usize,
    pub base_order: u128,
    /// Indices into the primary factors of `M₁`.
    #[serde(skip)]
    pub members: Vec<usize>,
    /// `Θ_j = ∏ G_i^{k_i}` over the members.
    #[serde(skip)]
    pub theta_field: GrPoly,
    /// The lift of `Θ_j` dividing `m₁` at the split's precision.
    #[serde(skip)]
    pub theta: GrPoly,
    pub member_count: usize,
}

/// Groups primary factors by base order. `orders[i]` is `O(F, G_i)` for
/// the `i`-th primary factor of the split.
pub fn theta_grouping(split: &SystemSplit, orders: &[u128]) -> Result<Vec<ThetaGroup>> {
    theta_grouping_with(split, orders, Execution::default())
}

pub fn theta_grouping_with(
    split: &SystemSplit,
    orders: &[u128],
    exec: Execution,
) -> Result<Vec<ThetaGroup>> {
    let data = split.field_data();
    if orders.len() != data.len() {
        return Err(usage(format!("expected {} base orders, got {}", data.len(), orders.len())));
    }
    let classes = group_by_order(orders);
    if classes.is_empty() {
        return Ok(Vec::new());
    }
    let thetas: Vec<GrPoly> = classes
        .values()
        .map(|members| {
            members.iter().fold(GrPoly::one(split.field.m1.spec(), 1), |acc, &i| {
                &acc * &power(&data[i].0, data[i].1)
            })
        })
        .collect();
    let lifted = hensel_multi_with(split.bijective_modulus(), &thetas, split.precision, exec)?;
    Ok(classes
        .into_iter()
        .zip(thetas)
        .zip(lifted)
        .enumerate()
        .map(|(j, (((base_order, members), theta_field), theta))| ThetaGroup {
            class_index: j,
            base_order,
            member_count: members.len(),
            members,
            theta_field,
            theta,
        })
        .collect())
}

/// Factor indices grouped by exact order, ascending.
pub fn group_by_order(orders: &[u128]) -> BTreeMap<u128, Vec<usize>> {
    let mut classes: BTreeMap<u128, Vec<usize>> = BTreeMap::new();
    for (i, &o) in orders.iter().enumerate() {
        classes.entry(o).or_default().push(i);
    }
    classes
}
