//! Sets of cycle lengths: the lcm-product, field-level sets and censuses,
//! and the precision-by-precision ring constructions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::decompose::{check_system, field_split, group_by_order, power, FieldSplit};
use crate::error::{usage, Result};
use crate::order::{omega_step, order_from_saturation, order_irreducible, saturation};
use crate::par::{self, Execution};
use crate::poly::GrPoly;
use crate::ring::intfact::{checked_lcm, checked_pow};

/// A sorted set of cycle lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleSet(BTreeSet<u128>);

impl CycleSet {
    /// `{1}`.
    pub fn trivial() -> CycleSet {
        CycleSet(BTreeSet::from([1]))
    }

    pub fn lengths(&self) -> Vec<u128> {
        self.0.iter().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u128> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, l: u128) -> bool {
        self.0.contains(&l)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u128> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, l: u128) -> bool {
        self.0.insert(l)
    }

    pub fn is_subset(&self, other: &CycleSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &CycleSet) -> CycleSet {
        CycleSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<u128> for CycleSet {
    fn from_iter<I: IntoIterator<Item = u128>>(iter: I) -> Self {
        CycleSet(iter.into_iter().collect())
    }
}

impl std::fmt::Display for CycleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// `{lcm(x, y) : x ∈ X, y ∈ Y}`.
pub fn lcm_product(x: &CycleSet, y: &CycleSet) -> Result<CycleSet> {
    let mut out = BTreeSet::new();
    for a in x.iter() {
        for b in y.iter() {
            out.insert(checked_lcm(a, b)?);
        }
    }
    Ok(CycleSet(out))
}

/// Orders of `F` modulo the powers of one irreducible factor `G` of `M₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorOrders {
    #[serde(serialize_with = "crate::report::poly_string")]
    pub g: GrPoly,
    pub k: u32,
    pub base_order: u128,
    pub s: u32,
    /// `ladder[t-1] = O(F, G^t)` for `t = 1..=k`.
    pub ladder: Vec<u128>,
}

impl FactorOrders {
    /// `O(F, G^k)`.
    pub fn full_order(&self) -> u128 {
        *self.ladder.last().expect("k >= 1")
    }
}

/// The residue-field picture of a system: the split of `m mod p` and the
/// orders of every primary factor of `M₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAnalysis {
    pub fbar: GrPoly,
    pub mbar: GrPoly,
    pub split: FieldSplit,
    pub factors: Vec<FactorOrders>,
}

pub fn analyze_field(f: &GrPoly, m: &GrPoly, seed: u64, exec: Execution) -> Result<FieldAnalysis> {
    check_system(f, m)?;
    let fbar = f.project(1)?;
    let mbar = m.project(1)?;
    let split = field_split(&fbar, &mbar, seed, exec)?;
    let factors = par::map(exec, &split.bijective, |(g, k)| {
        let base_order = order_irreducible(&fbar, g)?;
        let s = saturation(&fbar, g, base_order)?;
        let p = g.spec().p();
        let ladder = (1..=*k)
            .map(|t| order_from_saturation(p, base_order, s, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(FactorOrders { g: g.clone(), k: *k, base_order, s, ladder })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(FieldAnalysis { fbar, mbar, split, factors })
}

impl FieldAnalysis {
    /// `C(Γ_1)`: the lcm-product over factors of `{1} ∪ ladder`.
    pub fn cycle_set(&self) -> Result<CycleSet> {
        let mut acc = CycleSet::trivial();
        for fo in &self.factors {
            let mut local = CycleSet::trivial();
            local.0.extend(fo.ladder.iter().copied());
            acc = lcm_product(&acc, &local)?;
        }
        Ok(acc)
    }

    /// Number of cycles of each length in the field-level graph.
    pub fn census(&self) -> Result<CycleCensusField> {
        let q = BigUint::from(self.fbar.spec().q()?);
        let mut vertices: BTreeMap<u128, BigUint> = BTreeMap::from([(1, BigUint::one())]);
        for fo in &self.factors {
            let qd = q.pow(fo.g.deg() as u32);
            let mut options = vec![(1u128, BigUint::one())];
            let mut prev = BigUint::one();
            for &order in &fo.ladder {
                let cur = &prev * &qd;
                options.push((order, &cur - &prev));
                prev = cur;
            }
            let mut next: BTreeMap<u128, BigUint> = BTreeMap::new();
            for (a, ca) in &vertices {
                for (b, cb) in &options {
                    *next.entry(checked_lcm(*a, *b)?).or_insert_with(BigUint::zero) += ca * cb;
                }
            }
            vertices = next;
        }
        let entries = vertices
            .into_iter()
            .map(|(len, v)| CensusEntry { length: len, count: v / BigUint::from(len) })
            .collect();
        let total = q.pow(self.split.m1.deg() as u32);
        Ok(CycleCensusField { entries, total_vertices: total })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub length: u128,
    #[serde(serialize_with = "crate::report::big_string")]
    pub count: BigUint,
}

/// Cycle counts of the bijective part over the residue field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensusField {
    pub entries: Vec<CensusEntry>,
    /// `q^{deg M₁}`.
    #[serde(serialize_with = "crate::report::big_string")]
    pub total_vertices: BigUint,
}

impl CycleCensusField {
    /// `Σ count · length`.
    pub fn covered_vertices(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| &e.count * BigUint::from(e.length))
            .sum()
    }

    pub fn count(&self, length: u128) -> BigUint {
        self.entries
            .iter()
            .find(|e| e.length == length)
            .map(|e| e.count.clone())
            .unwrap_or_default()
    }
}

pub fn cycle_set_field(f: &GrPoly, m: &GrPoly) -> Result<CycleSet> {
    analyze_field(f, m, crate::factor::DEFAULT_SEED, Execution::default())?.cycle_set()
}

pub fn cycle_census_field(f: &GrPoly, m: &GrPoly) -> Result<CycleCensusField> {
    if f.precision() != 1 {
        return Err(usage("the census is computed at precision 1"));
    }
    analyze_field(f, m, crate::factor::DEFAULT_SEED, Execution::default())?.census()
}

/// How one factor (or one order class) evolves with the precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderTrack {
    /// Order of `F` modulo the field-level factor or class.
    pub field_order: u128,
    /// `ω` after each precision `1..=e`; the order at `ε` is `p^ω · field_order`.
    pub omega: Vec<u32>,
    #[serde(serialize_with = "crate::report::poly_string")]
    pub witness: GrPoly,
}

impl OrderTrack {
    pub fn order_at(&self, p: u64, eps: u32) -> Result<u128> {
        let w = self.omega[eps as usize - 1];
        Ok(checked_pow(p as u128, w)? * self.field_order)
    }
}

/// Per-precision cycle sets together with the tracked orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingCycleSets {
    /// `levels[ε-1] = C(Γ_ε)`.
    pub levels: Vec<CycleSet>,
    pub tracks: Vec<OrderTrack>,
    pub grouped: bool,
}

impl RingCycleSets {
    pub fn top(&self) -> &CycleSet {
        self.levels.last().expect("at least one level")
    }

    /// `max C(Γ_e)`.
    pub fn max_length(&self) -> u128 {
        self.top().max().unwrap_or(1)
    }
}

/// Which units drive the precision loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Variant {
    /// One witness per primary factor of `M₁`.
    #[default]
    PerFactor,
    /// One witness per class of factors with equal base order.
    Grouped,
}

/// `C(Γ_ε)` for `ε = 1..=e`, one witness per primary factor.
pub fn cycle_set_ring(f: &GrPoly, m: &GrPoly, e: u32) -> Result<Vec<CycleSet>> {
    let fa = analyze_field(f, m, crate::factor::DEFAULT_SEED, Execution::default())?;
    Ok(ring_cycle_sets(f, m, e, &fa, Variant::PerFactor, Execution::default())?.levels)
}

/// Same output as [`cycle_set_ring`], one witness per order class.
pub fn cycle_set_ring_grouped(f: &GrPoly, m: &GrPoly, e: u32) -> Result<Vec<CycleSet>> {
    let fa = analyze_field(f, m, crate::factor::DEFAULT_SEED, Execution::default())?;
    Ok(ring_cycle_sets(f, m, e, &fa, Variant::Grouped, Execution::default())?.levels)
}

/// Units `(field modulus, its order)` the precision loop tracks.
fn units(fa: &FieldAnalysis, variant: Variant) -> Result<Vec<(GrPoly, u128)>> {
    let primaries = || fa.factors.iter().map(|fo| (power(&fo.g, fo.k), fo.full_order()));
    match variant {
        Variant::PerFactor => Ok(primaries().collect()),
        Variant::Grouped => {
            let bases: Vec<u128> = fa.factors.iter().map(|fo| fo.base_order).collect();
            group_by_order(&bases)
                .into_values()
                .map(|members| {
                    let one = GrPoly::one(fa.fbar.spec(), 1);
                    members.iter().try_fold((one, 1u128), |(theta, order), &i| {
                        let fo = &fa.factors[i];
                        Ok((&theta * &power(&fo.g, fo.k), checked_lcm(order, fo.full_order())?))
                    })
                })
                .collect()
        }
    }
}

pub fn ring_cycle_sets(
    f: &GrPoly,
    m: &GrPoly,
    e: u32,
    fa: &FieldAnalysis,
    variant: Variant,
    exec: Execution,
) -> Result<RingCycleSets> {
    check_system(f, m)?;
    if e == 0 || e > f.precision() {
        return Err(usage(format!("precision {e} out of range 1..={}", f.precision())));
    }
    let p = f.spec().p();
    let units = units(fa, variant)?;
    let mut tracks = units
        .iter()
        .map(|(u, order)| {
            Ok(OrderTrack {
                field_order: *order,
                omega: vec![0],
                witness: fa.mbar.div_exact(u)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut levels = vec![fa.cycle_set()?];
    for eps in 2..=e {
        let grew = par::map(exec, &tracks, |t| {
            let prev = t.order_at(p, eps - 1)?;
            omega_step(f, m, &t.witness, prev, eps)
        });
        let mut h = CycleSet::trivial();
        for (t, g) in tracks.iter_mut().zip(grew) {
            let last = *t.omega.last().expect("nonempty");
            t.omega.push(last + u32::from(g?));
            let mut k = CycleSet::trivial();
            k.insert(t.order_at(p, eps)?);
            h = lcm_product(&h, &k)?;
        }
        let next = levels.last().expect("nonempty").union(&h);
        levels.push(next);
    }
    Ok(RingCycleSets { levels, tracks, grouped: variant == Variant::Grouped })
}

#[cfg(test)]
mod tests;
