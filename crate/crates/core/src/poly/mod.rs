//! Dense univariate polynomials over `GR(p^ε, d)`.

mod gcd;
pub mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{domain, usage, Result};
use crate::ring::level::Level;
use crate::ring::{GrElem, RingSpec};

pub use gcd::{field_gcd, field_gcd_ext};

/// A polynomial over `GR(p^ε, d)`, lowest degree first.
///
/// Coefficient blocks are stored flat (`d` residues per coefficient) and the
/// representation is normalized: the highest stored block is nonzero, and
/// the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrPoly {
    spec: Arc<RingSpec>,
    precision: u32,
    data: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Classification of a polynomial over a local ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityClass {
    /// Every coefficient lies in `⟨p⟩`.
    ZeroDivisor,
    RegularNonUnit,
    /// Unit constant term, all other coefficients in `⟨p⟩`.
    Unit,
}

impl GrPoly {
    pub(crate) fn from_flat(spec: &Arc<RingSpec>, precision: u32, mut data: Vec<u64>) -> Self {
        let d = spec.d();
        debug_assert_eq!(data.len() % d, 0);
        while data.len() >= d && data[data.len() - d..].iter().all(|&c| c == 0) {
            data.truncate(data.len() - d);
        }
        GrPoly { spec: spec.clone(), precision, data }
    }

    pub fn zero(spec: &Arc<RingSpec>, precision: u32) -> Self {
        GrPoly { spec: spec.clone(), precision, data: Vec::new() }
    }

    pub fn one(spec: &Arc<RingSpec>, precision: u32) -> Self {
        Self::constant(&GrElem::one(spec, precision))
    }

    /// The polynomial `x`.
    pub fn x(spec: &Arc<RingSpec>, precision: u32) -> Self {
        Self::monomial(&GrElem::one(spec, precision), 1)
    }

    pub fn constant(c: &GrElem) -> Self {
        Self::from_flat(c.spec(), c.precision(), c.coeffs().to_vec())
    }

    /// `c * x^k`.
    pub fn monomial(c: &GrElem, k: usize) -> Self {
        let d = c.spec().d();
        let mut data = vec![0; k * d];
        data.extend_from_slice(c.coeffs());
        Self::from_flat(c.spec(), c.precision(), data)
    }

    pub fn from_elems(spec: &Arc<RingSpec>, precision: u32, coeffs: &[GrElem]) -> Result<Self> {
        spec.check_precision(precision)?;
        let mut data = Vec::with_capacity(coeffs.len() * spec.d());
        for c in coeffs {
            if !c.spec().same_tower(spec) || c.precision() != precision {
                return Err(usage("coefficient ring does not match polynomial ring"));
            }
            data.extend_from_slice(c.coeffs());
        }
        Ok(Self::from_flat(spec, precision, data))
    }

    /// Integer coefficients (placed in the constant slot of each block),
    /// lowest degree first; negative values are reduced mod `p^ε`.
    pub fn from_ints(spec: &Arc<RingSpec>, precision: u32, coeffs: &[i64]) -> Result<Self> {
        let blocks: Vec<Vec<i64>> = coeffs.iter().map(|&c| vec![c]).collect();
        Self::from_int_blocks(spec, precision, &blocks)
    }

    /// One integer vector (coefficients in `t`) per power of `x`.
    pub fn from_int_blocks(spec: &Arc<RingSpec>, precision: u32, blocks: &[Vec<i64>]) -> Result<Self> {
        spec.check_precision(precision)?;
        let mut data = Vec::with_capacity(blocks.len() * spec.d());
        for b in blocks {
            data.extend_from_slice(GrElem::new(spec, precision, b)?.coeffs());
        }
        Ok(Self::from_flat(spec, precision, data))
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Flat residues: block `i` (coefficient of `x^i`) is `data[i*d..(i+1)*d]`.
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    fn d(&self) -> usize {
        self.spec.d()
    }

    pub(crate) fn level(&self) -> Level {
        Level::new(&self.spec, self.precision)
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for zero).
    pub fn len(&self) -> usize {
        self.data.len() / self.d()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.len() == 1 && self.data[0] == 1 && self.data[1..].iter().all(|&c| c == 0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn block(&self, i: usize) -> &[u64] {
        let d = self.d();
        &self.data[i * d..(i + 1) * d]
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> GrElem {
        if i < self.len() {
            GrElem::from_raw(&self.spec, self.precision, self.block(i).to_vec())
        } else {
            GrElem::zero(&self.spec, self.precision)
        }
    }

    pub fn coeffs(&self) -> Vec<GrElem> {
        (0..self.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> Option<GrElem> {
        self.degree().map(|k| self.coeff(k))
    }

    pub fn is_monic(&self) -> bool {
        match self.degree() {
            Some(k) => {
                let b = self.block(k);
                b[0] == 1 && b[1..].iter().all(|&c| c == 0)
            }
            None => false,
        }
    }

    pub(crate) fn check_compatible(&self, other: &GrPoly) -> Result<()> {
        if !self.spec.same_tower(&other.spec) {
            return Err(usage("polynomials belong to different rings"));
        }
        if self.precision != other.precision {
            return Err(usage(format!(
                "precision mismatch: {} vs {}",
                self.precision, other.precision
            )));
        }
        Ok(())
    }

    /// Checked arithmetic entry point.
    pub fn arith(&self, other: &GrPoly, op: PolyOp) -> Result<GrPoly> {
        self.check_compatible(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.sub_unchecked(other),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    fn zip_with(&self, other: &GrPoly, f: impl Fn(&Level, u64, u64) -> u64) -> GrPoly {
        let lv = self.level();
        let n = self.data.len().max(other.data.len());
        let data = (0..n)
            .map(|i| {
                let a = self.data.get(i).copied().unwrap_or(0);
                let b = other.data.get(i).copied().unwrap_or(0);
                f(&lv, a, b)
            })
            .collect();
        GrPoly::from_flat(&self.spec, self.precision, data)
    }

    fn add_unchecked(&self, other: &GrPoly) -> GrPoly {
        self.zip_with(other, |lv, a, b| lv.add(a, b))
    }

    fn sub_unchecked(&self, other: &GrPoly) -> GrPoly {
        self.zip_with(other, |lv, a, b| lv.sub(a, b))
    }

    fn mul_unchecked(&self, other: &GrPoly) -> GrPoly {
        let data = self.level().mul(&self.data, &other.data);
        GrPoly::from_flat(&self.spec, self.precision, data)
    }

    pub fn scale(&self, c: &GrElem) -> GrPoly {
        let data = self.level().mul(&self.data, c.coeffs());
        GrPoly::from_flat(&self.spec, self.precision, data)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> GrPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut data = vec![0; k * self.d()];
        data.extend_from_slice(&self.data);
        GrPoly { spec: self.spec.clone(), precision: self.precision, data }
    }

    /// Multiplies by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> Result<GrPoly> {
        let lc = self
            .leading_coeff()
            .ok_or_else(|| domain("the zero polynomial has no monic associate"))?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.inv()?))
    }

    /// Division with remainder. The divisor's leading coefficient must be a unit.
    pub fn divmod(&self, b: &GrPoly) -> Result<(GrPoly, GrPoly)> {
        self.check_compatible(b)?;
        let lc = b.leading_coeff().ok_or_else(|| domain("division by zero polynomial"))?;
        if lc.is_one() {
            return Ok(self.divmod_monic(b, true));
        }
        let inv = lc.inv().map_err(|_| domain("divisor has a non-unit leading coefficient"))?;
        let (q, r) = self.divmod_monic(&b.scale(&inv), true);
        Ok((q.scale(&inv), r))
    }

    pub fn rem(&self, b: &GrPoly) -> Result<GrPoly> {
        self.check_compatible(b)?;
        let lc = b.leading_coeff().ok_or_else(|| domain("division by zero polynomial"))?;
        if lc.is_one() {
            return Ok(self.divmod_monic(b, false).1);
        }
        let inv = lc.inv().map_err(|_| domain("divisor has a non-unit leading coefficient"))?;
        Ok(self.divmod_monic(&b.scale(&inv), false).1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, b: &GrPoly) -> Result<GrPoly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(domain(format!("{b} does not divide {self}")));
        }
        Ok(q)
    }

    pub(crate) fn divmod_monic(&self, b: &GrPoly, want_q: bool) -> (GrPoly, GrPoly) {
        debug_assert!(b.is_monic());
        let (q, r) = self.level().divrem_monic(&self.data, &b.data, want_q);
        (
            GrPoly::from_flat(&self.spec, self.precision, q),
            GrPoly::from_flat(&self.spec, self.precision, r),
        )
    }

    /// `self * other mod m` for monic `m`.
    pub(crate) fn mulmod(&self, other: &GrPoly, m: &GrPoly) -> GrPoly {
        let lv = self.level();
        let prod = lv.mul(&self.data, &other.data);
        let (_, r) = lv.divrem_monic(&prod, &m.data, false);
        GrPoly::from_flat(&self.spec, self.precision, r)
    }

    fn modulus_for_pow(&self, m: &GrPoly) -> Result<GrPoly> {
        self.check_compatible(m)?;
        match m.degree() {
            Some(k) if k >= 1 => {}
            _ => return Err(domain("modulus must have degree at least 1")),
        }
        if m.is_monic() {
            Ok(m.clone())
        } else {
            m.make_monic()
                .map_err(|_| domain("modulus has a non-unit leading coefficient"))
        }
    }

    /// `self^k mod m` by square-and-multiply; `k` may be arbitrarily large.
    pub fn mod_pow(&self, k: &BigUint, m: &GrPoly) -> Result<GrPoly> {
        let m = self.modulus_for_pow(m)?;
        let base = self.divmod_monic(&m, false).1;
        let mut acc = GrPoly::one(&self.spec, self.precision).divmod_monic(&m, false).1;
        for i in (0..k.bits()).rev() {
            acc = acc.mulmod(&acc, &m);
            if k.bit(i) {
                acc = acc.mulmod(&base, &m);
            }
        }
        Ok(acc)
    }

    pub fn mod_pow_u128(&self, k: u128, m: &GrPoly) -> Result<GrPoly> {
        self.mod_pow(&BigUint::from(k), m)
    }

    pub fn classify(&self) -> RegularityClass {
        let p = self.spec.p();
        let unit_at = |i: usize| self.block(i).iter().any(|&c| c % p != 0);
        if !(0..self.len()).any(unit_at) {
            RegularityClass::ZeroDivisor
        } else if unit_at(0) && !(1..self.len()).any(unit_at) {
            RegularityClass::Unit
        } else {
            RegularityClass::RegularNonUnit
        }
    }

    /// Coefficient-wise reduction mod `p^target`.
    pub fn project(&self, target: u32) -> Result<GrPoly> {
        if target == 0 || target > self.precision {
            return Err(usage(format!(
                "cannot project precision {} to {target}",
                self.precision
            )));
        }
        let m = self.spec.modulus(target);
        let data = self.data.iter().map(|&c| c % m).collect();
        Ok(GrPoly::from_flat(&self.spec, target, data))
    }

    /// The same integer coefficients read at a higher precision.
    pub fn lift_canonical(&self, target: u32) -> Result<GrPoly> {
        self.spec.check_precision(target)?;
        if target < self.precision {
            return Err(usage("lift target below current precision"));
        }
        Ok(GrPoly { spec: self.spec.clone(), precision: target, data: self.data.clone() })
    }

    /// Moves the polynomial into a ring spec with the same `p`, `d`, `h`
    /// (for instance one with a larger maximum precision).
    pub fn rebase(&self, spec: &Arc<RingSpec>) -> Result<GrPoly> {
        if !self.spec.same_tower(spec) {
            return Err(usage("cannot rebase onto a different tower"));
        }
        spec.check_precision(self.precision)?;
        Ok(GrPoly { spec: spec.clone(), precision: self.precision, data: self.data.clone() })
    }

    pub fn derivative(&self) -> GrPoly {
        let d = self.d();
        let lv = self.level();
        let mut data = Vec::with_capacity(self.data.len().saturating_sub(d));
        for i in 1..self.len() {
            let k = (i as u64) % lv.m;
            for &c in self.block(i) {
                data.push(((c as u128 * k as u128) % lv.m as u128) as u64);
            }
        }
        GrPoly::from_flat(&self.spec, self.precision, data)
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> GrPoly {
        let d = self.d();
        if self.is_zero() {
            return self.clone();
        }
        let mut data = vec![0; ((self.len() - 1) * k + 1) * d];
        for i in 0..self.len() {
            data[i * k * d..i * k * d + d].copy_from_slice(self.block(i));
        }
        GrPoly::from_flat(&self.spec, self.precision, data)
    }

    /// Total order on polynomials: by degree, then lexicographically on the
    /// coefficient blocks from the leading one down.
    pub fn canonical_cmp(&self, other: &GrPoly) -> std::cmp::Ordering {
        let d = self.spec.d();
        self.len().cmp(&other.len()).then_with(|| {
            self.data.chunks(d).rev().cmp(other.data.chunks(d).rev())
        })
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&GrPoly> for &GrPoly {
            type Output = GrPoly;
            fn $method(self, rhs: &GrPoly) -> GrPoly {
                self.check_compatible(rhs).expect("incompatible polynomials");
                self.$inner(rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_unchecked);
poly_binop!(Sub, sub, sub_unchecked);
poly_binop!(Mul, mul, mul_unchecked);

impl Neg for &GrPoly {
    type Output = GrPoly;
    fn neg(self) -> GrPoly {
        let lv = self.level();
        let data = self.data.iter().map(|&a| lv.neg(a)).collect();
        GrPoly::from_flat(&self.spec, self.precision, data)
    }
}

impl fmt::Display for GrPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl fmt::Debug for GrPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self, self.spec.p(), self.precision)
    }
}
