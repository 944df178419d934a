use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::level::Level;
use super::RingSpec;
use crate::error::{domain, usage, Result};

/// An element of `GR(p^ε, d)`: `d` residues mod `p^ε`, the coefficients of
/// `1, t, ..., t^(d-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrElem {
    spec: Arc<RingSpec>,
    precision: u32,
    coeffs: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl GrElem {
    /// Builds an element from integer coefficients (reduced mod `p^ε`).
    pub fn new(spec: &Arc<RingSpec>, precision: u32, coeffs: &[i64]) -> Result<Self> {
        spec.check_precision(precision)?;
        if coeffs.len() > spec.d() {
            return Err(usage(format!(
                "element has {} coefficients, ring degree is {}",
                coeffs.len(),
                spec.d()
            )));
        }
        let m = spec.modulus(precision) as i128;
        let mut c: Vec<u64> = coeffs
            .iter()
            .map(|&x| (x as i128).rem_euclid(m) as u64)
            .collect();
        c.resize(spec.d(), 0);
        Ok(GrElem { spec: spec.clone(), precision, coeffs: c })
    }

    pub(crate) fn from_raw(spec: &Arc<RingSpec>, precision: u32, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), spec.d());
        GrElem { spec: spec.clone(), precision, coeffs }
    }

    pub fn zero(spec: &Arc<RingSpec>, precision: u32) -> Self {
        GrElem::from_raw(spec, precision, vec![0; spec.d()])
    }

    pub fn one(spec: &Arc<RingSpec>, precision: u32) -> Self {
        let mut c = vec![0; spec.d()];
        c[0] = 1 % spec.modulus(precision);
        GrElem::from_raw(spec, precision, c)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Coefficients of `1, t, ..., t^(d-1)`, each in `[0, p^ε)`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn level(&self) -> Level {
        Level::new(&self.spec, self.precision)
    }

    fn check_compatible(&self, other: &GrElem) -> Result<()> {
        if !self.spec.same_tower(&other.spec) {
            return Err(usage("elements belong to different rings"));
        }
        if self.precision != other.precision {
            return Err(usage(format!(
                "precision mismatch: {} vs {}",
                self.precision, other.precision
            )));
        }
        Ok(())
    }

    /// Checked ring operation. `Neg` ignores `other`.
    pub fn arith(&self, other: &GrElem, op: ElemOp) -> Result<GrElem> {
        if op == ElemOp::Neg {
            return Ok(-self);
        }
        self.check_compatible(other)?;
        Ok(match op {
            ElemOp::Add => self.add_unchecked(other),
            ElemOp::Sub => self.sub_unchecked(other),
            ElemOp::Mul => self.mul_unchecked(other),
            ElemOp::Neg => unreachable!(),
        })
    }

    fn add_unchecked(&self, other: &GrElem) -> GrElem {
        let lv = self.level();
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| lv.add(a, b)).collect();
        GrElem::from_raw(&self.spec, self.precision, c)
    }

    fn sub_unchecked(&self, other: &GrElem) -> GrElem {
        let lv = self.level();
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| lv.sub(a, b)).collect();
        GrElem::from_raw(&self.spec, self.precision, c)
    }

    fn mul_unchecked(&self, other: &GrElem) -> GrElem {
        let c = self.level().mul(&self.coeffs, &other.coeffs);
        GrElem::from_raw(&self.spec, self.precision, c)
    }

    pub fn pow(&self, mut k: u128) -> GrElem {
        let mut base = self.clone();
        let mut acc = GrElem::one(&self.spec, self.precision);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Units are exactly the elements outside `⟨p⟩`.
    pub fn is_unit(&self) -> bool {
        let p = self.spec.p();
        self.coeffs.iter().any(|&c| c % p != 0)
    }

    /// Multiplicative inverse: invert in the residue field, then Newton-lift
    /// with `x <- x(2 - a x)`.
    pub fn inv(&self) -> Result<GrElem> {
        if !self.is_unit() {
            return Err(domain("element is not a unit"));
        }
        let q = self.spec.q()?;
        let field = self.project(1)?;
        let x0 = field.pow(q - 2);
        let mut x = x0.lift_canonical(self.precision)?;
        let two = GrElem::new(&self.spec, self.precision, &[2])?;
        let mut good = 1u32;
        while good < self.precision {
            let ax = self.mul_unchecked(&x);
            x = x.mul_unchecked(&two.sub_unchecked(&ax));
            good *= 2;
        }
        debug_assert!(self.mul_unchecked(&x).is_one());
        Ok(x)
    }

    /// Reduction mod `p^target`.
    pub fn project(&self, target: u32) -> Result<GrElem> {
        if target == 0 || target > self.precision {
            return Err(usage(format!(
                "cannot project precision {} to {target}",
                self.precision
            )));
        }
        let m = self.spec.modulus(target);
        let c = self.coeffs.iter().map(|&x| x % m).collect();
        Ok(GrElem::from_raw(&self.spec, target, c))
    }

    /// Reads the same integer coefficients at a higher precision.
    pub fn lift_canonical(&self, target: u32) -> Result<GrElem> {
        self.spec.check_precision(target)?;
        if target < self.precision {
            return Err(usage("lift target below current precision"));
        }
        Ok(GrElem::from_raw(&self.spec, target, self.coeffs.clone()))
    }
}

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self, self.spec.p(), self.precision)
    }
}

impl fmt::Display for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.d() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[{}]", crate::poly::text::format_int_poly(&self.coeffs, 't'))
        }
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&GrElem> for &GrElem {
            type Output = GrElem;
            fn $method(self, rhs: &GrElem) -> GrElem {
                self.check_compatible(rhs).expect("incompatible ring elements");
                self.$inner(rhs)
            }
        }
    };
}

elem_binop!(Add, add, add_unchecked);
elem_binop!(Sub, sub, sub_unchecked);
elem_binop!(Mul, mul, mul_unchecked);

impl Neg for &GrElem {
    type Output = GrElem;
    fn neg(self) -> GrElem {
        let lv = self.level();
        let c = self.coeffs.iter().map(|&a| lv.neg(a)).collect();
        GrElem::from_raw(&self.spec, self.precision, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr8() -> Arc<RingSpec> {
        RingSpec::new(2, 3, 3, Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn integer_examples() {
        let z4 = RingSpec::prime(2, 2).unwrap();
        let two = GrElem::new(&z4, 2, &[2]).unwrap();
        assert!((&two * &two).is_zero());
        assert!(!two.is_unit());
        let three = GrElem::new(&z4, 2, &[3]).unwrap();
        assert!(three.is_unit());
        assert_eq!(three.inv().unwrap(), three);
        assert_eq!(three.project(1).unwrap().coeffs(), &[1]);
        assert_eq!(three.project(2).unwrap(), three);
        assert!(three.project(3).is_err());

        let z8 = RingSpec::prime(2, 3).unwrap();
        let five = GrElem::new(&z8, 3, &[5]).unwrap();
        let six = GrElem::new(&z8, 3, &[6]).unwrap();
        assert_eq!((&five + &six).coeffs(), &[3]);
        assert_eq!(five.inv().unwrap(), five);
        assert!(two.arith(&five, ElemOp::Add).is_err());
    }

    #[test]
    fn extension_examples() {
        let s = gr8();
        let t = GrElem::new(&s, 1, &[0, 1]).unwrap();
        let t2 = GrElem::new(&s, 1, &[0, 0, 1]).unwrap();
        assert_eq!((&t * &t2).coeffs(), &[1, 1, 0]);

        let t = GrElem::new(&s, 2, &[0, 1]).unwrap();
        assert!(t.is_unit());
        let inv = t.inv().unwrap();
        assert!((&t * &inv).is_one());
        // t^3 = -t - 1, so t (t^2 + 1) = -1 and t^{-1} = -(t^2 + 1) = 3t^2 + 3 mod 4.
        assert_eq!(inv.coeffs(), &[3, 0, 3]);
    }

    fn arb_elem(spec: Arc<RingSpec>, eps: u32) -> impl Strategy<Value = GrElem> {
        let m = spec.modulus(eps) as i64;
        let d = spec.d();
        proptest::collection::vec(0..m, d)
            .prop_map(move |c| GrElem::new(&spec, eps, &c).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(gr8(), 3), b in arb_elem(gr8(), 3), c in arb_elem(gr8(), 3)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
        }

        #[test]
        fn projection_is_a_homomorphism(a in arb_elem(gr8(), 3), b in arb_elem(gr8(), 3)) {
            let lhs = (&a * &b).project(1).unwrap();
            let rhs = &a.project(1).unwrap() * &b.project(1).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.project(1).unwrap().is_zero(), !a.is_unit());
        }

        #[test]
        fn power_p_congruence(a in arb_elem(gr8(), 2), delta in arb_elem(gr8(), 1)) {
            // b = a + 2^2 * delta, read at precision 3: a ≡ b mod 4 implies a^2 ≡ b^2 mod 8.
            let s = gr8();
            let a3 = a.lift_canonical(3).unwrap();
            let shift = GrElem::new(&s, 3, &[4]).unwrap();
            let b3 = &a3 + &(&shift * &delta.lift_canonical(3).unwrap());
            prop_assert_eq!(a3.project(2).unwrap(), b3.project(2).unwrap());
            prop_assert_eq!(a3.pow(2), b3.pow(2));
        }

        #[test]
        fn inverse_roundtrip(a in arb_elem(gr8(), 3)) {
            if a.is_unit() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            } else {
                prop_assert!(a.inv().is_err());
            }
        }
    }

    #[test]
    fn random_units_match_projection() {
        use rand::{Rng, SeedableRng};
        let s = RingSpec::new(3, 2, 3, Some(&[1, 0, 1])).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let c: Vec<i64> = (0..2).map(|_| rng.gen_range(0..27)).collect();
            let a = GrElem::new(&s, 3, &c).unwrap();
            assert_eq!(a.is_unit(), !a.project(1).unwrap().is_zero());
        }
    }
}
