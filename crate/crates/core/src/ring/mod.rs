//! The tower of Galois rings `GR(p^ε, d) = Z_{p^ε}[t]/⟨h⟩`, `1 <= ε <= e`.

mod elem;
pub mod intfact;
pub(crate) mod level;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use elem::{ElemOp, GrElem};
pub use intfact::{int_factorize, is_prime};

use crate::error::{usage, Result};

/// Parameters of the ring tower: residue characteristic `p`, extension
/// degree `d`, maximum precision `e` and the defining polynomial `h`.
///
/// `h` is stored with integer coefficients in `[0, p)`; the same integer
/// polynomial defines every level of the tower.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    p: u64,
    d: usize,
    e: u32,
    /// Monic, lowest coefficient first, length `d + 1`.
    pub(crate) h: Vec<u64>,
    #[serde(skip)]
    powers: Vec<u64>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.p, self.e, self.d)?;
        if self.d > 1 {
            write!(f, " mod {}", crate::poly::text::format_int_poly(&self.h, 't'))?;
        }
        Ok(())
    }
}

impl RingSpec {
    /// Builds the tower `GR(p^ε, d)` for `ε <= e`.
    ///
    /// `h` holds the coefficients of the defining polynomial, lowest first;
    /// it must be monic of degree `d` and irreducible mod `p`. Pass `None`
    /// when `d = 1` to use `h = t`.
    pub fn new(p: u64, d: usize, e: u32, h: Option<&[u64]>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(usage(format!("p = {p} is not prime")));
        }
        if d == 0 {
            return Err(usage("extension degree d must be at least 1"));
        }
        if e == 0 {
            return Err(usage("precision e must be at least 1"));
        }
        let mut powers = vec![1u64];
        for _ in 0..e {
            let next = powers
                .last()
                .and_then(|&x| x.checked_mul(p))
                .filter(|&x| x < 1 << 63)
                .ok_or_else(|| usage(format!("p^e = {p}^{e} does not fit in 63 bits")))?;
            powers.push(next);
        }
        let h: Vec<u64> = match h {
            Some(h) => {
                if h.len() != d + 1 {
                    return Err(usage(format!(
                        "defining polynomial must have degree d = {d}, got {} coefficients",
                        h.len()
                    )));
                }
                let reduced: Vec<u64> = h.iter().map(|&c| c % p).collect();
                if reduced[d] != 1 {
                    return Err(usage("defining polynomial h must be monic"));
                }
                reduced
            }
            None if d == 1 => vec![0, 1],
            None => return Err(usage("a defining polynomial h is required when d > 1")),
        };
        let spec = RingSpec { p, d, e, h, powers };
        if d > 1 && !spec.h_is_irreducible()? {
            return Err(usage(format!(
                "defining polynomial {} is reducible mod {p}",
                crate::poly::text::format_int_poly(&spec.h, 't')
            )));
        }
        Ok(Arc::new(spec))
    }

    /// `Z_{p^e}` with `d = 1`, `h = t`.
    pub fn prime(p: u64, e: u32) -> Result<Arc<Self>> {
        Self::new(p, 1, e, None)
    }

    fn h_is_irreducible(&self) -> Result<bool> {
        let base = RingSpec::prime(self.p, 1)?;
        let coeffs: Vec<i64> = self.h.iter().map(|&c| c as i64).collect();
        let hp = crate::poly::GrPoly::from_ints(&base, 1, &coeffs)?;
        crate::factor::is_irreducible(&hp)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Defining polynomial coefficients, lowest first (monic, length `d + 1`).
    pub fn h(&self) -> &[u64] {
        &self.h
    }

    /// Size of the residue field, `q = p^d`, if it fits in 128 bits.
    pub fn q(&self) -> Result<u128> {
        intfact::checked_pow(self.p as u128, self.d as u32)
    }

    /// `p^ε`.
    pub fn modulus(&self, eps: u32) -> u64 {
        self.powers[eps as usize]
    }

    pub(crate) fn check_precision(&self, eps: u32) -> Result<()> {
        if eps == 0 || eps > self.e {
            Err(usage(format!("precision {eps} outside [1, {}]", self.e)))
        } else {
            Ok(())
        }
    }

    /// Same `p`, `d`, `h` with a different maximum precision.
    pub fn with_max_precision(&self, e: u32) -> Result<Arc<Self>> {
        let h = self.h.clone();
        let mut powers = vec![1u64];
        for _ in 0..e {
            let next = powers
                .last()
                .and_then(|&x| x.checked_mul(self.p))
                .filter(|&x| x < 1 << 63)
                .ok_or_else(|| usage(format!("p^e = {}^{e} does not fit in 63 bits", self.p)))?;
            powers.push(next);
        }
        if e == 0 {
            return Err(usage("precision e must be at least 1"));
        }
        Ok(Arc::new(RingSpec { p: self.p, d: self.d, e, h, powers }))
    }

    /// True when both specs describe the same residue field and `h`.
    pub fn same_tower(&self, other: &RingSpec) -> bool {
        self.p == other.p && self.d == other.d && self.h == other.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(RingSpec::prime(4, 1).is_err());
        assert!(RingSpec::prime(2, 0).is_err());
        assert!(RingSpec::prime(2, 63).is_err());
        assert!(RingSpec::prime(2, 62).is_ok());
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(RingSpec::new(2, 2, 1, Some(&[1, 0, 1])).is_err());
        assert!(RingSpec::new(2, 2, 1, Some(&[1, 1, 1])).is_ok());
        assert!(RingSpec::new(2, 3, 2, None).is_err());
        assert!(RingSpec::new(3, 2, 2, Some(&[1, 0, 2])).is_err());
    }

    #[test]
    fn moduli() {
        let s = RingSpec::new(2, 3, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert_eq!(s.modulus(1), 2);
        assert_eq!(s.modulus(3), 8);
        assert_eq!(s.q().unwrap(), 8);
        assert!(s.check_precision(4).is_err());
    }
}
