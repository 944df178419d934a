//! Random systems for tests, benchmarks and cross-checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{usage, Result};
use crate::poly::GrPoly;
use crate::ring::RingSpec;

/// The first monic irreducible of degree `d` over `F_p`, coefficients
/// lowest first, enumerating in base-`p` order.
pub fn first_irreducible(p: u64, d: usize) -> Result<Vec<u64>> {
    let base = RingSpec::prime(p, 1)?;
    let total = (p as u128)
        .checked_pow(d as u32)
        .ok_or_else(|| usage("search space too large"))?;
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut r = idx;
        for _ in 0..d {
            coeffs.push((r % p as u128) as u64);
            r /= p as u128;
        }
        coeffs.push(1);
        let ints: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
        if crate::factor::is_irreducible(&GrPoly::from_ints(&base, 1, &ints)?)? {
            return Ok(coeffs);
        }
    }
    Err(usage(format!("no irreducible of degree {d} over F_{p}")))
}

fn random_coeff(rng: &mut impl Rng, spec: &RingSpec, eps: u32) -> Vec<u64> {
    let m = spec.modulus(eps);
    (0..spec.d()).map(|_| rng.gen_range(0..m)).collect()
}

/// A random regular `f` with `1 <= deg f < n` and a random monic `m` of
/// degree `n`, both at precision `eps`.
pub fn random_system(rng: &mut impl Rng, spec: &Arc<RingSpec>, eps: u32, n: usize) -> (GrPoly, GrPoly) {
    assert!(n >= 2, "need deg m >= 2");
    let d = spec.d();
    let f = loop {
        let df = rng.gen_range(1..n);
        let mut data: Vec<u64> = (0..=df).flat_map(|_| random_coeff(rng, spec, eps)).collect();
        if data[df * d..].iter().all(|&c| c == 0) {
            data[df * d] = 1;
        }
        let f = GrPoly::from_flat(spec, eps, data);
        if !f.project(1).expect("valid precision").is_zero() {
            break f;
        }
    };
    let mut data: Vec<u64> = (0..n).flat_map(|_| random_coeff(rng, spec, eps)).collect();
    data.push(1);
    data.extend(std::iter::repeat_n(0, d - 1));
    (f, GrPoly::from_flat(spec, eps, data))
}

/// A random system small enough for the brute-force oracle.
#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub spec: Arc<RingSpec>,
    pub e: u32,
    pub f: GrPoly,
    pub m: GrPoly,
}

impl OracleInstance {
    /// `q^{e deg m}`.
    pub fn state_count(&self) -> u128 {
        (self.spec.modulus(self.e) as u128).pow((self.m.deg() * self.spec.d()) as u32)
    }
}

/// Draws `p ∈ primes`, `d ∈ degrees`, `e ∈ 1..=max_e` and `2 <= deg m <=
/// max_deg` with at most `max_states` states at the top precision.
pub fn random_oracle_instance(
    rng: &mut impl Rng,
    primes: &[u64],
    degrees: &[usize],
    max_e: u32,
    max_deg: usize,
    max_states: u128,
) -> Result<OracleInstance> {
    for _ in 0..1000 {
        let p = *primes.choose(rng).ok_or_else(|| usage("no primes given"))?;
        let d = *degrees.choose(rng).ok_or_else(|| usage("no degrees given"))?;
        let e = rng.gen_range(1..=max_e);
        let qe = (p as u128).pow(d as u32 * e);
        let fits: Vec<usize> = (2..=max_deg)
            .filter(|&n| qe.checked_pow(n as u32).is_some_and(|s| s <= max_states))
            .collect();
        let Some(&n) = fits.choose(rng) else { continue };
        let h = first_irreducible(p, d)?;
        let spec = RingSpec::new(p, d, e, Some(&h))?;
        let (f, m) = random_system(rng, &spec, e, n);
        return Ok(OracleInstance { spec, e, f, m });
    }
    Err(usage("no admissible instance for these parameters"))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn first_irreducibles() {
        assert_eq!(first_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(first_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(first_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
        assert_eq!(first_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn instances_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let inst = random_oracle_instance(&mut rng, &[2, 3, 5], &[1, 2], 3, 8, 1 << 16).unwrap();
            assert!(inst.state_count() <= 1 << 16);
            assert!(inst.m.is_monic() && inst.m.deg() >= 2);
            crate::decompose::check_system(&inst.f, &inst.m).unwrap();
        }
    }
}
