//! Integer utilities for the order engine: deterministic primality,
//! factorization with a process-wide cache, and checked lcm.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{resource, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &sp in &SMALL {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // These witnesses are sufficient for every n < 2^64.
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a non-trivial factor of an odd composite `n` (Pollard rho, Brent variant).
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let m = 128u64;
        let (mut x, mut g, mut ys) = (y, 1u64, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn factorize_uncached(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d * d <= n && d <= TRIAL_LIMIT {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factor_into(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for pr in primes {
        match out.last_mut() {
            Some((q, k)) if *q == pr => *k += 1,
            _ => out.push((pr, 1)),
        }
    }
    out
}

type FactorCache = Mutex<HashMap<u64, Vec<(u64, u32)>>>;

fn cache() -> &'static FactorCache {
    static CACHE: OnceLock<FactorCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs with
/// strictly increasing primes. Results are memoized per process.
pub fn int_factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "int_factorize requires n >= 1");
    if let Some(hit) = cache().lock().expect("factor cache poisoned").get(&n) {
        return hit.clone();
    }
    let fac = factorize_uncached(n);
    cache()
        .lock()
        .expect("factor cache poisoned")
        .insert(n, fac.clone());
    fac
}

/// Same as [`int_factorize`] for a `u128` argument that must fit in 64 bits.
pub fn int_factorize_wide(n: u128) -> Result<Vec<(u64, u32)>> {
    let n = u64::try_from(n)
        .map_err(|_| resource(format!("cannot factor {n}: exceeds 64 bits")))?;
    Ok(int_factorize(n))
}

pub fn checked_lcm(a: u128, b: u128) -> Result<u128> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    let g = a.gcd(&b);
    (a / g)
        .checked_mul(b)
        .ok_or_else(|| resource(format!("lcm({a}, {b}) overflows 128 bits")))
}

/// `base^exp`, failing instead of wrapping.
pub fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp)
        .ok_or_else(|| resource(format!("{base}^{exp} overflows 128 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            if k > 0 {
                out.push((d, k));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(int_factorize(7), vec![(7, 1)]);
        assert_eq!(int_factorize(1), vec![]);
        assert_eq!(int_factorize(4095), vec![(3, 2), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(int_factorize(4095), trial_division(4095));
    }

    #[test]
    fn mersenne_30_multiplies_back() {
        let n = (1u64 << 30) - 1;
        let f = int_factorize(n);
        let prod: u64 = f.iter().map(|&(p, k)| p.pow(k)).product();
        assert_eq!(prod, n);
        assert!(f.iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn large_semiprimes_and_primes() {
        // 2^61 - 1 is prime.
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        let n = 4_294_967_291u64 * 4_294_967_279u64;
        assert_eq!(
            int_factorize(n),
            vec![(4_294_967_279, 1), (4_294_967_291, 1)]
        );
        let n = (1u64 << 63) - 1;
        let f = int_factorize(n);
        assert_eq!(f.iter().map(|&(p, k)| p.pow(k)).product::<u64>(), n);
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 1..3000u64 {
            assert_eq!(int_factorize(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn lcm_overflow_is_reported() {
        assert_eq!(checked_lcm(4, 6).unwrap(), 12);
        assert!(checked_lcm(u128::MAX, u128::MAX - 1).is_err());
    }
}
