//! Factorization over the residue field `F_q`: squarefree decomposition,
//! distinct-degree splitting and randomized equal-degree splitting
//! (Cantor–Zassenhaus; the trace-map variant in characteristic 2).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{usage, Result};
use crate::par::{self, Execution};
use crate::poly::{field_gcd, GrPoly};
use crate::ring::{int_factorize, GrElem};

/// Default seed for the randomized equal-degree stage.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// `unit * prod G_i^{k_i}` with monic irreducible, pairwise distinct `G_i`,
/// sorted by degree and then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: GrElem,
    pub factors: Vec<(GrPoly, u32)>,
}

impl Factorization {
    pub fn multiply_back(&self) -> GrPoly {
        let spec = self.unit.spec();
        let mut acc = GrPoly::constant(&self.unit);
        if acc.is_zero() {
            acc = GrPoly::zero(spec, 1);
        }
        for (g, k) in &self.factors {
            for _ in 0..*k {
                acc = &acc * g;
            }
        }
        acc
    }

    /// Number of distinct irreducible factors.
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }
}

fn require_field(f: &GrPoly) -> Result<()> {
    if f.precision() != 1 {
        return Err(usage(format!(
            "factorization works over the residue field; got precision {}",
            f.precision()
        )));
    }
    Ok(())
}

/// Complete factorization of a nonzero polynomial over `F_q`.
pub fn factor(f: &GrPoly, seed: u64) -> Result<Factorization> {
    factor_with(f, seed, Execution::default())
}

pub fn factor_with(f: &GrPoly, seed: u64, exec: Execution) -> Result<Factorization> {
    require_field(f)?;
    let unit = f
        .leading_coeff()
        .ok_or_else(|| usage("cannot factor the zero polynomial"))?;
    let monic = f.make_monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, k) in squarefree_decomposition(&monic)? {
        for (deg, block) in distinct_degree(&part)? {
            for g in equal_degree(&block, deg, rng.gen(), exec)? {
                factors.push((g, k));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// `(radical, [(G_i, k_i)])` where the radical is the product of the
/// distinct irreducible divisors.
pub fn squarefree_and_radical(f: &GrPoly, seed: u64) -> Result<(GrPoly, Vec<(GrPoly, u32)>)> {
    let fac = factor(f, seed)?;
    let mut rad = GrPoly::one(f.spec(), 1);
    for (g, _) in &fac.factors {
        rad = &rad * g;
    }
    Ok((rad, fac.factors))
}

fn q_of(f: &GrPoly) -> Result<u128> {
    f.spec().q()
}

/// Inverse of the Frobenius `a -> a^p` on `F_q`, applied coefficient-wise to
/// a polynomial in `x^p`.
fn pth_root(f: &GrPoly) -> Result<GrPoly> {
    let spec = f.spec();
    let p = spec.p() as usize;
    let q = q_of(f)?;
    let root_exp = q / spec.p() as u128;
    let coeffs: Vec<GrElem> = (0..f.len())
        .step_by(p)
        .map(|i| f.coeff(i).pow(root_exp))
        .collect();
    GrPoly::from_elems(spec, 1, &coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(S_k, k)` with
/// `f = prod S_k^k`, each `S_k` squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &GrPoly) -> Result<Vec<(GrPoly, u32)>> {
    require_field(f)?;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let p = f.spec().p() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, k) in squarefree_decomposition(&pth_root(f)?)? {
            out.push((g, k * p));
        }
        return Ok(out);
    }
    let mut c = field_gcd(f, &df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = field_gcd(&w, &c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y)?;
        w = y;
    }
    if !c.is_one() {
        for (g, k) in squarefree_decomposition(&pth_root(&c)?)? {
            out.push((g, k * p));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into `(k, product of all its
/// irreducible factors of degree k)`.
pub fn distinct_degree(f: &GrPoly) -> Result<Vec<(usize, GrPoly)>> {
    require_field(f)?;
    let spec = f.spec();
    let q = BigUint::from(q_of(f)?);
    let x = GrPoly::x(spec, 1);
    let mut out = Vec::new();
    let mut rest = f.clone();
    if rest.deg() == 0 {
        return Ok(out);
    }
    let mut h = x.rem(&rest)?;
    let mut k = 0;
    while rest.deg() >= 2 * (k + 1) {
        k += 1;
        h = h.mod_pow(&q, &rest)?;
        let g = field_gcd(&(&h - &x), &rest)?;
        if g.deg() > 0 {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((k, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    Ok(out)
}

fn random_poly(f: &GrPoly, rng: &mut ChaCha8Rng) -> GrPoly {
    let spec = f.spec();
    let p = spec.p();
    let data: Vec<u64> = (0..f.deg() * spec.d()).map(|_| rng.gen_range(0..p)).collect();
    GrPoly::from_flat(spec, 1, data)
}

/// Finds a proper monic factor of `f` (all irreducible factors of degree `k`).
fn split_once(f: &GrPoly, k: usize, rng: &mut ChaCha8Rng) -> Result<GrPoly> {
    let spec = f.spec();
    let n = f.deg();
    let p = spec.p();
    let q = q_of(f)?;
    loop {
        let a = random_poly(f, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = field_gcd(&a, f)?;
        if g.deg() > 0 && g.deg() < n {
            return Ok(g);
        }
        let candidate = if p == 2 {
            // Absolute trace F_{q^k} -> F_2: sum of a^(2^i), i < d k.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..spec.d() * k {
                t = t.mulmod(&t, f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(k as u32) - 1u32) / 2u32;
            &a.mod_pow(&e, f)? - &GrPoly::one(spec, 1)
        };
        if candidate.is_zero() {
            continue;
        }
        let g = field_gcd(&candidate, f)?;
        if g.deg() > 0 && g.deg() < n {
            return Ok(g);
        }
    }
}

/// Equal-degree splitting of a squarefree monic `f` whose irreducible
/// factors all have degree `k`. Subtrees are split concurrently when
/// `exec` allows; the result order is not canonical.
pub fn equal_degree(f: &GrPoly, k: usize, seed: u64, exec: Execution) -> Result<Vec<GrPoly>> {
    require_field(f)?;
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == k {
        return Ok(vec![f.make_monic()?]);
    }
    if k == 0 || !n.is_multiple_of(k) {
        return Err(usage(format!("degree {n} is not a multiple of {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = split_once(f, k, &mut rng)?;
    let h = f.div_exact(&g)?;
    let (s1, s2): (u64, u64) = (rng.gen(), rng.gen());
    let (left, right) = par::join(
        exec,
        || equal_degree(&g, k, s1, exec),
        || equal_degree(&h, k, s2, exec),
    );
    let mut out = left?;
    out.extend(right?);
    Ok(out)
}

/// Rabin's irreducibility test over `F_q`.
pub fn is_irreducible(g: &GrPoly) -> Result<bool> {
    require_field(g)?;
    let n = match g.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let g = g.make_monic()?;
    let q = BigUint::from(q_of(&g)?);
    let x = GrPoly::x(g.spec(), 1);
    // frob[j] = x^(q^j) mod g
    let mut frob = vec![x.rem(&g)?];
    for j in 1..=n {
        let next = frob[j - 1].mod_pow(&q, &g)?;
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return Ok(false);
    }
    for (r, _) in int_factorize(n as u64) {
        let j = n / r as usize;
        let diff = &frob[j] - &x;
        if diff.is_zero() || field_gcd(&diff, &g)?.deg() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
