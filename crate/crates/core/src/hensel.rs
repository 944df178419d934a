//! Raising precision: Bezout certificates, coprime factorizations and the
//! nilpotent/bijective split of a modulus.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;

use crate::error::{domain, invariant, usage, Result};
use crate::par::{self, Execution};
use crate::poly::{field_gcd_ext, GrPoly};

/// `x a - y b ≡ 1`, or `x a + y b ≡ 1` when `additive` is set, at the
/// precision of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCert {
    pub a: GrPoly,
    pub b: GrPoly,
    pub x: GrPoly,
    pub y: GrPoly,
    pub additive: bool,
}

impl BezoutCert {
    /// Seeds a certificate over the residue field from the extended gcd.
    pub fn from_field(a: &GrPoly, b: &GrPoly) -> Result<BezoutCert> {
        let (g, u, v) = field_gcd_ext(a, b)?;
        if !g.is_one() {
            return Err(domain(format!("{a} and {b} are not coprime mod p (gcd {g})")));
        }
        Ok(BezoutCert { a: a.clone(), b: b.clone(), x: u, y: v, additive: true })
    }

    pub fn precision(&self) -> u32 {
        self.a.precision()
    }

    fn combination(&self) -> Result<GrPoly> {
        let eps = self.precision();
        for part in [&self.b, &self.x, &self.y] {
            self.a.check_compatible(part)?;
            if part.precision() != eps {
                return Err(usage("certificate components at different precisions"));
            }
        }
        let xa = &self.x * &self.a;
        let yb = &self.y * &self.b;
        Ok(if self.additive { &xa + &yb } else { &xa - &yb })
    }

    pub fn is_valid(&self) -> bool {
        self.combination().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn verify(&self) -> Result<()> {
        if self.combination()?.is_one() {
            Ok(())
        } else {
            let op = if self.additive { '+' } else { '-' };
            Err(domain(format!(
                "x*a {op} y*b is not 1 mod p^{} for a = {}, b = {}",
                self.precision(),
                self.a,
                self.b
            )))
        }
    }
}

/// Lifts a certificate one precision step, reading `a` and `b` with the
/// same integer coefficients at the new precision.
pub fn lift_bezout(cert: &BezoutCert) -> Result<BezoutCert> {
    let next = cert.precision() + 1;
    let a = cert.a.lift_canonical(next)?;
    let b = cert.b.lift_canonical(next)?;
    lift_bezout_onto(cert, &a, &b)
}

/// Lifts a certificate to precision `ε+1` for given `a' ≡ a`, `b' ≡ b mod p^ε`.
///
/// With `x` reduced modulo `b` the new components reduce to the old ones.
pub fn lift_bezout_onto(cert: &BezoutCert, a: &GrPoly, b: &GrPoly) -> Result<BezoutCert> {
    cert.verify()?;
    let eps = cert.precision();
    let next = eps + 1;
    if a.precision() != next || b.precision() != next {
        return Err(usage(format!("lift targets must be at precision {next}")));
    }
    if a.project(eps)? != cert.a || b.project(eps)? != cert.b {
        return Err(domain("lift targets do not reduce to the certified pair"));
    }
    let x = cert.x.lift_canonical(next)?;
    let mut y = cert.y.lift_canonical(next)?;
    if cert.additive {
        y = -&y;
    }
    let p = a.spec().p();
    let (x, y) = if unit_lead(b) {
        lift_reduced(&x, a, b, p)?
    } else if unit_lead(a) {
        // b(-y) - a(-x) = 1, lifted with the roles swapped.
        let (ny, nx) = lift_reduced(&-&y, b, a, p)?;
        (-&nx, -&ny)
    } else {
        lift_unreduced(&x, &y, a, b, p)
    };
    let y = if cert.additive { -&y } else { y };
    let out = BezoutCert { a: a.clone(), b: b.clone(), x, y, additive: cert.additive };
    out.verify().map_err(|e| invariant(format!("lifted certificate: {e}")))?;
    Ok(out)
}

fn unit_lead(f: &GrPoly) -> bool {
    f.leading_coeff().is_some_and(|c| c.is_unit())
}

/// `x' = x (xa)^{p-1} mod b`, then `y'` from the exact quotient.
fn lift_reduced(x: &GrPoly, a: &GrPoly, b: &GrPoly, p: u64) -> Result<(GrPoly, GrPoly)> {
    let spec = a.spec();
    let eps = a.precision();
    let xr = if b.deg() == 0 {
        GrPoly::zero(spec, eps)
    } else {
        let xa = (x * a).rem(b)?;
        let pow = xa.mod_pow_u128(p as u128 - 1, b)?;
        (x * &pow).rem(b)?
    };
    let num = &(&xr * a) - &GrPoly::one(spec, eps);
    let (y, r) = num.divmod(b)?;
    if !r.is_zero() {
        return Err(invariant("Bezout lift left a nonzero remainder"));
    }
    Ok((xr, y))
}

/// Unreduced form: `x' = x (xa)^{p-1}`, `y' = y Σ_{k=1}^{p} C(p,k) (yb)^{k-1}`.
fn lift_unreduced(x: &GrPoly, y: &GrPoly, a: &GrPoly, b: &GrPoly, p: u64) -> (GrPoly, GrPoly) {
    let spec = a.spec();
    let eps = a.precision();
    let m = BigUint::from(spec.modulus(eps));
    let xa = x * a;
    let mut xp = x.clone();
    for _ in 1..p {
        xp = &xp * &xa;
    }
    let yb = y * b;
    let mut acc = GrPoly::zero(spec, eps);
    for k in (1..=p).rev() {
        let c = binomial(BigUint::from(p), BigUint::from(k)) % &m;
        let c = c.to_i64().expect("reduced below the modulus");
        let c = GrPoly::from_ints(spec, eps, &[c]).expect("reduced constant");
        acc = &(&acc * &yb) + &c;
    }
    (xp, y * &acc)
}

/// Result of a two-factor lift: `f ≡ g h`, `s g + t h ≡ 1`, `h` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselLift {
    pub g: GrPoly,
    pub h: GrPoly,
    pub s: GrPoly,
    pub t: GrPoly,
}

fn check_pair_inputs(f: &GrPoly, g: &GrPoly, h: &GrPoly, s: &GrPoly, t: &GrPoly) -> Result<()> {
    let i = g.precision();
    for part in [h, s, t] {
        g.check_compatible(part)?;
        if part.precision() != i {
            return Err(usage("g, h, s, t must share a precision"));
        }
    }
    if !h.is_monic() {
        return Err(domain(format!("{h} is not monic")));
    }
    if f.classify() == crate::RegularityClass::ZeroDivisor {
        return Err(domain("f is a zero divisor"));
    }
    let lead_unit = f.leading_coeff().is_some_and(|c| c.is_unit());
    if !lead_unit {
        return Err(domain("leading coefficient of f is a zero divisor mod p"));
    }
    if f.deg() != g.deg() + h.deg() {
        return Err(domain("deg f must equal deg g + deg h"));
    }
    if !s.is_zero() && s.deg() >= h.deg() {
        return Err(domain("deg s must be below deg h"));
    }
    if !t.is_zero() && t.deg() >= g.deg() {
        return Err(domain("deg t must be below deg g"));
    }
    let fi = f.project(i)?;
    if g * h != fi {
        return Err(domain(format!("f is not g*h mod p^{i}")));
    }
    if !(&(s * g) + &(t * h)).is_one() {
        return Err(domain(format!("s*g + t*h is not 1 mod p^{i}")));
    }
    Ok(())
}

/// Lifts `f ≡ g h`, `s g + t h ≡ 1` from the precision of `g` to `target`.
///
/// `f` must be given at precision `target` or above.
pub fn hensel_pair(
    f: &GrPoly,
    g: &GrPoly,
    h: &GrPoly,
    s: &GrPoly,
    t: &GrPoly,
    target: u32,
) -> Result<HenselLift> {
    let start = g.precision();
    if target < start || f.precision() < target {
        return Err(usage(format!(
            "cannot lift from precision {start} to {target} with f at precision {}",
            f.precision()
        )));
    }
    check_pair_inputs(f, g, h, s, t)?;
    let f = f.project(target)?;
    let mut cur = HenselLift { g: g.clone(), h: h.clone(), s: s.clone(), t: t.clone() };
    for i in start + 1..=target {
        cur = hensel_step(&f.project(i)?, &cur)?;
    }
    Ok(cur)
}

/// One step `p^{i-1} -> p^i` of the classical lifting recurrence.
pub fn hensel_step(f: &GrPoly, cur: &HenselLift) -> Result<HenselLift> {
    let i = f.precision();
    let up = |q: &GrPoly| q.lift_canonical(i);
    let (g, h, s, t) = (up(&cur.g)?, up(&cur.h)?, up(&cur.s)?, up(&cur.t)?);
    let e = f - &(&g * &h);
    let (q, r) = (&s * &e).divmod(&h)?;
    let g2 = &(&g + &(&t * &e)) + &(&q * &g);
    let h2 = &h + &r;
    let b = &(&(&s * &g2) + &(&t * &h2)) - &GrPoly::one(f.spec(), i);
    let (c, d) = (&s * &b).divmod(&h2)?;
    let s2 = &s - &d;
    let t2 = &(&t - &(&t * &b)) - &(&c * &g2);
    if &(&g2 * &h2) != f || !(&(&s2 * &g2) + &(&t2 * &h2)).is_one() {
        return Err(invariant(format!("Hensel step to precision {i} failed to verify")));
    }
    Ok(HenselLift { g: g2, h: h2, s: s2, t: t2 })
}

/// Lifts `m = g h` from the residue field to `target` when `g`, `h` are
/// monic and coprime mod `p`. Returns `(g', h')`.
pub fn lift_coprime_pair(m: &GrPoly, g: &GrPoly, h: &GrPoly, target: u32) -> Result<(GrPoly, GrPoly)> {
    if g.deg() == 0 {
        return Ok((GrPoly::one(m.spec(), target), m.project(target)?));
    }
    if h.deg() == 0 {
        return Ok((m.project(target)?, GrPoly::one(m.spec(), target)));
    }
    let cert = BezoutCert::from_field(g, h)?;
    let (qq, s) = cert.x.divmod(h)?;
    let t = &cert.y + &(&qq * g);
    let lift = hensel_pair(m, g, h, &s, &t, target)?;
    Ok((lift.g, lift.h))
}

/// Lifts a factorization of `π₁(m)` into monic, pairwise coprime factors to
/// monic factors of `m` at precision `target`.
pub fn hensel_multi(m: &GrPoly, factors: &[GrPoly], target: u32) -> Result<Vec<GrPoly>> {
    hensel_multi_with(m, factors, target, Execution::default())
}

pub fn hensel_multi_with(
    m: &GrPoly,
    factors: &[GrPoly],
    target: u32,
    exec: Execution,
) -> Result<Vec<GrPoly>> {
    if !m.is_monic() {
        return Err(domain(format!("{m} is not monic")));
    }
    if factors.is_empty() {
        return Err(usage("no factors to lift"));
    }
    if target > m.precision() {
        return Err(usage(format!("m is only known to precision {}", m.precision())));
    }
    let mbar = m.project(1)?;
    let mut prod = GrPoly::one(m.spec(), 1);
    for g in factors {
        if g.precision() != 1 || !g.is_monic() {
            return Err(domain(format!("factor {g} must be monic over the residue field")));
        }
        prod = &prod * g;
    }
    if prod != mbar {
        return Err(domain("factors do not multiply to m mod p"));
    }
    if target == 1 {
        return Ok(factors.to_vec());
    }
    split_lift(&m.project(target)?, factors, exec)
}

fn split_lift(m: &GrPoly, factors: &[GrPoly], exec: Execution) -> Result<Vec<GrPoly>> {
    if factors.len() == 1 {
        return Ok(vec![m.clone()]);
    }
    let target = m.precision();
    let (left, right) = factors.split_at(factors.len() / 2);
    let product = |fs: &[GrPoly]| fs.iter().skip(1).fold(fs[0].clone(), |a, g| &a * g);
    let (g, h) = lift_coprime_pair(m, &product(left), &product(right), target)?;
    let (l, r) = par::join(
        exec,
        || split_lift(&g, left, exec),
        || split_lift(&h, right, exec),
    );
    let mut out = l?;
    out.extend(r?);
    Ok(out)
}

/// The split `m ≡ m₁ m₂` with `f` invertible mod `m₁` and nilpotent mod `m₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDecomposition {
    pub precision: u32,
    pub m1: GrPoly,
    pub m2: GrPoly,
    /// `α f + β m₁ ≡ 1` with `a = f`, `b = m₁`.
    pub bezout: BezoutCert,
    /// `f^N ≡ 0 mod (m₂, p^ε)`.
    pub n: u128,
}

impl FDecomposition {
    /// Checks every congruence of the split for the system `(f, m)`.
    pub fn verify(&self, f: &GrPoly, m: &GrPoly) -> Result<()> {
        let eps = self.precision;
        let f = f.project(eps)?;
        let m = m.project(eps)?;
        if &self.m1 * &self.m2 != m {
            return Err(invariant(format!("m1*m2 is not m mod p^{eps}")));
        }
        if !self.m1.is_monic() || !self.m2.is_monic() {
            return Err(invariant("split factors are not monic"));
        }
        if self.bezout.a != f || self.bezout.b != self.m1 || !self.bezout.additive {
            return Err(invariant("certificate is not for (f, m1)"));
        }
        self.bezout.verify().map_err(|e| invariant(e.to_string()))?;
        if self.m2.deg() > 0 && !f.mod_pow_u128(self.n, &self.m2)?.is_zero() {
            return Err(invariant(format!("f^{} is not 0 mod (m2, p^{eps})", self.n)));
        }
        Ok(())
    }
}

/// Lifts the field-level split `π₁(m) = M₁ M₂` to precision `target`.
pub fn lift_f_decomposition(
    f: &GrPoly,
    m: &GrPoly,
    field_pair: (&GrPoly, &GrPoly),
    target: u32,
) -> Result<FDecomposition> {
    let (big_m1, big_m2) = field_pair;
    f.check_compatible(m)?;
    if target == 0 || target > f.precision() || target > m.precision() {
        return Err(usage(format!("target precision {target} out of range")));
    }
    let spec = m.spec();
    let fbar = f.project(1)?;
    if !big_m1.is_monic() || !big_m2.is_monic() {
        return Err(domain("M1 and M2 must be monic"));
    }
    if big_m1 * big_m2 != m.project(1)? {
        return Err(domain("M1*M2 is not m mod p"));
    }
    let n0 = big_m2.deg() as u128;
    if n0 > 0 && !fbar.mod_pow_u128(n0, big_m2)?.is_zero() {
        return Err(domain(format!("f^{n0} is not 0 mod M2, so rad(M2) does not divide f")));
    }
    let mut cert = if big_m1.deg() == 0 {
        BezoutCert {
            a: fbar.clone(),
            b: GrPoly::one(spec, 1),
            x: GrPoly::zero(spec, 1),
            y: GrPoly::one(spec, 1),
            additive: true,
        }
    } else {
        BezoutCert::from_field(&fbar, big_m1)
            .map_err(|_| domain("gcd(f mod p, M1) is not 1"))?
    };
    let (m1, m2) = lift_coprime_pair(m, big_m1, big_m2, target)?;
    for i in 2..=target {
        cert = lift_bezout_onto(&cert, &f.project(i)?, &m1.project(i)?)?;
    }
    let n = if n0 == 0 {
        1
    } else {
        let p = spec.p() as u128;
        (1..target).try_fold(n0, |acc, _| acc.checked_mul(p)).ok_or_else(|| {
            crate::error::resource("nilpotency exponent overflows 128 bits")
        })?
    };
    let out = FDecomposition { precision: target, m1, m2, bezout: cert, n };
    out.verify(f, m)?;
    Ok(out)
}
