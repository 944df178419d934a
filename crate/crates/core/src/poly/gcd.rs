use super::GrPoly;
use crate::error::{usage, Result};

fn require_field(a: &GrPoly, b: &GrPoly) -> Result<()> {
    a.check_compatible(b)?;
    if a.precision() != 1 {
        return Err(usage(format!(
            "gcd is only defined over the residue field, got precision {}",
            a.precision()
        )));
    }
    if a.is_zero() && b.is_zero() {
        return Err(usage("gcd(0, 0) is undefined"));
    }
    Ok(())
}

/// Monic gcd over `F_q`.
pub fn field_gcd(a: &GrPoly, b: &GrPoly) -> Result<GrPoly> {
    require_field(a, b)?;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r1m = r1.make_monic()?;
        let r = r0.divmod_monic(&r1m, false).1;
        r0 = r1m;
        r1 = r;
    }
    r0.make_monic()
}

/// Extended Euclid over `F_q`: returns `(g, u, v)` with `g` monic and
/// `u a + v b = g`.
pub fn field_gcd_ext(a: &GrPoly, b: &GrPoly) -> Result<(GrPoly, GrPoly, GrPoly)> {
    require_field(a, b)?;
    let spec = a.spec();
    let zero = GrPoly::zero(spec, 1);
    let one = GrPoly::one(spec, 1);
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (one.clone(), zero.clone());
    let (mut v0, mut v1) = (zero, one);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let u = &u0 - &(&q * &u1);
        let v = &v0 - &(&q * &v1);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
        v0 = std::mem::replace(&mut v1, v);
    }
    let inv = r0.leading_coeff().expect("nonzero gcd").inv()?;
    Ok((r0.scale(&inv), u0.scale(&inv), v0.scale(&inv)))
}
