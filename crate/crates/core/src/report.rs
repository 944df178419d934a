//! Serialization helpers shared by report types.

use num_bigint::BigUint;
use serde::Serializer;

use crate::poly::GrPoly;

/// Serializes a polynomial as its canonical text.
pub fn poly_string<S: Serializer>(p: &GrPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

pub fn poly_strings<S: Serializer>(ps: &[GrPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

/// Serializes a big integer as a decimal string.
pub fn big_string<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}
