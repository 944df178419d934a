//! Text format for polynomials.
//!
//! Terms `c*x^k` are joined by `+` or `-`; `x` alone means `x^1` and bare
//! constants are allowed. Over extension rings (`d > 1`) a coefficient is a
//! bracketed polynomial in `t`, e.g. `[t+1]*x^2 + [t]`. Printing is
//! canonical (descending degree, reduced coefficients), so
//! `parse(format(f)) == f`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::GrPoly;
use crate::error::{Error, Result};
use crate::ring::RingSpec;

fn term(c: &str, var: char, k: usize, unit: bool) -> String {
    match (k, unit) {
        (0, _) => c.to_string(),
        (1, true) => var.to_string(),
        (1, false) => format!("{c}*{var}"),
        (_, true) => format!("{var}^{k}"),
        (_, false) => format!("{c}*{var}^{k}"),
    }
}

/// Formats an integer-coefficient polynomial (lowest coefficient first).
pub fn format_int_poly(coeffs: &[u64], var: char) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| term(&c.to_string(), var, k, c == 1))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub fn format_poly(f: &GrPoly) -> String {
    let d = f.spec().d();
    let mut terms = Vec::new();
    for k in (0..f.len()).rev() {
        let b = f.block(k);
        if b.iter().all(|&c| c == 0) {
            continue;
        }
        let unit = b[0] == 1 && b[1..].iter().all(|&c| c == 0);
        let c = if d == 1 {
            b[0].to_string()
        } else {
            format!("[{}]", format_int_poly(b, 't'))
        };
        terms.push(term(&c, 'x', k, unit));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<i128>().or_else(|_| {
            self.pos = start;
            self.err("integer literal too large")
        })
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.eat(b'^') {
            let k = self.integer()?;
            usize::try_from(k).or_else(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    /// Parses a signed sum of terms in `var`. Coefficients are either
    /// integers or (when `inner` is given) bracketed polynomials in `inner`.
    /// Returns degree -> coefficient vector (in the inner variable).
    fn sum(&mut self, var: u8, inner: Option<u8>) -> Result<BTreeMap<usize, Vec<i128>>> {
        let mut out: BTreeMap<usize, Vec<i128>> = BTreeMap::new();
        let mut first = true;
        loop {
            let sign: i128 = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') || first {
                1
            } else {
                break;
            };
            first = false;
            let mut coeff: Vec<i128> = vec![1];
            let mut had_coeff = false;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff = vec![self.integer()?];
                    had_coeff = true;
                }
                Some(b'[') if inner.is_some() => {
                    self.pos += 1;
                    let inner_var = inner.expect("checked");
                    let terms = self.sum(inner_var, None)?;
                    if !self.eat(b']') {
                        return self.err("expected ']'");
                    }
                    let len = terms.keys().next_back().map_or(1, |k| k + 1);
                    coeff = vec![0; len];
                    for (k, v) in terms {
                        coeff[k] += v[0];
                    }
                    had_coeff = true;
                }
                _ => {}
            }
            let mut degree = 0;
            if had_coeff && self.eat(b'*')
                && self.peek() != Some(var) {
                    return self.err(format!("expected '{}' after '*'", var as char));
                }
            if self.peek() == Some(var) {
                self.pos += 1;
                degree = self.exponent()?;
            } else if !had_coeff {
                return self.err(format!("expected a term in '{}'", var as char));
            }
            let slot = out.entry(degree).or_default();
            if slot.len() < coeff.len() {
                slot.resize(coeff.len(), 0);
            }
            for (s, c) in slot.iter_mut().zip(coeff) {
                *s += sign * c;
            }
        }
        Ok(out)
    }
}

/// Parses a polynomial in `x` over `GR(p^ε, d)`; integer coefficients are
/// reduced mod `p^ε`.
pub fn parse_poly(spec: &Arc<RingSpec>, precision: u32, src: &str) -> Result<GrPoly> {
    spec.check_precision(precision)?;
    let d = spec.d();
    let mut parser = Parser { src: src.as_bytes(), pos: 0 };
    if parser.peek().is_none() {
        return parser.err("empty polynomial");
    }
    let terms = parser.sum(b'x', Some(b't'))?;
    if parser.peek().is_some() {
        return parser.err("unexpected trailing input");
    }
    let m = spec.modulus(precision) as i128;
    let len = terms.keys().next_back().map_or(0, |k| k + 1);
    let mut data = vec![0u64; len * d];
    for (k, c) in terms {
        if c.len() > d && c[d..].iter().any(|&x| x.rem_euclid(m) != 0) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("coefficient of x^{k} has degree in t of at least d = {d}"),
            });
        }
        for (s, v) in c.iter().take(d).enumerate() {
            data[k * d + s] = v.rem_euclid(m) as u64;
        }
    }
    Ok(GrPoly::from_flat(spec, precision, data))
}

/// Parses an integer polynomial in `var` (used for the defining polynomial
/// `h(t)`). Coefficients are returned lowest first, not reduced.
pub fn parse_int_poly(src: &str, var: char) -> Result<Vec<i64>> {
    let mut parser = Parser { src: src.as_bytes(), pos: 0 };
    if parser.peek().is_none() {
        return parser.err("empty polynomial");
    }
    let terms = parser.sum(var as u8, None)?;
    if parser.peek().is_some() {
        return parser.err("unexpected trailing input");
    }
    let len = terms.keys().next_back().map_or(0, |k| k + 1);
    let mut out = vec![0i64; len];
    for (k, v) in terms {
        out[k] = i64::try_from(v[0])
            .map_err(|_| Error::Parse { pos: 0, msg: "coefficient too large".into() })?;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

impl GrPoly {
    /// See [`parse_poly`].
    pub fn parse(spec: &Arc<RingSpec>, precision: u32, src: &str) -> Result<GrPoly> {
        parse_poly(spec, precision, src)
    }
}
