//! Flat-slice kernels for GR(p^ε, d) and polynomials over it.
//!
//! An element is a block of `d` residues mod `p^ε` (coefficients of
//! `1, t, ..., t^(d-1)`); a polynomial is a run of such blocks, lowest
//! degree first. Products are accumulated without reduction while the
//! accumulator provably cannot overflow, then reduced once per slot.

use super::RingSpec;

/// Arithmetic context for one precision level.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub m: u64,
    pub d: usize,
    /// `-h_j mod m` for the non-leading coefficients of `h`.
    hneg: Vec<u64>,
}

trait Acc: Copy + Default + Send {
    fn from_u64(x: u64) -> Self;
    fn addp(&mut self, a: u64, b: u64, m: u64);
    fn residue(self, m: u64) -> u64;
}

impl Acc for u64 {
    #[inline(always)]
    fn from_u64(x: u64) -> Self {
        x
    }
    #[inline(always)]
    fn addp(&mut self, a: u64, b: u64, _m: u64) {
        *self += a * b;
    }
    #[inline(always)]
    fn residue(self, m: u64) -> u64 {
        self % m
    }
}

impl Acc for u128 {
    #[inline(always)]
    fn from_u64(x: u64) -> Self {
        x as u128
    }
    #[inline(always)]
    fn addp(&mut self, a: u64, b: u64, _m: u64) {
        *self += a as u128 * b as u128;
    }
    #[inline(always)]
    fn residue(self, m: u64) -> u64 {
        (self % m as u128) as u64
    }
}

/// Eagerly reduced accumulator for moduli of 32 bits or more.
#[derive(Clone, Copy, Default)]
struct Eager(u128);

impl Acc for Eager {
    fn from_u64(x: u64) -> Self {
        Eager(x as u128)
    }
    fn addp(&mut self, a: u64, b: u64, m: u64) {
        let m = m as u128;
        self.0 = (self.0 + (a as u128 * b as u128) % m) % m;
    }
    fn residue(self, m: u64) -> u64 {
        (self.0 % m as u128) as u64
    }
}

enum AccKind {
    Narrow,
    Lazy,
    Eager,
}

impl Level {
    pub fn new(spec: &RingSpec, eps: u32) -> Self {
        let m = spec.modulus(eps);
        let hneg = spec.h[..spec.d]
            .iter()
            .map(|&c| (m - c % m) % m)
            .collect();
        Level { m, d: spec.d, hneg }
    }

    fn acc_kind(&self, terms: usize) -> AccKind {
        if self.m >= 1 << 32 {
            return AccKind::Eager;
        }
        let sq = (self.m as u128 - 1) * (self.m as u128 - 1);
        if sq * (terms as u128 + 1) + self.m as u128 <= u64::MAX as u128 {
            AccKind::Narrow
        } else {
            AccKind::Lazy
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.m - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    /// Reduces `2d-1` residues (coefficients of `t^0..t^(2d-2)`) modulo `h`
    /// into the first `d` entries.
    fn fold_t(&self, s: &mut [u64]) {
        let d = self.d;
        let m = self.m as u128;
        for k in (d..s.len()).rev() {
            let c = s[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                s[k - d + j] = ((s[k - d + j] as u128 + c as u128 * self.hneg[j] as u128) % m) as u64;
            }
            s[k] = 0;
        }
    }

    fn reduce_blocks<A: Acc>(&self, acc: &[A], blocks: usize, out: &mut Vec<u64>) {
        let d = self.d;
        let w = 2 * d - 1;
        let mut scratch = vec![0u64; w];
        for i in 0..blocks {
            for (s, slot) in scratch.iter_mut().zip(&acc[i * w..(i + 1) * w]) {
                *s = slot.residue(self.m);
            }
            self.fold_t(&mut scratch);
            out.extend_from_slice(&scratch[..d]);
        }
    }

    /// Product of two flat polynomials (`a.len()/d` and `b.len()/d` blocks).
    /// Returns `na + nb - 1` blocks, not normalized.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.d;
        let (na, nb) = (a.len() / d, b.len() / d);
        if na == 0 || nb == 0 {
            return Vec::new();
        }
        match self.acc_kind(na.min(nb) * d) {
            AccKind::Narrow => self.mul_with::<u64>(a, b),
            AccKind::Lazy => self.mul_with::<u128>(a, b),
            AccKind::Eager => self.mul_with::<Eager>(a, b),
        }
    }

    fn mul_with<A: Acc>(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.d;
        let m = self.m;
        let (na, nb) = (a.len() / d, b.len() / d);
        let n = na + nb - 1;
        let mut out = Vec::with_capacity(n * d);
        if d == 1 {
            let mut acc = vec![A::default(); n];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (slot, &bj) in acc[i..i + nb].iter_mut().zip(b) {
                    slot.addp(ai, bj, m);
                }
            }
            out.extend(acc.into_iter().map(|x| x.residue(m)));
            return out;
        }
        let w = 2 * d - 1;
        let mut acc = vec![A::default(); n * w];
        for i in 0..na {
            let ab = &a[i * d..(i + 1) * d];
            if ab.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..nb {
                let bb = &b[j * d..(j + 1) * d];
                let base = (i + j) * w;
                for (s, &x) in ab.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (t, &y) in bb.iter().enumerate() {
                        acc[base + s + t].addp(x, y, m);
                    }
                }
            }
        }
        self.reduce_blocks(&acc, n, &mut out);
        out
    }

    /// Division with remainder by a monic flat polynomial `b` (its last
    /// block is `1`). Returns `(quotient, remainder)`; the quotient is only
    /// materialized when `want_q` is set. Neither output is normalized; the
    /// remainder has exactly `nb - 1` blocks.
    pub fn divrem_monic(&self, a: &[u64], b: &[u64], want_q: bool) -> (Vec<u64>, Vec<u64>) {
        let d = self.d;
        let (na, nb) = (a.len() / d, b.len() / d);
        debug_assert!(nb >= 1);
        if na < nb {
            let mut r = a.to_vec();
            r.resize((nb - 1) * d, 0);
            return (Vec::new(), r);
        }
        match self.acc_kind(nb * d) {
            AccKind::Narrow => self.divrem_with::<u64>(a, b, want_q),
            AccKind::Lazy => self.divrem_with::<u128>(a, b, want_q),
            AccKind::Eager => self.divrem_with::<Eager>(a, b, want_q),
        }
    }

    fn divrem_with<A: Acc>(&self, a: &[u64], b: &[u64], want_q: bool) -> (Vec<u64>, Vec<u64>) {
        let d = self.d;
        let m = self.m;
        let (na, nb) = (a.len() / d, b.len() / d);
        let shift = nb - 1;
        let qlen = na - shift;
        let mut q = if want_q { vec![0u64; qlen * d] } else { Vec::new() };
        if d == 1 {
            let mut acc: Vec<A> = a.iter().map(|&x| A::from_u64(x)).collect();
            let blow = &b[..shift];
            for i in (shift..na).rev() {
                let c = acc[i].residue(m);
                if want_q {
                    q[i - shift] = c;
                }
                if c == 0 {
                    continue;
                }
                let nc = m - c;
                for (slot, &bj) in acc[i - shift..i].iter_mut().zip(blow) {
                    slot.addp(nc, bj, m);
                }
            }
            let r = acc[..shift].iter().map(|x| x.residue(m)).collect();
            return (q, r);
        }
        let w = 2 * d - 1;
        let mut acc = vec![A::default(); na * w];
        for i in 0..na {
            for s in 0..d {
                acc[i * w + s] = A::from_u64(a[i * d + s]);
            }
        }
        let mut top = vec![0u64; w];
        let mut negc = vec![0u64; d];
        for i in (shift..na).rev() {
            for (s, slot) in top.iter_mut().zip(&acc[i * w..(i + 1) * w]) {
                *s = slot.residue(m);
            }
            self.fold_t(&mut top);
            if want_q {
                q[(i - shift) * d..(i - shift + 1) * d].copy_from_slice(&top[..d]);
            }
            if top[..d].iter().all(|&x| x == 0) {
                continue;
            }
            for s in 0..d {
                negc[s] = self.neg(top[s]);
            }
            for j in 0..shift {
                let bb = &b[j * d..(j + 1) * d];
                let base = (i - shift + j) * w;
                for (s, &x) in negc.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (t, &y) in bb.iter().enumerate() {
                        acc[base + s + t].addp(x, y, m);
                    }
                }
            }
        }
        let mut r = Vec::with_capacity(shift * d);
        self.reduce_blocks(&acc, shift, &mut r);
        (q, r)
    }
}
