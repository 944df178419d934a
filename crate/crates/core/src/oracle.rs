//! Brute-force ground truth: the full functional graph of `g -> f g` on
//! small state spaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::cycles::CycleSet;
use crate::error::{resource, usage, Result};
use crate::par::{self, Execution};
use crate::poly::GrPoly;
use crate::ring::RingSpec;

pub const DEFAULT_CAP: u64 = 1 << 20;
/// Largest graph [`export_dot`] will write vertex by vertex.
pub const DOT_LIMIT: usize = 4096;

/// Successor array over all states of `R_ε[x]/⟨m⟩`.
///
/// State `i` is the polynomial whose flat coefficient residues are the
/// base-`p^ε` digits of `i`, least significant first.
#[derive(Clone, Debug)]
pub struct FunctionalGraph {
    spec: Arc<RingSpec>,
    eps: u32,
    digits: usize,
    succ: Vec<u32>,
}

fn state_count(spec: &RingSpec, eps: u32, digits: usize, cap: u64) -> Result<usize> {
    let base = spec.modulus(eps) as u128;
    let mut n: u128 = 1;
    for _ in 0..digits {
        n = n.saturating_mul(base);
        if n > cap as u128 || n > u32::MAX as u128 {
            return Err(resource(format!(
                "state space (p^{eps})^{digits} exceeds the oracle cap {cap}"
            )));
        }
    }
    Ok(n as usize)
}

pub fn build_functional_graph(
    f: &GrPoly,
    m: &GrPoly,
    eps: u32,
    cap: u64,
    exec: Execution,
) -> Result<FunctionalGraph> {
    f.check_compatible(m)?;
    if !m.is_monic() || m.deg() == 0 {
        return Err(usage("oracle modulus must be monic of positive degree"));
    }
    let f = f.project(eps)?;
    let m = m.project(eps)?;
    let spec = f.spec().clone();
    let digits = m.deg() * spec.d();
    let n = state_count(&spec, eps, digits, cap)?;
    let base = spec.modulus(eps);
    let f = f.rem(&m)?;

    // Images of all states whose nonzero digits lie in one half.
    let low_digits = digits / 2;
    let low_count = (base as usize).pow(low_digits as u32);
    let high_count = n / low_count;
    let image = |idx: usize, offset: usize, width: usize| -> Vec<u64> {
        let mut data = vec![0u64; digits];
        let mut r = idx;
        for slot in data.iter_mut().skip(offset).take(width) {
            *slot = (r % base as usize) as u64;
            r /= base as usize;
        }
        let g = GrPoly::from_flat(&spec, eps, data);
        let mut out = g.mulmod(&f, &m).data().to_vec();
        out.resize(digits, 0);
        out
    };
    let low: Vec<Vec<u64>> = par::map_range(exec, low_count, |i| image(i, 0, low_digits));
    let high: Vec<Vec<u64>> =
        par::map_range(exec, high_count, |i| image(i, low_digits, digits - low_digits));
    let mut succ = vec![0u32; n];
    par::fill(exec, &mut succ, |i| {
        let (a, b) = (&low[i % low_count], &high[i / low_count]);
        let mut idx = 0u64;
        for j in (0..digits).rev() {
            let s = a[j] + b[j];
            idx = idx * base + if s >= base { s - base } else { s };
        }
        idx as u32
    });
    Ok(FunctionalGraph { spec, eps, digits, succ })
}

impl FunctionalGraph {
    pub fn state_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successor(&self, i: usize) -> usize {
        self.succ[i] as usize
    }

    pub fn successors(&self) -> &[u32] {
        &self.succ
    }

    pub fn state_poly(&self, i: usize) -> GrPoly {
        let base = self.spec.modulus(self.eps) as usize;
        let mut data = vec![0u64; self.digits];
        let mut r = i;
        for slot in data.iter_mut() {
            *slot = (r % base) as u64;
            r /= base;
        }
        GrPoly::from_flat(&self.spec, self.eps, data)
    }

    /// Index of a reduced polynomial.
    pub fn index_of(&self, g: &GrPoly) -> Result<usize> {
        if g.precision() != self.eps || g.data().len() > self.digits {
            return Err(usage(format!("{g} is not a reduced state")));
        }
        let base = self.spec.modulus(self.eps) as usize;
        Ok(g.data().iter().rev().fold(0, |acc, &c| acc * base + c as usize))
    }

    /// Cycle census, tree heights and per-component sizes.
    pub fn summarize(&self) -> GraphSummary {
        let n = self.succ.len();
        let mut indeg = vec![0u32; n];
        for &s in &self.succ {
            indeg[s as usize] += 1;
        }
        let mut peeled: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
        let mut head = 0;
        while head < peeled.len() {
            let s = self.succ[peeled[head] as usize] as usize;
            head += 1;
            indeg[s] -= 1;
            if indeg[s] == 0 {
                peeled.push(s as u32);
            }
        }
        let mut on_cycle = vec![true; n];
        for &v in &peeled {
            on_cycle[v as usize] = false;
        }

        const NONE: u32 = u32::MAX;
        let mut comp = vec![NONE; n];
        let mut components: Vec<ComponentRecord> = Vec::new();
        for v in 0..n {
            if !on_cycle[v] || comp[v] != NONE {
                continue;
            }
            let id = components.len() as u32;
            let mut len = 0u64;
            let mut w = v;
            while comp[w] == NONE {
                comp[w] = id;
                len += 1;
                w = self.succ[w] as usize;
            }
            components.push(ComponentRecord { cycle_length: len as u128, size: len, tree_height: 0 });
        }
        let mut depth = vec![0u32; n];
        for &v in peeled.iter().rev() {
            let s = self.succ[v as usize] as usize;
            let (v, c) = (v as usize, comp[s]);
            depth[v] = depth[s] + 1;
            comp[v] = c;
            let rec = &mut components[c as usize];
            rec.size += 1;
            rec.tree_height = rec.tree_height.max(depth[v]);
        }
        let mut census: BTreeMap<u128, u64> = BTreeMap::new();
        for c in &components {
            *census.entry(c.cycle_length).or_default() += 1;
        }
        GraphSummary {
            state_count: n as u64,
            cycles: census.into_iter().map(|(length, count)| CycleCount { length, count }).collect(),
            max_height: depth.iter().copied().max().unwrap_or(0),
            components,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCount {
    pub length: u128,
    pub count: u64,
}

/// One weakly connected component: a cycle with trees hanging off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub cycle_length: u128,
    pub size: u64,
    pub tree_height: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub state_count: u64,
    pub cycles: Vec<CycleCount>,
    pub max_height: u32,
    pub components: Vec<ComponentRecord>,
}

impl GraphSummary {
    pub fn cycle_set(&self) -> CycleSet {
        self.cycles.iter().map(|c| c.length).collect()
    }

    pub fn cycle_count(&self, length: u128) -> u64 {
        self.cycles.iter().find(|c| c.length == length).map_or(0, |c| c.count)
    }
}

/// Census of the functional graph of `g -> f g mod (m, p^ε)`.
pub fn build_graph(f: &GrPoly, m: &GrPoly, eps: u32, cap: u64) -> Result<GraphSummary> {
    build_graph_with(f, m, eps, cap, Execution::default())
}

pub fn build_graph_with(
    f: &GrPoly,
    m: &GrPoly,
    eps: u32,
    cap: u64,
    exec: Execution,
) -> Result<GraphSummary> {
    Ok(build_functional_graph(f, m, eps, cap, exec)?.summarize())
}

/// The orbit `z, f z, f² z, ...` up to its first repeated state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTrace {
    /// `states[k] = f^k z mod (m, p^ε)`, length `preperiod + period`.
    pub states: Vec<GrPoly>,
    pub preperiod: usize,
    pub period: usize,
}

pub fn orbit_trace(f: &GrPoly, m: &GrPoly, eps: u32, z: &GrPoly, limit: usize) -> Result<OrbitTrace> {
    f.check_compatible(m)?;
    if !m.is_monic() || m.deg() == 0 {
        return Err(usage("modulus must be monic of positive degree"));
    }
    let f = f.project(eps)?;
    let m = m.project(eps)?;
    let z = if z.precision() < eps { z.lift_canonical(eps)? } else { z.project(eps)? };
    let mut seen: HashMap<GrPoly, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut cur = z.rem(&m)?;
    loop {
        if let Some(&first) = seen.get(&cur) {
            let period = states.len() - first;
            return Ok(OrbitTrace { states, preperiod: first, period });
        }
        if states.len() >= limit {
            return Err(resource(format!("orbit did not close within {limit} steps")));
        }
        seen.insert(cur.clone(), states.len());
        let next = cur.mulmod(&f, &m);
        states.push(std::mem::replace(&mut cur, next));
    }
}

/// Graphviz text with one vertex per state, in index order.
pub fn export_dot(graph: &FunctionalGraph) -> Result<String> {
    let n = graph.state_count();
    if n > DOT_LIMIT {
        return Err(resource(format!("{n} states exceed the DOT limit of {DOT_LIMIT}")));
    }
    let mut out = String::from("digraph lfds {\n");
    for i in 0..n {
        writeln!(out, "  n{i} [label=\"{}\"];", graph.state_poly(i)).expect("string write");
    }
    for i in 0..n {
        writeln!(out, "  n{i} -> n{};", graph.successor(i)).expect("string write");
    }
    out.push_str("}\n");
    Ok(out)
}

/// Graphviz text with one vertex per cycle length, labelled with its count.
pub fn export_summary_dot(summary: &GraphSummary) -> String {
    let mut out = String::from("digraph lfds_summary {\n");
    for c in &summary.cycles {
        writeln!(out, "  c{} [label=\"C{} x {}\"];", c.length, c.length, c.count).expect("string write");
        writeln!(out, "  c{} -> c{};", c.length, c.length).expect("string write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests;
