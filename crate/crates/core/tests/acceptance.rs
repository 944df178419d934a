//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lfds_core::cycles::{
    analyze_field, cycle_census_field, cycle_set_ring, cycle_set_ring_grouped, ring_cycle_sets, Variant,
};
use lfds_core::decompose::split_system;
use lfds_core::factor::{factor, DEFAULT_SEED};
use lfds_core::height::{height_ring, per_pper, per_pper_of_one};
use lfds_core::hensel::hensel_multi;
use lfds_core::oracle::{build_graph, orbit_trace, DEFAULT_CAP};
use lfds_core::order::{order_histogram, order_ladder};
use lfds_core::par::Execution;
use lfds_core::sample::{random_oracle_instance, OracleInstance};
use lfds_core::{GrElem, GrPoly, RingSpec};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: lfds_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn parse(spec: &Arc<RingSpec>, eps: u32, s: &str) -> Result<GrPoly, String> {
    lib(GrPoly::parse(spec, eps, s))
}

fn lengths(levels: &[lfds_core::CycleSet]) -> Vec<Vec<u128>> {
    levels.iter().map(|c| c.lengths()).collect()
}

fn instances(seed: u64, count: usize, max_states: u128) -> Result<Vec<OracleInstance>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| lib(random_oracle_instance(&mut rng, &[2, 3, 5], &[1, 2], 3, 8, max_states)))
        .collect()
}

fn label(inst: &OracleInstance) -> String {
    format!("p={} d={} e={} f={} m={}", inst.spec.p(), inst.spec.d(), inst.e, inst.f, inst.m)
}

fn x14() -> Check {
    let s = lib(RingSpec::prime(2, 3))?;
    let f = parse(&s, 3, "x^13+x")?;
    let m = parse(&s, 3, "x^14-1")?;
    let want = vec![vec![1, 7, 14], vec![1, 7, 14], vec![1, 7, 14, 28]];
    let plain = lengths(&lib(cycle_set_ring(&f, &m, 3))?);
    let grouped = lengths(&lib(cycle_set_ring_grouped(&f, &m, 3))?);
    ensure(plain == want, || format!("per-factor levels {plain:?}"))?;
    ensure(grouped == want, || format!("grouped levels {grouped:?}"))?;
    Ok(format!("levels {plain:?}"))
}

fn ladder_of_x() -> Check {
    let s = lib(RingSpec::prime(2, 1))?;
    let g = parse(&s, 1, "x^3+x+1")?;
    let (_, _, ladder) = lib(order_ladder(&GrPoly::x(&s, 1), &g, 16))?;
    let mut want = vec![7, 14, 28, 28, 56, 56, 56, 56];
    want.extend([112; 8]);
    ensure(ladder == want, || format!("ladder {ladder:?}"))?;
    Ok("O(x, G^t) for t = 1..16 matches".into())
}

fn orbit_periods() -> Check {
    let s = lib(RingSpec::prime(2, 3))?;
    let f = parse(&s, 3, "x^13+x")?;
    let m = parse(&s, 3, "x^14-1")?;
    let mbar = lib(m.project(1))?;
    let g1 = parse(&s, 1, "x^3+x+1")?;
    let hat = lib(mbar.div_exact(&g1))?;
    let t1 = lib(orbit_trace(&f, &m, 1, &hat, 1000))?;
    ensure((t1.preperiod, t1.period) == (0, 7), || format!("precision-1 orbit {t1:?}"))?;
    let row = parse(&s, 1, "x^13+x^12+x^9+x^7+x^6+x^5+x^2+1")?;
    ensure(t1.states[1] == row, || format!("precision-1 orbit state k=1 is {}", t1.states[1]))?;
    let base = lib(mbar.div_exact(&(&g1 * &g1)))?;
    let mut periods = vec![t1.period];
    for (eps, k) in [(2u32, 2u128), (3, 4)] {
        let z = lib(lib(base.lift_canonical(eps))?.mod_pow_u128(k, &lib(m.project(eps))?))?;
        let t = lib(orbit_trace(&f, &m, eps, &z, 1000))?;
        ensure(t.preperiod == 0, || format!("preperiod {} at eps={eps}", t.preperiod))?;
        periods.push(t.period);
    }
    ensure(periods == [7, 14, 28], || format!("periods {periods:?}"))?;
    Ok(format!("periods {periods:?}, preperiod 0"))
}

fn x4095() -> Check {
    let s = lib(RingSpec::prime(2, 1))?;
    let f = parse(&s, 1, "x^4094+x")?;
    let m = parse(&s, 1, "x^4095-1")?;
    let fa = lib(analyze_field(&f, &m, DEFAULT_SEED, Execution::Parallel))?;
    ensure(fa.split.m2 == parse(&s, 1, "x+1")?, || format!("M2 = {}", fa.split.m2))?;
    let fac = lib(factor(&fa.split.m1, DEFAULT_SEED))?;
    let n = fac.factors.len();
    ensure(n == 350 && fac.factors.iter().all(|(_, k)| *k == 1), || format!("{n} factors"))?;
    let hist = order_histogram(fa.factors.iter().map(|fo| fo.base_order));
    let total: usize = hist.iter().map(|(_, c)| c).sum();
    let modal = hist.iter().max_by_key(|(_, c)| *c).map(|(o, _)| *o);
    ensure(hist.len() == 22 && total == 350, || format!("{} orders, {total} divisors", hist.len()))?;
    ensure(modal == Some(4095), || format!("modal order {modal:?}"))?;
    let rc = lib(ring_cycle_sets(&f, &m, 1, &fa, Variant::Grouped, Execution::Parallel))?;
    ensure(rc.tracks.len() == 22, || format!("{} order classes", rc.tracks.len()))?;
    Ok(format!("M2 = x + 1, {n} factors, {} orders, modal 4095", hist.len()))
}

fn oracle_equivalence() -> Check {
    let insts = instances(5, 320, 1 << 16)?;
    let mut states = 0u128;
    for inst in &insts {
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let fa = lib(analyze_field(f, m, DEFAULT_SEED, Execution::Parallel))?;
        let plain = lib(ring_cycle_sets(f, m, e, &fa, Variant::PerFactor, Execution::Parallel))?;
        let grouped = lib(ring_cycle_sets(f, m, e, &fa, Variant::Grouped, Execution::Parallel))?;
        ensure(plain.levels == grouped.levels, || format!("variants differ: {}", label(inst)))?;
        for eps in 1..=e {
            let g = lib(build_graph(f, m, eps, DEFAULT_CAP))?;
            let want = g.cycle_set();
            ensure(want == plain.levels[eps as usize - 1], || {
                format!("eps={eps}: oracle {want} vs {}: {}", plain.levels[eps as usize - 1], label(inst))
            })?;
            if eps == e {
                let h = lib(height_ring(f, m, e, &fa.split.m2, plain.max_length()))?;
                ensure(h.height == g.max_height, || {
                    format!("height {} vs oracle {}: {}", h.height, g.max_height, label(inst))
                })?;
            }
        }
        states += inst.state_count();
    }
    Ok(format!("{} instances, {states} top-level states", insts.len()))
}

fn structural_invariants() -> Check {
    let insts = instances(6, 300, 1 << 16)?;
    for inst in &insts {
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let fail = |what: &str| format!("{what}: {}", label(inst));
        let fa = lib(analyze_field(f, m, DEFAULT_SEED, Execution::Parallel))?;
        let rc = lib(ring_cycle_sets(f, m, e, &fa, Variant::PerFactor, Execution::Parallel))?;
        let p = inst.spec.p() as u128;
        let (_, per) = lib(per_pper_of_one(f, m, e, 1 << 24))?;
        for (i, level) in rc.levels.iter().enumerate() {
            if let Some(next) = rc.levels.get(i + 1) {
                ensure(level.is_subset(next), || fail("containment"))?;
            }
        }
        for l in rc.top().iter() {
            let shaped = (0..e).any(|j| l % p.pow(j) == 0 && rc.levels[0].contains(l / p.pow(j)));
            ensure(shaped, || fail(&format!("length {l} not of the form p^j l1")))?;
            ensure(per % l == 0, || fail(&format!("length {l} does not divide per(1) = {per}")))?;
        }
        let h = lib(height_ring(f, m, e, &fa.split.m2, rc.max_length()))?;
        ensure(h.field_height <= h.height && h.height <= e * h.field_height, || fail("height bounds"))?;
        let mbar = lib(m.project(1))?;
        let primaries: Vec<GrPoly> = lib(factor(&mbar, DEFAULT_SEED))?
            .factors
            .iter()
            .map(|(g, k)| (0..*k).fold(GrPoly::one(&inst.spec, 1), |a, _| &a * g))
            .collect();
        for eps in 1..=e {
            let me = lib(m.project(eps))?;
            let lifted = lib(hensel_multi(&me, &primaries, eps))?;
            let prod = lifted.iter().fold(GrPoly::one(&inst.spec, eps), |a, g| &a * g);
            ensure(prod == me, || fail(&format!("lifted factors do not multiply back at eps={eps}")))?;
            for (g, bar) in lifted.iter().zip(&primaries) {
                ensure(&lib(g.project(1))? == bar, || fail("lifted factor does not project"))?;
            }
            let split = lib(split_system(f, m, eps))?;
            lib(split.decomposition.verify(f, m)).map_err(|e| fail(&e))?;
            let m1 = split.bijective_factors.iter().fold(GrPoly::one(&inst.spec, eps), |a, g| &a * g);
            ensure(&m1 == split.bijective_modulus(), || fail("bijective factors do not multiply back"))?;
        }
    }
    Ok(format!("{} instances", insts.len()))
}

fn embedding() -> Check {
    let insts = instances(7, 300, 1 << 16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let mut checked = 0;
    for inst in insts.iter().filter(|i| i.e >= 2) {
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let (fe, me) = (lib(f.project(e))?, lib(m.project(e))?);
        for eps in 1..e {
            let modulus = inst.spec.modulus(eps) as i64;
            let blocks: Vec<Vec<i64>> = (0..m.deg())
                .map(|_| (0..inst.spec.d()).map(|_| rng.gen_range(0..modulus)).collect())
                .collect();
            let z = lib(GrPoly::from_int_blocks(&inst.spec, eps, &blocks))?;
            let scale = lib(GrElem::new(&inst.spec, e, &[(inst.spec.p() as i64).pow(e - eps)]))?;
            let lifted = lib(z.lift_canonical(e))?.scale(&scale);
            let low = lib(per_pper(&lib(f.project(eps))?, &lib(m.project(eps))?, &z, 1 << 24))?;
            let high = lib(per_pper(&fe, &me, &lifted, 1 << 24))?;
            ensure(low == high, || format!("z={z} eps={eps}: {low:?} vs {high:?}: {}", label(inst)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, z, eps) triples"))
}

fn field_census() -> Check {
    let insts = instances(8, 300, 1 << 12)?;
    let mut compared = 0;
    for inst in &insts {
        let (fbar, mbar) = (lib(inst.f.project(1))?, lib(inst.m.project(1))?);
        let fa = lib(analyze_field(&inst.f, &inst.m, DEFAULT_SEED, Execution::Sequential))?;
        let census = lib(fa.census())?;
        if fbar.deg() >= 1 {
            ensure(lib(cycle_census_field(&fbar, &mbar))? == census, || {
                format!("entry points disagree: {}", label(inst))
            })?;
        }
        let q = BigUint::from(lib(inst.spec.q())?);
        ensure(census.covered_vertices() == q.pow(fa.split.m1.deg() as u32), || {
            format!("sum c*l is not q^deg M1: {}", label(inst))
        })?;
        let g = lib(build_graph(&fbar, &mbar, 1, DEFAULT_CAP))?;
        ensure(census.entries.len() == g.cycles.len(), || format!("length sets differ: {}", label(inst)))?;
        for c in &g.cycles {
            ensure(census.count(c.length) == BigUint::from(c.count), || {
                format!("{} cycles of length {} vs oracle {}: {}", census.count(c.length), c.length, c.count, label(inst))
            })?;
            compared += 1;
        }
    }
    Ok(format!("{} instances, {compared} multiplicities", insts.len()))
}

type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "cycle sets of x^13+x mod x^14-1", Duration::from_secs(1), x14),
        (2, "prime-power order ladder", Duration::from_secs(1), ladder_of_x),
        (3, "orbit periods", Duration::from_secs(1), orbit_periods),
        (4, "x^4094+x mod x^4095-1 at scale", Duration::from_secs(60), x4095),
        (5, "oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        (6, "structural invariants", Duration::from_secs(300), structural_invariants),
        (7, "embedding of scaled lifts", Duration::from_secs(300), embedding),
        (8, "field census identity", Duration::from_secs(300), field_census),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > budget => Err(format!("{detail}; over the {budget:?} budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name} ({:.2?}): {detail}", took),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name} ({:.2?}): {why}", took);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
