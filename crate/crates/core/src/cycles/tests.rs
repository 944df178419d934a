use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::oracle::{build_graph, DEFAULT_CAP};
use crate::ring::RingSpec;

fn parse(spec: &Arc<RingSpec>, eps: u32, s: &str) -> GrPoly {
    GrPoly::parse(spec, eps, s).unwrap()
}

fn set(v: &[u128]) -> CycleSet {
    v.iter().copied().collect()
}

#[test]
fn lcm_product_examples() {
    let x = set(&[1, 2, 5, 12]);
    assert_eq!(lcm_product(&x, &CycleSet::trivial()).unwrap(), x);
    assert_eq!(lcm_product(&set(&[1, 7]), &set(&[1, 4])).unwrap(), set(&[1, 4, 7, 28]));
    let (a, b, c) = (set(&[1, 2]), set(&[1, 3]), set(&[1, 5]));
    assert_eq!(
        lcm_product(&lcm_product(&a, &b).unwrap(), &c).unwrap(),
        lcm_product(&a, &lcm_product(&b, &c).unwrap()).unwrap()
    );
    assert!(lcm_product(&set(&[u128::MAX]), &set(&[u128::MAX - 1])).is_err());
}

#[test]
fn x14_levels() {
    let s = RingSpec::prime(2, 3).unwrap();
    let f = parse(&s, 3, "x^13+x");
    let m = parse(&s, 3, "x^14-1");
    let expected = vec![set(&[1, 7, 14]), set(&[1, 7, 14]), set(&[1, 7, 14, 28])];
    assert_eq!(cycle_set_ring(&f, &m, 3).unwrap(), expected);
    assert_eq!(cycle_set_ring_grouped(&f, &m, 3).unwrap(), expected);
    assert_eq!(cycle_set_ring(&f, &m, 1).unwrap(), vec![set(&[1, 7, 14])]);
    let fbar = f.project(1).unwrap();
    let mbar = m.project(1).unwrap();
    assert_eq!(cycle_set_field(&fbar, &mbar).unwrap(), set(&[1, 7, 14]));
}

#[test]
fn field_sets_small() {
    let s = RingSpec::prime(2, 1).unwrap();
    let x = GrPoly::x(&s, 1);
    assert_eq!(cycle_set_field(&x, &parse(&s, 1, "x^3+x+1")).unwrap(), set(&[1, 7]));
    // purely nilpotent
    assert_eq!(cycle_set_field(&x, &parse(&s, 1, "x^4")).unwrap(), CycleSet::trivial());
}

#[test]
fn census_examples() {
    let s = RingSpec::prime(2, 1).unwrap();
    let x = GrPoly::x(&s, 1);
    let m = parse(&s, 1, "x^6+x^2+1");
    let census = cycle_census_field(&x, &m).unwrap();
    assert_eq!(census.count(1), BigUint::from(1u32));
    assert_eq!(census.count(7), BigUint::from(1u32));
    assert_eq!(census.count(14), BigUint::from(4u32));
    assert_eq!(census.covered_vertices(), BigUint::from(64u32));
    let g = build_graph(&x, &m, 1, DEFAULT_CAP).unwrap();
    assert_eq!(g.cycle_count(14), 4);

    let census = cycle_census_field(&x, &parse(&s, 1, "x^3+x+1")).unwrap();
    assert_eq!(census.entries.len(), 2);
    assert_eq!(census.count(7), BigUint::from(1u32));
}

fn instance(seed: u64, max_states: u128) -> crate::sample::OracleInstance {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    crate::sample::random_oracle_instance(&mut rng, &[2, 3, 5], &[1, 2], 3, 8, max_states).unwrap()
}

fn describe(inst: &crate::sample::OracleInstance) -> String {
    format!("p={} d={} e={} f={} m={}", inst.spec.p(), inst.spec.d(), inst.e, inst.f, inst.m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn ring_sets_match_oracle(seed in any::<u64>()) {
        let inst = instance(seed, 1 << 14);
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let fa = analyze_field(f, m, 1, Execution::Sequential).unwrap();
        let plain = ring_cycle_sets(f, m, e, &fa, Variant::PerFactor, Execution::Sequential).unwrap();
        let grouped = ring_cycle_sets(f, m, e, &fa, Variant::Grouped, Execution::Parallel).unwrap();
        prop_assert_eq!(&plain.levels, &grouped.levels, "{}", describe(&inst));
        for eps in 1..=e {
            let g = build_graph(f, m, eps, DEFAULT_CAP).unwrap();
            prop_assert_eq!(&g.cycle_set(), &plain.levels[eps as usize - 1], "{} eps={}", describe(&inst), eps);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn heights_and_invariants_match_oracle(seed in any::<u64>()) {
        let inst = instance(seed, 1 << 16);
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let fa = analyze_field(f, m, 1, Execution::Parallel).unwrap();
        let rc = ring_cycle_sets(f, m, e, &fa, Variant::PerFactor, Execution::Parallel).unwrap();
        let g = build_graph(f, m, e, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&g.cycle_set(), rc.top(), "{}", describe(&inst));
        let h = crate::height::height_ring(f, m, e, &fa.split.m2, rc.max_length()).unwrap();
        prop_assert_eq!(h.height, g.max_height, "{}", describe(&inst));
        let (pper, per) = crate::height::per_pper_of_one(f, m, e, 1 << 20).unwrap();
        prop_assert_eq!(pper, h.height as u128);
        prop_assert_eq!(per, rc.max_length());
        let p = inst.spec.p() as u128;
        let base = &rc.levels[0];
        for (i, level) in rc.levels.iter().enumerate() {
            prop_assert!(level.contains(1));
            if i + 1 < rc.levels.len() {
                prop_assert!(level.is_subset(&rc.levels[i + 1]));
            }
            for l in level.iter() {
                prop_assert_eq!(rc.max_length() % l, 0);
                prop_assert!((0..=i as u32).any(|j| l % p.pow(j) == 0 && base.contains(l / p.pow(j))));
            }
        }
    }
}

#[test]
fn instance_mix_is_varied() {
    let mut seen = std::collections::BTreeSet::new();
    let mut big = 0;
    for seed in 0..300 {
        let inst = instance(seed, 1 << 16);
        seen.insert((inst.spec.p(), inst.spec.d(), inst.e));
        if inst.state_count() > 1 << 12 {
            big += 1;
        }
    }
    assert!(seen.len() >= 15, "{seen:?}");
    assert!(big >= 30, "{big}");
}

#[test]
fn x4095_field_level() {
    let s = RingSpec::prime(2, 1).unwrap();
    let f = parse(&s, 1, "x^4094+x");
    let m = parse(&s, 1, "x^4095-1");
    let fa = analyze_field(&f, &m, crate::factor::DEFAULT_SEED, Execution::Parallel).unwrap();
    assert_eq!(fa.split.m2, parse(&s, 1, "x+1"));
    assert_eq!(fa.factors.len(), 350);
    let hist = crate::order::order_histogram(fa.factors.iter().map(|f| f.base_order));
    assert_eq!(hist.len(), 22);
    let modal = hist.iter().max_by_key(|(_, c)| *c).unwrap();
    assert_eq!(modal.0, 4095);
    let rc = ring_cycle_sets(&f, &m, 1, &fa, Variant::Grouped, Execution::Parallel).unwrap();
    assert_eq!(rc.tracks.len(), 22);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn scaled_lift_keeps_orbit_shape(seed in any::<u64>(), zseed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let inst = instance(seed, 1 << 16);
        prop_assume!(inst.e >= 2);
        let (f, m, e) = (&inst.f, &inst.m, inst.e);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(zseed);
        let eps = rng.gen_range(1..e);
        let modulus = inst.spec.modulus(eps) as i64;
        let blocks: Vec<Vec<i64>> = (0..m.deg())
            .map(|_| (0..inst.spec.d()).map(|_| rng.gen_range(0..modulus)).collect())
            .collect();
        let z = GrPoly::from_int_blocks(&inst.spec, eps, &blocks).unwrap();
        let shift = crate::ring::GrElem::new(&inst.spec, e, &[(inst.spec.p() as i64).pow(e - eps)]).unwrap();
        let lifted = z.lift_canonical(e).unwrap().scale(&shift);
        let low = crate::height::per_pper(&f.project(eps).unwrap(), &m.project(eps).unwrap(), &z, 1 << 22).unwrap();
        let high = crate::height::per_pper(&f.project(e).unwrap(), &m.project(e).unwrap(), &lifted, 1 << 22).unwrap();
        prop_assert_eq!(low, high, "{} eps={} z={}", describe(&inst), eps, z);
    }

    #[test]
    fn field_census_matches_oracle(seed in any::<u64>()) {
        let inst = instance(seed, 1 << 12);
        let f = inst.f.project(1).unwrap();
        let m = inst.m.project(1).unwrap();
        let fa = analyze_field(&inst.f, &inst.m, 1, Execution::Sequential).unwrap();
        let census = fa.census().unwrap();
        if f.deg() >= 1 {
            prop_assert_eq!(&cycle_census_field(&f, &m).unwrap(), &census);
        }
        let q = BigUint::from(inst.spec.q().unwrap());
        prop_assert_eq!(census.covered_vertices(), q.pow(fa.split.m1.deg() as u32));
        let g = build_graph(&f, &m, 1, DEFAULT_CAP).unwrap();
        prop_assert_eq!(census.entries.len(), g.cycles.len(), "{}", describe(&inst));
        for c in &g.cycles {
            prop_assert_eq!(census.count(c.length), BigUint::from(c.count), "{} len={}", describe(&inst), c.length);
        }
    }
}
