use std::sync::Arc;

use super::*;
use crate::ring::RingSpec;

fn parse(spec: &Arc<RingSpec>, eps: u32, s: &str) -> GrPoly {
    GrPoly::parse(spec, eps, s).unwrap()
}

#[test]
fn eight_state_graph() {
    let s = RingSpec::prime(2, 1).unwrap();
    let (f, m) = (GrPoly::x(&s, 1), parse(&s, 1, "x^3+x+1"));
    let g = build_functional_graph(&f, &m, 1, DEFAULT_CAP, Execution::Sequential).unwrap();
    assert_eq!(g.state_count(), 8);
    let sum = g.summarize();
    assert_eq!(sum.cycles, vec![CycleCount { length: 1, count: 1 }, CycleCount { length: 7, count: 1 }]);
    assert_eq!(sum.max_height, 0);
    let dot = export_dot(&g).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 8);
    assert_eq!(dot.matches("[label=").count(), 8);
    assert!(dot.contains("n0 -> n0;"));
    assert!(dot.contains("n0 [label=\"0\"];"));
    assert_eq!(export_dot(&g).unwrap(), dot);
}

#[test]
fn x14_field_graph() {
    let s = RingSpec::prime(2, 1).unwrap();
    let (f, m) = (parse(&s, 1, "x^13+x"), parse(&s, 1, "x^14-1"));
    let sum = build_graph(&f, &m, 1, DEFAULT_CAP).unwrap();
    assert_eq!(sum.state_count, 1 << 14);
    assert_eq!(sum.cycle_set().lengths(), vec![1, 7, 14]);
    assert_eq!(sum.max_height, 1);
    let sizes: u64 = sum.components.iter().map(|c| c.size).sum();
    assert_eq!(sizes, sum.state_count);
}

#[test]
fn nilpotent_system_funnels_to_zero() {
    let s = RingSpec::prime(3, 2).unwrap();
    let (f, m) = (parse(&s, 2, "x+3x^2"), parse(&s, 2, "x^3"));
    let sum = build_graph(&f, &m, 2, DEFAULT_CAP).unwrap();
    assert_eq!(sum.components.len(), 1);
    assert_eq!(sum.cycle_set().lengths(), vec![1]);
    assert_eq!(sum.components[0].size, sum.state_count);
    assert_eq!(sum.max_height, 3);
}

#[test]
fn sequential_and_parallel_agree() {
    let s = RingSpec::new(2, 2, 2, Some(&[1, 1, 1])).unwrap();
    let (f, m) = (parse(&s, 2, "[t]x^2+x+[3]"), parse(&s, 2, "x^4+[t+1]x+[2t+1]"));
    let a = build_functional_graph(&f, &m, 2, DEFAULT_CAP, Execution::Sequential).unwrap();
    let b = build_functional_graph(&f, &m, 2, DEFAULT_CAP, Execution::Parallel).unwrap();
    assert_eq!(a.successors(), b.successors());
    for i in [0usize, 1, 77, 4095, 65535] {
        let g = a.state_poly(i);
        assert_eq!(a.index_of(&g).unwrap(), i);
        let next = (&g * &f).rem(&m).unwrap();
        assert_eq!(a.index_of(&next).unwrap(), a.successor(i));
    }
}

#[test]
fn cap_and_dot_guards() {
    let s = RingSpec::prime(2, 1).unwrap();
    let (f, m) = (parse(&s, 1, "x^13+x"), parse(&s, 1, "x^14-1"));
    assert!(matches!(build_graph(&f, &m, 1, 1 << 10), Err(crate::Error::Resource(_))));
    let g = build_functional_graph(&f, &m, 1, DEFAULT_CAP, Execution::Parallel).unwrap();
    assert!(matches!(export_dot(&g), Err(crate::Error::Resource(_))));
    assert!(export_summary_dot(&g.summarize()).contains("C14"));
}

#[test]
fn x14_orbit_periods() {
    let s = RingSpec::prime(2, 3).unwrap();
    let f = parse(&s, 3, "x^13+x");
    let m = parse(&s, 3, "x^14-1");
    let g1 = parse(&s, 1, "x^3+x+1");
    let mbar = m.project(1).unwrap();
    let hat = mbar.div_exact(&g1).unwrap();
    let t1 = orbit_trace(&f, &m, 1, &hat, 1000).unwrap();
    assert_eq!((t1.preperiod, t1.period), (0, 7));
    assert_eq!(t1.states[1], parse(&s, 1, "x^13+x^12+x^9+x^7+x^6+x^5+x^2+1"));
    let hat2 = mbar.div_exact(&(&g1 * &g1)).unwrap();
    let t2 = orbit_trace(&f, &m, 2, &hat2.lift_canonical(2).unwrap().mod_pow_u128(2, &m.project(2).unwrap()).unwrap(), 1000).unwrap();
    assert_eq!((t2.preperiod, t2.period), (0, 14));
    let w3 = hat2.lift_canonical(3).unwrap().mod_pow_u128(4, &m).unwrap();
    let t3 = orbit_trace(&f, &m, 3, &w3, 1000).unwrap();
    assert_eq!((t3.preperiod, t3.period), (0, 28));
    assert!(orbit_trace(&f, &m, 3, &w3, 10).is_err());
}
