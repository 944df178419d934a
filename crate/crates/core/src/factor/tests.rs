use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::ring::RingSpec;

fn parse(spec: &Arc<RingSpec>, s: &str) -> GrPoly {
    GrPoly::parse(spec, 1, s).unwrap()
}

fn x_pow_minus_one(spec: &Arc<RingSpec>, n: usize) -> GrPoly {
    let one = GrPoly::one(spec, 1);
    &GrPoly::monomial(&one.coeff(0), n) - &one
}

fn coset_count(n: u64, q: u64) -> usize {
    let mut seen = vec![false; n as usize];
    let mut count = 0;
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        count += 1;
        let mut c = s;
        while !seen[c as usize] {
            seen[c as usize] = true;
            c = c * q % n;
        }
    }
    count
}

#[test]
fn x14_minus_1_over_f2() {
    let s = RingSpec::prime(2, 1).unwrap();
    let f = x_pow_minus_one(&s, 14);
    let fac = factor(&f, DEFAULT_SEED).unwrap();
    let got: Vec<(String, u32)> = fac.factors.iter().map(|(g, k)| (g.to_string(), *k)).collect();
    assert_eq!(
        got,
        vec![
            ("x + 1".to_string(), 2),
            ("x^3 + x + 1".to_string(), 2),
            ("x^3 + x^2 + 1".to_string(), 2)
        ]
    );
    assert!(fac.unit.is_one());
    assert_eq!(fac.multiply_back(), f);
    assert_eq!(fac.distinct_count(), 3);
}

#[test]
fn irreducibility_examples() {
    let s = RingSpec::prime(2, 1).unwrap();
    assert!(is_irreducible(&parse(&s, "x^3+x+1")).unwrap());
    assert!(is_irreducible(&parse(&s, "x^4+x+1")).unwrap());
    assert!(!is_irreducible(&parse(&s, "x^4+x^2+1")).unwrap());
    assert!(!is_irreducible(&parse(&s, "x^2+1")).unwrap());
    assert!(is_irreducible(&parse(&s, "x")).unwrap());
    let s3 = RingSpec::prime(3, 1).unwrap();
    assert!(is_irreducible(&parse(&s3, "x^2+1")).unwrap());
    assert!(!is_irreducible(&parse(&s3, "x^2+2")).unwrap());
}

#[test]
fn cyclotomic_factor_counts() {
    for (p, ns) in [(2u64, &[7usize, 15, 21, 31, 63, 255][..]), (3, &[8, 13, 20, 26]), (5, &[12, 31])] {
        let s = RingSpec::prime(p, 1).unwrap();
        for &n in ns {
            let fac = factor(&x_pow_minus_one(&s, n), DEFAULT_SEED).unwrap();
            assert_eq!(fac.factors.len(), coset_count(n as u64, p), "p={p} n={n}");
            assert!(fac.factors.iter().all(|(_, k)| *k == 1));
        }
    }
}

#[test]
fn extension_field_factorization() {
    let s = RingSpec::new(2, 2, 1, Some(&[1, 1, 1])).unwrap();
    // over F_4, x^3 - 1 splits into linear factors
    let fac = factor(&x_pow_minus_one(&s, 3), DEFAULT_SEED).unwrap();
    assert_eq!(fac.factors.len(), 3);
    assert!(fac.factors.iter().all(|(g, _)| g.deg() == 1));
    let fac = factor(&x_pow_minus_one(&s, 5), DEFAULT_SEED).unwrap();
    assert_eq!(fac.factors.len(), coset_count(5, 4));
}

#[test]
fn deterministic_across_seeds_and_modes() {
    let s = RingSpec::prime(3, 1).unwrap();
    let f = x_pow_minus_one(&s, 80);
    let a = factor_with(&f, 1, crate::par::Execution::Sequential).unwrap();
    let b = factor_with(&f, 99, crate::par::Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rejects_bad_input() {
    let s = RingSpec::prime(2, 2).unwrap();
    assert!(factor(&GrPoly::x(&s, 2), 0).is_err());
    let s1 = RingSpec::prime(2, 1).unwrap();
    assert!(factor(&GrPoly::zero(&s1, 1), 0).is_err());
}

#[test]
fn squarefree_parts() {
    let s = RingSpec::prime(2, 1).unwrap();
    let f = x_pow_minus_one(&s, 12);
    let parts = squarefree_decomposition(&f).unwrap();
    let back = parts.iter().fold(GrPoly::one(&s, 1), |acc, (g, k)| {
        (0..*k).fold(acc, |a, _| &a * g)
    });
    assert_eq!(back, f);
    assert!(parts.iter().all(|(_, k)| *k == 4));
}

fn arb_field_poly() -> impl Strategy<Value = GrPoly> {
    let specs = vec![
        RingSpec::prime(2, 1).unwrap(),
        RingSpec::prime(3, 1).unwrap(),
        RingSpec::prime(5, 1).unwrap(),
        RingSpec::new(2, 2, 1, Some(&[1, 1, 1])).unwrap(),
    ];
    proptest::sample::select(specs).prop_flat_map(|s| {
        let m = s.p() as i64;
        let d = s.d();
        proptest::collection::vec(proptest::collection::vec(0..m, d), 2..28).prop_filter_map(
            "nonconstant",
            move |b| {
                let f = GrPoly::from_int_blocks(&s, 1, &b).unwrap();
                (f.degree().unwrap_or(0) >= 1).then_some(f)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn factorization_multiplies_back(f in arb_field_poly(), seed in any::<u64>()) {
        let fac = factor(&f, seed).unwrap();
        prop_assert_eq!(fac.multiply_back(), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(is_irreducible(g).unwrap());
        }
        let (rad, _) = squarefree_and_radical(&fac.multiply_back(), seed).unwrap();
        let prod = fac.factors.iter().fold(GrPoly::one(f.spec(), 1), |a, (g, _)| &a * g);
        prop_assert_eq!(rad, prod);
    }
}

#[test]
fn large_cyclotomic_over_f2() {
    let s = RingSpec::prime(2, 1).unwrap();
    let f = x_pow_minus_one(&s, 4095);
    let fac = factor(&f, DEFAULT_SEED).unwrap();
    assert_eq!(fac.factors.len(), coset_count(4095, 2));
}
