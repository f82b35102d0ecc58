use iwalab::algebra::{AlgebraElement, Character};
use iwalab::flats::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn el(d: usize, t: &[(i64, Vec<i64>)]) -> AlgebraElement {
    AlgebraElement::from_int_terms(d, t)
}

fn valuation_example(p: i64) -> AlgebraElement {
    // (γ₁−1) + p(γ₂−1) + p²(γ₁−1)(γ₂−1)
    let g1 = el(2, &[(1, vec![1, 0]), (-1, vec![0, 0])]);
    let g2 = el(2, &[(1, vec![0, 1]), (-1, vec![0, 0])]);
    let a = g2.scale_int(&BigInt::from(p));
    let b = g1.mul(&g2).unwrap().scale_int(&BigInt::from(p * p));
    g1.add(&a).unwrap().add(&b).unwrap()
}

#[test]
fn valuation_example_vanishes_only_at_trivial() {
    let xi = valuation_example(3);
    for n in 1..=2 {
        let z = zero_set_level(&xi, 3, n, DEFAULT_BUDGET).unwrap();
        assert_eq!(z, vec![Character::trivial(3, n, 2)]);
        let (v, rep) = ns_hypothesis_level(&xi, 3, n, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, NsVerdict::Holds);
        assert_eq!(rep.cover.len(), 1);
        assert_eq!(rep.cover[0].codim(), 2);
    }
}

#[test]
fn budget_is_enforced() {
    let xi = valuation_example(3);
    match zero_set_level(&xi, 3, 4, DEFAULT_BUDGET) {
        Err(iwalab::Error::Budget { required, budget }) => {
            assert_eq!(required, 3u128.pow(8));
            assert_eq!(budget, 729);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn unit_has_no_zeros() {
    let one = el(2, &[(1, vec![0, 0])]);
    assert!(zero_set_level(&one, 3, 2, DEFAULT_BUDGET).unwrap().is_empty());
}

#[test]
fn codim_one_flat_of_gamma1_minus_one() {
    let xi = el(2, &[(1, vec![1, 0]), (-1, vec![0, 0])]);
    for n in 1..=2 {
        let z = zero_set_level(&xi, 3, n, DEFAULT_BUDGET).unwrap();
        assert_eq!(z.len(), 3usize.pow(n));
        assert!(z.iter().all(|w| w.c[0] == 0));
        let rep = detect_flats(&z, 3, n, 2);
        assert!(rep.residual.is_empty() && rep.exact);
        assert_eq!(rep.cover.len(), 1);
        assert_eq!(rep.cover[0].basis, vec![vec![1, 0]]);
        assert_eq!(rep.cover[0].target, vec![0]);
        let (v, _) = ns_hypothesis_level(&xi, 3, n, DEFAULT_BUDGET).unwrap();
        assert!(matches!(v, NsVerdict::ViolatedAtLevel(f) if f.codim() == 1));
    }
}

#[test]
fn product_of_two_lines_gives_two_flats() {
    let a = el(2, &[(1, vec![1, 0]), (-1, vec![0, 0])]);
    let b = el(2, &[(1, vec![0, 1]), (-1, vec![0, 0])]);
    let z = zero_set_level(&a.mul(&b).unwrap(), 2, 2, DEFAULT_BUDGET).unwrap();
    let rep = detect_flats(&z, 2, 2, 2);
    assert_eq!(rep.cover.len(), 2);
    assert!(rep.cover.iter().all(|f| f.codim() == 1 && f.is_well_shaped()));
    assert!(rep.residual.is_empty());
}

#[test]
fn d1_verdicts() {
    let xi = el(1, &[(1, vec![1]), (-4, vec![0])]);
    for n in 0..=4 {
        let (v, rep) = ns_hypothesis_level(&xi, 3, n, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, NsVerdict::Holds);
        assert!(rep.zeros.is_empty());
    }
    let phi3 = el(1, &[(1, vec![2]), (1, vec![1]), (1, vec![0])]);
    let prod = phi3.mul(&xi).unwrap();
    let (v, rep) = ns_hypothesis_level(&prod, 3, 2, DEFAULT_BUDGET).unwrap();
    assert!(matches!(v, NsVerdict::ViolatedAtLevel(_)));
    let exps: Vec<u64> = rep.zeros.iter().map(|w| w.c[0]).collect();
    assert_eq!(exps, vec![3, 6]);
}

#[test]
fn phi_pair_examples() {
    let point = FlatLevel { p: 3, level: 1, basis: vec![vec![1, 0], vec![0, 1]], target: vec![0, 0] };
    let pair = construct_phi_pair(&[point], 2).unwrap();
    assert_eq!(pair.phi1, el(2, &[(1, vec![1, 0]), (-1, vec![0, 0])]));
    assert_eq!(pair.phi2, el(2, &[(1, vec![0, 1]), (-1, vec![0, 0])]));

    let empty = construct_phi_pair(&[], 3).unwrap();
    assert_eq!(empty.phi1, AlgebraElement::one(iwalab::algebra::CoeffRing::Integer, 3));

    let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let f1 = FlatLevel { p: 3, level: 1, basis: id3.clone(), target: vec![0, 0, 0] };
    let f2 = FlatLevel { p: 3, level: 1, basis: id3, target: vec![1, 2, 0] };
    let pair = construct_phi_pair(&[f1.clone(), f2.clone()], 3).unwrap();
    let dirs: Vec<&Vec<i64>> = pair.choices1.iter().chain(&pair.choices2).map(|c| &c.direction).collect();
    assert_eq!(dirs.len(), 4);
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b) = (dirs[i], dirs[j]);
            let dep = (0..3).all(|r| (0..3).all(|s| a[r] * b[s] == a[s] * b[r]));
            assert!(!dep, "{a:?} ∥ {b:?}");
        }
    }
    for f in [&f1, &f2] {
        for w in f.members(3) {
            assert!(w.evaluate(&pair.phi1).unwrap().is_zero().unwrap());
            assert!(w.evaluate(&pair.phi2).unwrap().is_zero().unwrap());
        }
    }
}

#[test]
fn phi_pair_rejects_codim_one() {
    let f = FlatLevel { p: 3, level: 1, basis: vec![vec![1, 0]], target: vec![0] };
    assert!(matches!(construct_phi_pair(&[f], 2), Err(iwalab::Error::Precondition(_))));
}

#[test]
fn nonsimple_twist_clears_zero_sets() {
    // (γ−1)(γ−1−p), p = 3
    let xi = el(1, &[(1, vec![1]), (-1, vec![0])]).mul(&el(1, &[(1, vec![1]), (-4, vec![0])])).unwrap();
    let phi = find_nonsimple_twist(&xi, 3, 1, 9, 1000).unwrap();
    // 4 is excluded: (φ^{-1})*(ξ) would vanish at the trivial character
    assert_eq!(phi.u, vec![7]);
    let u: Vec<BigInt> = phi.u.iter().map(|&x| BigInt::from(x)).collect();
    for inverse in [false, true] {
        let tw = integral_twist(&xi, &u, inverse).unwrap();
        for n in 0..=2 {
            assert!(zero_set_level(&tw, 3, n, DEFAULT_BUDGET).unwrap().is_empty());
        }
    }
    let bad = integral_twist(&xi, &[BigInt::from(4)], true).unwrap();
    assert!(!zero_set_level(&bad, 3, 0, DEFAULT_BUDGET).unwrap().is_empty());
}

#[test]
fn twist_search_trivial_and_unknown() {
    let c = el(2, &[(5, vec![1, 2])]);
    assert!(find_nonsimple_twist(&c, 3, 1, 9, 10).unwrap().is_trivial());
    let off = el(2, &[(1, vec![1, 0]), (1, vec![0, 1]), (1, vec![0, 0])]);
    assert!(matches!(find_nonsimple_twist(&off, 3, 1, 9, 10), Err(iwalab::Error::Precondition(_))));
    let g = el(2, &[(1, vec![1, 1]), (-1, vec![0, 0])]);
    let phi = find_nonsimple_twist(&g, 2, 2, 8, 100).unwrap();
    assert!(phi.u.iter().all(|u| (u - 1) % 4 == 0));
}

fn small_element(d: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i64..=2, d)), 1..4)
        .prop_map(move |t| AlgebraElement::from_int_terms(d, &t))
        .prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zero_sets_of_products_are_unions(a in small_element(2), b in small_element(2)) {
        let n = 1;
        let za: BTreeSet<_> = zero_set_level(&a, 3, n, DEFAULT_BUDGET).unwrap().into_iter().collect();
        let zb: BTreeSet<_> = zero_set_level(&b, 3, n, DEFAULT_BUDGET).unwrap().into_iter().collect();
        let zab: BTreeSet<_> = zero_set_level(&a.mul(&b).unwrap(), 3, n, DEFAULT_BUDGET).unwrap().into_iter().collect();
        prop_assert_eq!(zab, za.union(&zb).cloned().collect::<BTreeSet<_>>());
    }

    #[test]
    fn sharp_inverts_zero_sets(a in small_element(2)) {
        let z: BTreeSet<_> = zero_set_level(&a, 2, 2, DEFAULT_BUDGET).unwrap().into_iter().map(|w| w.inverse()).collect();
        let zs: BTreeSet<_> = zero_set_level(&a.sharp(), 2, 2, DEFAULT_BUDGET).unwrap().into_iter().collect();
        prop_assert_eq!(z, zs);
    }

    #[test]
    fn cover_is_exact_and_well_shaped(a in small_element(2)) {
        let z = zero_set_level(&a, 3, 1, DEFAULT_BUDGET).unwrap();
        let rep = detect_flats(&z, 3, 1, 2);
        prop_assert!(rep.exact);
        let zs: BTreeSet<_> = z.iter().cloned().collect();
        let mut covered = BTreeSet::new();
        for f in &rep.cover {
            prop_assert!(f.is_well_shaped());
            for w in f.members(2) {
                prop_assert!(zs.contains(&w));
                covered.insert(w);
            }
        }
        prop_assert_eq!(covered, zs);
    }

    #[test]
    fn d1_zero_sets_are_galois_stable(a in small_element(1)) {
        let z: BTreeSet<_> = zero_set_level(&a, 3, 3, DEFAULT_BUDGET).unwrap().into_iter().collect();
        for w in &z {
            for s in w.galois_orbit() {
                prop_assert!(z.contains(&s));
            }
        }
    }
}
