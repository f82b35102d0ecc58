use iwalab::algebra::{simple_element, AlgebraElement, UnitCharacter};
use iwalab::flats::{zero_set_level, DEFAULT_BUDGET};
use iwalab::ideals::*;
use proptest::prelude::*;

fn el(d: usize, t: &[(i64, Vec<i64>)]) -> AlgebraElement {
    AlgebraElement::from_int_terms(d, t)
}

fn gm1(d: usize, i: usize) -> AlgebraElement {
    let mut v = vec![0; d];
    v[i] = 1;
    el(d, &[(1, v), (-1, vec![0; d])])
}

fn lin(c: i64) -> AlgebraElement {
    el(1, &[(1, vec![1]), (-c, vec![0])])
}

#[test]
fn chi_examples() {
    assert!(chi(&ElementaryModule::zero(3, 1)).is_unit_ideal());
    let p = el(1, &[(3, vec![0])]);
    let m = ElementaryModule::new(3, 1, vec![(p.clone(), 2)]).unwrap();
    assert_eq!(chi(&m).generator().unwrap(), el(1, &[(9, vec![0])]));
    let m2 = ElementaryModule::new(3, 1, vec![(gm1(1, 0), 1), (p.clone(), 1)]).unwrap();
    assert_eq!(chi(&m2).factors.len(), 2);
    assert_eq!(chi(&m2).generator().unwrap(), gm1(1, 0).scale_int(&3.into()));
    assert_eq!(chi(&m.direct_sum(&m2).unwrap()), chi(&m).mul(&chi(&m2)));
    assert!(ElementaryModule::new(3, 1, vec![(p, 0)]).is_err());
}

#[test]
fn sharp_fixes_simple_ideals() {
    for p in [2u64, 3] {
        for l in 0..=2 {
            for v in [vec![1, 0], vec![1, 2], vec![-1, 1], vec![2, 3]] {
                let Ok(f) = simple_element(p, &v, l) else { continue };
                let i = IdealDescriptor::principal(f.clone());
                assert_eq!(ideals_equal(&sharp_ideal(&i), &i, p, 81).unwrap(), IdealEquality::Equal);
                assert_eq!(sharp_ideal(&sharp_ideal(&i)), i);
                let vi: Vec<i64> = v.iter().map(|x| -x).collect();
                let g = simple_element(p, &vi, l).unwrap();
                assert!(!coprime_simple(&simple_descriptor(&f, p).unwrap(), &simple_descriptor(&g, p).unwrap()));
            }
        }
    }
}

#[test]
fn twist_examples() {
    let i = IdealDescriptor::principal(lin(1));
    let triv = UnitCharacter::trivial(3, 6, 1);
    let t = twist_ideal(&i, &triv).unwrap();
    assert_eq!(t.factors[0].0, lin(1).to_modular(3, 6).unwrap());
    let phi = UnitCharacter::new(3, 6, &[4]).unwrap();
    let t = twist_ideal(&i, &phi).unwrap();
    let target = IdealDescriptor::principal(lin(4).to_modular(3, 6).unwrap());
    assert_eq!(ideals_equal(&t, &target, 3, 81).unwrap(), IdealEquality::Equal);
    let back = twist_ideal(&t, &phi.inverse()).unwrap();
    assert_eq!(back, IdealDescriptor::principal(lin(1).to_modular(3, 6).unwrap()));
}

#[test]
fn inequality_from_zero_sets() {
    let a = IdealDescriptor::principal(gm1(2, 0));
    let b = IdealDescriptor::principal(gm1(2, 1));
    assert_eq!(ideals_equal(&a, &b, 3, 81).unwrap(), IdealEquality::NotEqual);
    // γ+1 is a unit for odd p: equal ideals that differ by a non-monomial unit
    let c = IdealDescriptor::principal(el(1, &[(1, vec![2]), (-1, vec![0])]));
    let d = IdealDescriptor::principal(lin(1));
    assert_eq!(ideals_equal(&c, &d, 3, 81).unwrap(), IdealEquality::Unknown);
}

#[test]
fn split_simple_examples() {
    let m = ElementaryModule::new(
        3,
        1,
        vec![(lin(1), 1), (el(1, &[(3, vec![0])]), 1), (el(1, &[(1, vec![2]), (1, vec![1]), (1, vec![0])]), 2), (lin(4), 1)],
    )
    .unwrap();
    let s = split_simple(&m);
    assert_eq!(s.first.factors.len(), 2);
    assert_eq!(s.second.factors.len(), 2);
    assert!(s.warnings.is_empty());
    assert_eq!(s.verdicts[2], FactorVerdict::Simple(SimpleDescriptor { direction: vec![1], l: 1 }));
    assert_eq!(chi(&s.first).factors.len(), 2);
    let si = chi(&s.first);
    assert_eq!(ideals_equal(&sharp_ideal(&si), &si, 3, 81).unwrap(), IdealEquality::Equal);

    // (γ−1)(γ−4) is divisible by a simple element but not simple itself
    let r = ElementaryModule::new(3, 1, vec![(lin(1).mul(&lin(4)).unwrap(), 1)]).unwrap();
    let s = split_simple(&r);
    assert!(s.first.is_zero_module());
    assert_eq!(s.warnings.len(), 1);
    assert!(matches!(s.verdicts[0], FactorVerdict::Unknown(_)));
}

#[test]
fn split_p_examples() {
    let e = split_p(&ElementaryModule::zero(3, 1));
    assert!(e.first.is_zero_module() && e.second.is_zero_module());
    let m = ElementaryModule::new(3, 1, vec![(el(1, &[(3, vec![0])]), 3), (lin(4), 1)]).unwrap();
    let s = split_p(&m);
    assert_eq!(s.first.factors.len(), 1);
    assert_eq!(s.first.factors[0].r, 3);
    assert_eq!(s.second.factors[0].xi, lin(4));
    let pp = chi(&s.first);
    assert_eq!(ideals_equal(&sharp_ideal(&pp), &pp, 3, 81).unwrap(), IdealEquality::Equal);
}

#[test]
fn coprime_simple_examples() {
    let d = |v: &[i64], l| SimpleDescriptor::new(3, v, l).unwrap();
    assert!(!coprime_simple(&d(&[1], 1), &d(&[-1], 1)));
    assert!(coprime_simple(&d(&[1, 0], 0), &d(&[0, 1], 0)));
    assert!(coprime_simple(&d(&[1], 1), &d(&[1], 2)));
    assert!(!coprime_simple(&d(&[2], 1), &d(&[1], 1)));
    assert!(SimpleDescriptor::new(3, &[3, 6], 0).is_none());
}

#[test]
fn pseudo_null_examples() {
    fn c(x: &[AlgebraElement]) -> PseudoNullVerdict {
        pseudo_null_certificate(x, 3).unwrap()
    }
    assert!(matches!(c(&[gm1(2, 0), gm1(2, 1)]), PseudoNullVerdict::Certified { reason: Coprimality::DistinctSimple, .. }));
    let p = el(1, &[(3, vec![0])]);
    assert!(matches!(c(&[p.clone(), lin(4)]), PseudoNullVerdict::Certified { reason: Coprimality::PAgainstUnitCoefficient, .. }));
    assert_eq!(c(&[p.clone(), el(1, &[(9, vec![0])])]), PseudoNullVerdict::Unknown);
    // Res((γ−2)(γ−7), γ−3) = −4, a unit at 3
    let a = lin(2).mul(&lin(7)).unwrap();
    assert!(matches!(c(&[a, lin(3)]), PseudoNullVerdict::Certified { reason: Coprimality::UnitResultant, .. }));
    assert_eq!(c(&[lin(4), lin(7)]), PseudoNullVerdict::Unknown);
    assert!(pseudo_null_certificate(&[p], 3).is_err());
}

#[test]
fn size_oracle_examples() {
    let m = ElementaryModule::new(3, 1, vec![(lin(4), 1)]).unwrap();
    for n in 0..=4 {
        assert_eq!(finite_level_size(&m, n, DEFAULT_BUDGET).unwrap().exponent, n as u64 + 1);
    }
    let m2 = ElementaryModule::new(3, 1, vec![(lin(4), 2)]).unwrap();
    assert_eq!(finite_level_size(&m2, 1, DEFAULT_BUDGET).unwrap().exponent, 4);
    for p in [2u64, 3] {
        let mp = ElementaryModule::new(p, 1, vec![(el(1, &[(p as i64, vec![0])]), 1)]).unwrap();
        for n in 0..=3 {
            assert_eq!(finite_level_size(&mp, n, DEFAULT_BUDGET).unwrap().exponent, p.pow(n));
        }
    }
    let bad = ElementaryModule::new(3, 1, vec![(lin(1), 1)]).unwrap();
    assert!(matches!(finite_level_size(&bad, 1, DEFAULT_BUDGET), Err(iwalab::Error::Precondition(_))));
}

#[test]
fn growth_examples() {
    let g = growth_profile(&lin(4), 3, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.ranks, vec![0, 0, 0, 0]);
    let phi3 = el(1, &[(1, vec![2]), (1, vec![1]), (1, vec![0])]);
    let g = growth_profile(&phi3, 3, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.ranks, vec![0, 2, 2, 2]);
    let g = growth_profile(&gm1(2, 0), 3, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.ranks, vec![1, 3, 9]);
    assert!(g.within_bound);
}

fn small_element(d: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i64..=2, d)), 1..4)
        .prop_map(move |t| AlgebraElement::from_int_terms(d, &t))
        .prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn growth_rank_counts_character_zeros(x in small_element(2)) {
        let g = growth_profile(&x, 2, 2, DEFAULT_BUDGET).unwrap();
        for (n, r) in g.ranks.iter().enumerate() {
            let z = zero_set_level(&x, 2, n as u32, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(*r as usize, z.len());
        }
    }

    #[test]
    fn d1_growth_is_eventually_constant(x in small_element(1)) {
        let g = growth_profile(&x, 3, 4, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(g.ranks[3], g.ranks[4]);
    }

    #[test]
    fn twist_round_trip(x in small_element(2), a in 0i128..20, b in 0i128..20) {
        let phi = UnitCharacter::new(3, 5, &[1 + 3 * a, 1 + 3 * b]).unwrap();
        let i = IdealDescriptor::principal(x.clone());
        let back = twist_ideal(&twist_ideal(&i, &phi).unwrap(), &phi.inverse()).unwrap();
        prop_assert_eq!(back.factors[0].0.clone(), x.to_modular(3, 5).unwrap());
    }

    #[test]
    fn sharp_is_involutive(x in small_element(2), r in 1u32..3) {
        let m = ElementaryModule::new(3, 2, vec![(x, r)]).unwrap();
        let i = chi(&m);
        prop_assert_eq!(sharp_ideal(&sharp_ideal(&i)), i);
    }
}
