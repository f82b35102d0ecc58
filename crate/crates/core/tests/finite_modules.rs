use iwalab::algebra::{norm_element, AlgebraElement, Character};
use iwalab::linalg::integer::{mat_mul, BigMat};
use iwalab::linalg::smith_form;
use iwalab::modules::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn z4_minus() -> FiniteModule {
    FiniteModule::cyclic(2, 1, 2, &[-1]).unwrap()
}

fn big(rows: &[Vec<i64>]) -> BigMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[test]
fn smith_identity_and_sorting() {
    let id = big(&[vec![1, 0], vec![0, 1]]);
    let s = smith_form(&id, 2);
    assert_eq!(s.d, id);
    let s = smith_form(&big(&[vec![4, 0], vec![0, 2]]), 2);
    assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
}

proptest! {
    #[test]
    fn smith_remultiplies(entries in prop::collection::vec(-30i64..30, 16)) {
        let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let a = big(&m);
        let s = smith_form(&a, 4);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &a, 4), &s.v, 4), s.d.clone());
        for i in 0..4 {
            for j in 0..4 {
                if i != j { prop_assert_eq!(&s.d[i][j], &BigInt::from(0)); }
            }
        }
        for w in s.diagonal.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            } else {
                prop_assert_eq!(&w[1], &BigInt::from(0));
            }
        }
    }
}

#[test]
fn act_basics() {
    let m = z4_minus();
    let one = AlgebraElement::from_int_terms(1, &[(1, vec![0])]);
    assert_eq!(m.act(&one, &[3]).unwrap(), vec![3]);
    let triv = FiniteModule::cyclic(2, 1, 2, &[1]).unwrap();
    let gm1 = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]);
    assert_eq!(triv.act(&gm1, &[3]).unwrap(), vec![0]);
    // Nm_{Γ_1/Γ_0} = 1 + γ with γ = -1 kills every element
    let nm = norm_element(2, 1, 1, 0).unwrap();
    for x in 0..4 {
        let by_sum = m.add(&[x], &m.gamma_act(0, &[x]));
        assert_eq!(m.act(&nm, &[x]).unwrap(), by_sum);
        assert_eq!(by_sum, vec![0]);
    }
}

#[test]
fn presentation_normalizes() {
    // Z^2 / ((4,0),(2,2)) ≅ Z/2 ⊕ Z/4
    let rel = vec![vec![BigInt::from(4), BigInt::from(0)], vec![BigInt::from(2), BigInt::from(2)]];
    let id = vec![vec![1, 0], vec![0, 1]];
    let n = FiniteModule::from_presentation(2, 1, 2, &rel, &[id]).unwrap();
    assert_eq!(n.module.exps(), &[1, 2]);
    assert_eq!(n.module.order(), BigInt::from(8));
    let bad = vec![vec![BigInt::from(3), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]];
    assert!(FiniteModule::from_presentation(2, 1, 2, &bad, &[]).is_err());
}

#[test]
fn dual_of_cyclic_trivial() {
    let m = FiniteModule::cyclic(3, 1, 2, &[1]).unwrap();
    let d = dual(&m).unwrap();
    assert_eq!(d, m);
}

#[test]
fn dual_action_is_contragredient_rank2_over_z9() {
    // (Z/9)^2 with γ = [[1,3],[0,1]] (order 3)
    let a = vec![vec![1, 3], vec![0, 1]];
    let m = FiniteModule::new(3, 1, vec![2, 2], vec![a]).unwrap();
    let d = dual(&m).unwrap();
    assert_eq!(d.exps(), m.exps());
    let pairing = PairingMatrix::evaluation(&d, &m).unwrap();
    assert!(pairing.is_perfect());
    assert_eq!(pairing.invariance_defect(), None);
    // explicit check: transpose of the inverse
    let inv = m.invert(m.action(0)).unwrap();
    assert_eq!(d.action(0), &vec![vec![inv[0][0], inv[1][0]], vec![inv[0][1], inv[1][1]]]);
    assert_eq!(dual(&d).unwrap(), m);
}

#[test]
fn eigenspace_examples() {
    let m = z4_minus();
    let minus = Character::new(2, 1, vec![1]);
    let e = eigenspace(&m, &minus).unwrap();
    assert_eq!(e.module.order(), BigInt::from(4));
    let triv = Character::trivial(2, 1, 1);
    let inv = eigenspace(&m, &triv).unwrap();
    assert_eq!(inv.module.order(), BigInt::from(2));
    assert_eq!(invariants(&m, 0).unwrap().module.order(), BigInt::from(2));
    // intersection of the ±1 parts is killed by 2
    let all = m.enumerate(64).unwrap();
    let both: Vec<_> = all.iter().filter(|x| m.gamma_act(0, x) == **x && m.gamma_act(0, x) == m.scale(-1, x)).collect();
    assert!(both.iter().all(|x| m.scale(2, x) == vec![0]));
    assert_eq!(both.len(), 2);
    assert!(eigenspace(&FiniteModule::cyclic(3, 1, 2, &[1]).unwrap(), &Character::new(3, 1, vec![1])).is_err());
}

#[test]
fn extended_eigenspace_over_z9() {
    // Z/9 with γ acting trivially: ψ-part for ψ(γ) = ζ_3 is killed by (ζ_3 - 1)
    let m = FiniteModule::cyclic(3, 1, 2, &[1]).unwrap();
    let e = eigenspace_extended(&m, &Character::new(3, 1, vec![1])).unwrap();
    let mut count = 0;
    for a in 0..9i128 {
        for b in 0..9i128 {
            // x = a + bζ, ζx = aζ + bζ^2 = -b + (a-b)ζ
            let (c0, c1) = ((-b - a).rem_euclid(9), (a - b - b).rem_euclid(9));
            if c0 == 0 && c1 == 0 {
                count += 1;
            }
        }
    }
    assert_eq!(e.module.order(), BigInt::from(count));
}

#[test]
fn invariants_and_coinvariants_have_equal_size() {
    for m in [z4_minus(), FiniteModule::new(3, 1, vec![2, 2], vec![vec![vec![1, 3], vec![0, 1]]]).unwrap()] {
        let i = invariants(&m, 0).unwrap();
        let c = coinvariants(&m, 0).unwrap();
        assert_eq!(i.module.order(), c.module.order());
        let all = m.enumerate(1 << 16).unwrap();
        let fixed = all.iter().filter(|x| m.gamma_act(0, x) == **x).count();
        assert_eq!(i.module.order(), BigInt::from(fixed));
        assert_eq!(invariants(&m, 1).unwrap().module.order(), m.order());
    }
}

#[test]
fn perfect_pairing_examples() {
    let zp = FiniteModule::cyclic(3, 0, 1, &[1]).unwrap();
    assert!(PairingMatrix::new(zp.clone(), zp.clone(), 1, vec![vec![1]]).unwrap().is_perfect());
    assert!(!PairingMatrix::zero(&zp, &zp).is_perfect());
    let m = FiniteModule::new(2, 0, vec![1, 2], vec![vec![vec![1, 0], vec![0, 1]]]).unwrap();
    let diag = PairingMatrix::new(m.clone(), m.clone(), 2, vec![vec![2, 0], vec![0, 1]]).unwrap();
    assert!(diag.is_perfect());
    let dropped = PairingMatrix::new(m.clone(), m.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
    assert!(!dropped.is_perfect());
    assert!(dropped.left_radical_witness().is_some());
}

#[test]
fn exactness_of_dual_orders() {
    let a = vec![vec![1, 3], vec![0, 1]];
    let m = FiniteModule::new(3, 1, vec![2, 2], vec![a]).unwrap();
    let s = submodule(&m, &[vec![3, 0], vec![0, 3]]).unwrap();
    let q = quotient(&m, &[vec![3, 0], vec![0, 3]]).unwrap();
    let (ds, dq, dm) = (dual(&s.module).unwrap(), dual(&q.module).unwrap(), dual(&m).unwrap());
    assert_eq!(ds.order() * dq.order(), dm.order());
}

#[test]
fn pairing_adjunction_with_sharp() {
    let a = vec![vec![1, 3], vec![0, 1]];
    let m = FiniteModule::new(3, 1, vec![2, 2], vec![a]).unwrap();
    let d = dual(&m).unwrap();
    let pairing = PairingMatrix::evaluation(&d, &m).unwrap();
    let lambda = AlgebraElement::from_int_terms(1, &[(2, vec![1]), (-1, vec![0]), (5, vec![2])]);
    for x in d.enumerate(100).unwrap().iter().step_by(7) {
        for y in m.enumerate(100).unwrap().iter().step_by(5) {
            let lhs = pairing.value(&d.act(&lambda, x).unwrap(), y);
            let rhs = pairing.value(x, &m.act(&lambda.sharp(), y).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn action_is_ring_action() {
    let a = vec![vec![1, 3], vec![0, 1]];
    let m = FiniteModule::new(3, 1, vec![2, 2], vec![a]).unwrap();
    let l = AlgebraElement::from_int_terms(1, &[(2, vec![1]), (1, vec![0])]);
    let u = AlgebraElement::from_int_terms(1, &[(1, vec![2]), (-4, vec![-1])]);
    let lu = l.mul(&u).unwrap();
    for x in m.enumerate(100).unwrap() {
        assert_eq!(m.act(&lu, &x).unwrap(), m.act(&l, &m.act(&u, &x).unwrap()).unwrap());
    }
}
