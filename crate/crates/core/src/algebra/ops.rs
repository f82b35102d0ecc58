use super::character::Character;
use super::cyclotomic::Cyclotomic;
use super::element::{AlgebraElement, Coeff, CoeffRing};
use super::unit::UnitCharacter;
use crate::error::{input, precondition, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// f_{γ,ζ} = Φ_{p^l}(γ^v) for ζ of order p^l.
pub fn simple_element(p: u64, gamma: &[i64], l: u32) -> Result<AlgebraElement> {
    let d = gamma.len();
    if d == 0 || gamma.iter().all(|&a| a.rem_euclid(p as i64) == 0) {
        return precondition(format!("{gamma:?} lies in Γ^p"));
    }
    if l == 0 {
        let mut t = vec![0; d];
        let one = AlgebraElement::int_monomial(d, t.clone(), -1);
        t.copy_from_slice(gamma);
        return AlgebraElement::int_monomial(d, t, 1).add(&one);
    }
    let step = (p as i64).pow(l - 1);
    let mut x = AlgebraElement::zero(CoeffRing::Integer, d);
    for k in 0..p as i64 {
        let v: Vec<i64> = gamma.iter().map(|a| a * k * step).collect();
        x = x.add(&AlgebraElement::int_monomial(d, v, 1))?;
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistOutcome {
    pub element: AlgebraElement,
    /// Integer coefficients were reduced mod p^M first.
    pub converted: bool,
}

/// φ*(c·γ^v) = c·φ(γ^v)^{-1}·γ^v, or (1/φ)* when `inverse`.
pub fn twist_endo(phi: &UnitCharacter, x: &AlgebraElement, inverse: bool) -> Result<TwistOutcome> {
    if phi.u.len() != x.rank() {
        return input("character rank differs from element rank");
    }
    let (x, converted) = match x.ring() {
        CoeffRing::Modular { p, m } => {
            if p != phi.p || m != phi.m {
                return input(format!("element is mod {p}^{m}, character mod {}^{}", phi.p, phi.m));
            }
            (x.clone(), false)
        }
        CoeffRing::Integer => (x.to_modular(phi.p, phi.m)?, true),
        CoeffRing::Cyclotomic { .. } => return input("twists act on mod p^M coefficients"),
    };
    let psi = if inverse { phi.clone() } else { phi.inverse() };
    let ring = x.ring();
    let element = x.map_coeffs(ring, |v, c| {
        let k = psi.value(v);
        Coeff::Int(c.as_int().expect("modular coefficient") * BigInt::from(k))
    });
    Ok(TwistOutcome { element, converted })
}

/// Nm_{Γ_n/Γ_m} = Σ_{σ ∈ Ker(Γ_n → Γ_m)} σ.
pub fn norm_element(p: u64, d: usize, n: u32, m: u32) -> Result<AlgebraElement> {
    if n < m {
        return input(format!("norm from level {n} to level {m} needs n ≥ m"));
    }
    let step = (p as i64).pow(m);
    let mut x = AlgebraElement::zero(CoeffRing::Integer, d);
    for j in super::group_elements(p, n - m, d) {
        let v: Vec<i64> = j.iter().map(|a| a * step).collect();
        x = x.add(&AlgebraElement::int_monomial(d, v, 1))?;
    }
    Ok(x)
}

/// e_ω = |Γ_n|^{-1} Σ_γ ω(γ^{-1}) γ, with coefficients in Q(ζ_{p^n}).
pub fn idempotent(omega: &Character) -> AlgebraElement {
    let (p, n, d) = (omega.p, omega.n, omega.d());
    let ring = CoeffRing::Cyclotomic { p, l: n };
    let size = BigInt::from(p).pow(n * d as u32);
    let inv = BigRational::new(BigInt::one(), size);
    let terms = super::group_elements(p, n, d)
        .into_iter()
        .map(|v| {
            let e = omega.exponent_on(&v);
            let z = Cyclotomic::zeta_pow(p, n, -e).scale(&inv);
            (v, Coeff::Cyc(z))
        })
        .collect();
    AlgebraElement::from_terms(ring, d, terms).expect("terms carry the element's ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_characters;

    #[test]
    fn simple_small() {
        assert_eq!(
            simple_element(3, &[1], 1).unwrap(),
            AlgebraElement::from_int_terms(1, &[(1, vec![2]), (1, vec![1]), (1, vec![0])])
        );
        assert_eq!(
            simple_element(2, &[1], 1).unwrap(),
            AlgebraElement::from_int_terms(1, &[(1, vec![1]), (1, vec![0])])
        );
        assert!(simple_element(3, &[3, 6], 1).is_err());
    }

    #[test]
    fn norm_projection() {
        let nm = norm_element(2, 1, 1, 0).unwrap();
        assert_eq!(nm, AlgebraElement::from_int_terms(1, &[(1, vec![1]), (1, vec![0])]));
        let nm = norm_element(3, 2, 2, 1).unwrap().reduce_level(3, 1);
        assert_eq!(nm, AlgebraElement::from_int_terms(2, &[(9, vec![0, 0])]));
        assert!(norm_element(3, 1, 0, 1).is_err());
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        let (p, n) = (3, 1);
        let chars = all_characters(p, n, 1);
        let ring = CoeffRing::Cyclotomic { p, l: n };
        let mut sum = AlgebraElement::zero(ring, 1);
        for w in &chars {
            let e = idempotent(w);
            assert_eq!(e.mul_level(&e, p, n).unwrap(), e);
            sum = sum.add(&e).unwrap();
        }
        assert_eq!(sum, AlgebraElement::one(ring, 1));
        let e2 = idempotent(&Character::new(2, 1, vec![1]));
        assert_eq!(e2.mul_level(&e2, 2, 1).unwrap(), e2);
    }

    #[test]
    fn twist_of_gamma_minus_one() {
        let phi = UnitCharacter::new(3, 4, &[4]).unwrap();
        let x = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]);
        let t = twist_endo(&phi, &x, false).unwrap();
        assert!(t.converted);
        let inv4 = crate::arith::inv_mod(4, 81).unwrap() as i64;
        let expect = AlgebraElement::from_int_terms(1, &[(inv4, vec![1]), (-1, vec![0])]).to_modular(3, 4).unwrap();
        assert_eq!(t.element, expect);
        let back = twist_endo(&phi, &t.element, true).unwrap();
        assert_eq!(back.element, x.to_modular(3, 4).unwrap());
    }
}
