//! Elementary torsion modules ⊕ Λ/(ξ_i^{r_i}), their characteristic ideals,
//! and the transforms and decompositions acting on them factor by factor.

mod simple;
mod size;

pub use simple::{
    classify_factor, coprime_simple, pseudo_null_certificate, simple_descriptor, split_p, split_simple, Coprimality,
    FactorVerdict, PseudoNullVerdict, SimpleDescriptor, SplitReport,
};
pub use size::{finite_level_size, growth_profile, multiplication_matrix, GrowthProfile, SizeReport};

use crate::algebra::{twist_endo, AlgebraElement, Coeff, CoeffRing, UnitCharacter};
use crate::error::{input, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub xi: AlgebraElement,
    pub r: u32,
}

/// [M] = ⊕ Λ/(ξ_i^{r_i}); factors are formal, irreducibility is not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryModule {
    pub p: u64,
    pub d: usize,
    pub factors: Vec<Factor>,
}

impl ElementaryModule {
    pub fn new(p: u64, d: usize, factors: Vec<(AlgebraElement, u32)>) -> Result<Self> {
        crate::arith::check_prime(p)?;
        for (i, (xi, r)) in factors.iter().enumerate() {
            if xi.is_zero() {
                return input(format!("factors[{i}].xi is zero"));
            }
            if *r == 0 {
                return input(format!("factors[{i}].r must be at least 1"));
            }
            if xi.rank() != d {
                return input(format!("factors[{i}].xi has rank {}, expected {d}", xi.rank()));
            }
        }
        Ok(ElementaryModule { p, d, factors: factors.into_iter().map(|(xi, r)| Factor { xi, r }).collect() })
    }

    pub fn zero(p: u64, d: usize) -> Self {
        ElementaryModule { p, d, factors: Vec::new() }
    }

    pub fn is_zero_module(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.d != other.d {
            return input("direct sum of modules over different Λ");
        }
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Ok(ElementaryModule { p: self.p, d: self.d, factors: f })
    }

    fn with_factors(&self, factors: Vec<Factor>) -> Self {
        ElementaryModule { p: self.p, d: self.d, factors }
    }
}

/// ∏ (ξ_i)^{r_i}; the empty product is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDescriptor {
    pub d: usize,
    pub factors: Vec<(AlgebraElement, u32)>,
}

impl IdealDescriptor {
    pub fn unit(d: usize) -> Self {
        IdealDescriptor { d, factors: Vec::new() }
    }

    pub fn principal(xi: AlgebraElement) -> Self {
        IdealDescriptor { d: xi.rank(), factors: vec![(xi, 1)] }
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        IdealDescriptor { d: self.d, factors: f }
    }

    /// The expanded generator; needs all factors over a common coefficient ring.
    pub fn generator(&self) -> Result<AlgebraElement> {
        let ring = self.factors.first().map_or(CoeffRing::Integer, |(x, _)| x.ring());
        let mut g = AlgebraElement::one(ring, self.d);
        for (x, r) in &self.factors {
            g = g.mul(&x.pow(*r))?;
        }
        Ok(g)
    }
}

pub fn chi(m: &ElementaryModule) -> IdealDescriptor {
    IdealDescriptor { d: m.d, factors: m.factors.iter().map(|f| (f.xi.clone(), f.r)).collect() }
}

pub fn sharp_ideal(i: &IdealDescriptor) -> IdealDescriptor {
    IdealDescriptor { d: i.d, factors: i.factors.iter().map(|(x, r)| (x.sharp(), *r)).collect() }
}

/// φ* applied to every factor; integer coefficients are reduced mod p^M.
pub fn twist_ideal(i: &IdealDescriptor, phi: &UnitCharacter) -> Result<IdealDescriptor> {
    let factors = i
        .factors
        .iter()
        .map(|(x, r)| Ok((twist_endo(phi, x, false)?.element, *r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealDescriptor { d: i.d, factors })
}

/// `a = c·γ^w·b` with c a unit of Z_p (or of Z/p^m): returns (c, w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitScalar {
    Rational(BigRational),
    Residue(BigInt),
}

pub fn unit_monomial_multiple(a: &AlgebraElement, b: &AlgebraElement, p: u64) -> Option<(UnitScalar, Vec<i64>)> {
    if a.ring() != b.ring() || a.rank() != b.rank() || a.num_terms() != b.num_terms() || a.is_zero() {
        return None;
    }
    let sa = a.support();
    let sb = b.support();
    let w: Vec<i64> = sa[0].iter().zip(&sb[0]).map(|(x, y)| x - y).collect();
    let shifted = b.shift(&w);
    match a.ring() {
        CoeffRing::Integer => {
            let ca = a.coeff(&sa[0])?.as_int()?;
            let cb = b.coeff(&sb[0])?.as_int()?;
            let c = BigRational::new(ca.clone(), cb.clone());
            if crate::arith::val_big(c.numer(), p)? != 0 || crate::arith::val_big(c.denom(), p)? != 0 {
                return None;
            }
            let lhs = a.scale_int(c.denom());
            let rhs = shifted.scale_int(c.numer());
            (lhs == rhs).then_some((UnitScalar::Rational(c), w))
        }
        CoeffRing::Modular { .. } => {
            let q = a.ring().modulus()?;
            let (vb, cb) = b.terms().find(|(_, c)| c.as_int().is_some_and(|x| !x.is_multiple_of(&BigInt::from(p))))?;
            let va: Vec<i64> = vb.iter().zip(&w).map(|(x, y)| x + y).collect();
            let ca = a.coeff(&va)?.as_int()?;
            let inv = mod_inverse(cb.as_int()?, &q)?;
            let c = (ca * inv).mod_floor(&q);
            if c.is_multiple_of(&BigInt::from(p)) {
                return None;
            }
            (shifted.scale(&Coeff::Int(c.clone())).ok()? == *a).then_some((UnitScalar::Residue(c), w))
        }
        CoeffRing::Cyclotomic { .. } => None,
    }
}

fn mod_inverse(a: &BigInt, q: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(q);
    e.gcd.is_one().then(|| e.x.mod_floor(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdealEquality {
    Equal,
    NotEqual,
    Unknown,
}

/// Equal when the generators differ by a unit monomial; not equal when the
/// character zero sets differ at a level within `budget`; otherwise unknown.
pub fn ideals_equal(a: &IdealDescriptor, b: &IdealDescriptor, p: u64, budget: u128) -> Result<IdealEquality> {
    let ga = a.generator()?;
    let gb = b.generator()?;
    if ga.ring() != gb.ring() {
        return input("ideals over different coefficient rings");
    }
    if ga == gb || unit_monomial_multiple(&ga, &gb, p).is_some() {
        return Ok(IdealEquality::Equal);
    }
    if ga.ring() == CoeffRing::Integer {
        let mut n = 0;
        while (p as u128).pow(n * a.d as u32) <= budget {
            let za = crate::flats::zero_set_level(&ga, p, n, budget)?;
            let zb = crate::flats::zero_set_level(&gb, p, n, budget)?;
            if za != zb {
                return Ok(IdealEquality::NotEqual);
            }
            if a.d == 0 {
                break;
            }
            n += 1;
        }
    }
    Ok(IdealEquality::Unknown)
}

fn is_p_monomial(x: &AlgebraElement, p: u64) -> Option<u32> {
    if x.num_terms() != 1 {
        return None;
    }
    let (_, c) = x.terms().next()?;
    let v = crate::arith::val_big(c.as_int()?, p)?;
    (v > 0).then_some(v)
}

fn has_unit_coefficient(x: &AlgebraElement, p: u64) -> bool {
    let pb = BigInt::from(p);
    x.terms().any(|(_, c)| c.as_int().is_some_and(|v| !v.is_multiple_of(&pb) && !v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_multiples() {
        let a = AlgebraElement::from_int_terms(1, &[(3, vec![2]), (-3, vec![1])]);
        let b = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]);
        assert!(unit_monomial_multiple(&a, &b, 2).is_some());
        assert!(unit_monomial_multiple(&a, &b, 3).is_none());
    }
}
