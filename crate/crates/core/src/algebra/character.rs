//! Characters of Γ_n ≅ (Z/p^n)^d, written as exponent tuples on the basis.

use super::cyclotomic::Cyclotomic;
use super::element::{AlgebraElement, Coeff, CoeffRing};
use crate::arith::modp;
use crate::error::{input, Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// ω(γ_i) = ζ_{p^n}^{c_i}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub p: u64,
    pub n: u32,
    pub c: Vec<u64>,
}

/// `value` is exact unless the element had modular coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterValue {
    pub value: Cyclotomic,
    pub exact: bool,
}

impl CharacterValue {
    pub fn is_zero(&self) -> Result<bool> {
        if !self.exact {
            return Err(Error::Inexact("zero test on a value known only modulo p^M".into()));
        }
        Ok(self.value.is_zero())
    }
}

impl Character {
    pub fn new(p: u64, n: u32, c: Vec<i64>) -> Self {
        let q = (p as i128).pow(n);
        Character { p, n, c: c.into_iter().map(|x| modp(x as i128, q) as u64).collect() }
    }

    pub fn trivial(p: u64, n: u32, d: usize) -> Self {
        Character { p, n, c: vec![0; d] }
    }

    pub fn d(&self) -> usize {
        self.c.len()
    }

    /// l with ω of exact order p^l.
    pub fn order_exp(&self) -> u32 {
        let mut l = 0;
        for &x in &self.c {
            if x == 0 {
                continue;
            }
            let mut v = 0;
            let mut y = x;
            while y % self.p == 0 {
                y /= self.p;
                v += 1;
            }
            l = l.max(self.n - v);
        }
        l
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Exponents in terms of a primitive p^l-th root, l the exact order.
    pub fn reduced_exponents(&self) -> (u32, Vec<u64>) {
        let l = self.order_exp();
        let s = self.p.pow(self.n - l);
        (l, self.c.iter().map(|x| x / s).collect())
    }

    /// Pairing exponent Σ c_i v_i so that ω(γ^v) = ζ_{p^n}^{that}.
    pub fn exponent_on(&self, v: &[i64]) -> i128 {
        let q = (self.p as i128).pow(self.n);
        let mut s = 0i128;
        for (c, a) in self.c.iter().zip(v) {
            s = modp(s + (*c as i128) * (*a as i128), q);
        }
        s
    }

    /// ω(γ^v) in Q(ζ_{p^l}), l = exact order of ω.
    pub fn value_on(&self, v: &[i64]) -> Cyclotomic {
        let (l, c) = self.reduced_exponents();
        let q = (self.p as i128).pow(l);
        let mut s = 0i128;
        for (ci, a) in c.iter().zip(v) {
            s = modp(s + (*ci as i128) * (*a as i128), q);
        }
        Cyclotomic::zeta_pow(self.p, l, s)
    }

    /// ω(x).
    pub fn evaluate(&self, x: &AlgebraElement) -> Result<CharacterValue> {
        if x.rank() != self.d() {
            return input(format!("character of rank {} applied to element of rank {}", self.d(), x.rank()));
        }
        let (l, c) = self.reduced_exponents();
        let (exact, target) = match x.ring() {
            CoeffRing::Integer => (true, l),
            CoeffRing::Modular { p, .. } => {
                if p != self.p {
                    return input("prime mismatch");
                }
                (false, l)
            }
            CoeffRing::Cyclotomic { p, l: lc } => {
                if p != self.p {
                    return input("prime mismatch");
                }
                (true, l.max(lc))
            }
        };
        // accumulate in powers of ζ_{p^target}
        let order = (self.p as i128).pow(target);
        let s = (self.p as i128).pow(target - l);
        let mut full = vec![BigRational::from_integer(0.into()); order as usize];
        let mut extra = Cyclotomic::zero(self.p, target);
        for (v, coeff) in x.terms() {
            let mut e = 0i128;
            for (ci, a) in c.iter().zip(v) {
                e = modp(e + (*ci as i128) * (*a as i128), order);
            }
            let e = modp(e * s, order) as usize;
            match coeff {
                Coeff::Int(k) => full[e] += BigRational::from_integer(k.clone()),
                Coeff::Cyc(z) => {
                    let zz = z.lift_to(target).mul(&Cyclotomic::zeta_pow(self.p, target, e as i128));
                    extra = extra.add(&zz);
                }
            }
        }
        let value = Cyclotomic::reduce_from(self.p, target, full).add(&extra);
        Ok(CharacterValue { value, exact })
    }

    /// Gal(Q̄_p/Q_p)-orbit: unit multiples of the exponent tuple.
    pub fn galois_orbit(&self) -> Vec<Character> {
        let (l, c) = self.reduced_exponents();
        let ql = self.p.pow(l);
        let s = self.p.pow(self.n - l);
        let mut out: Vec<Character> = (1..=ql)
            .filter(|u| ql == 1 || u.gcd(&self.p) == 1)
            .map(|u| Character { p: self.p, n: self.n, c: c.iter().map(|x| (x * u % ql) * s).collect() })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn inverse(&self) -> Character {
        let q = self.p.pow(self.n);
        Character { p: self.p, n: self.n, c: self.c.iter().map(|&x| (q - x) % q).collect() }
    }

    pub fn mul(&self, other: &Character) -> Character {
        let q = self.p.pow(self.n);
        Character { p: self.p, n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| (a + b) % q).collect() }
    }

    /// Restriction to a smaller level is not defined; inflation from level m ≤ n is.
    pub fn inflate(&self, n: u32) -> Character {
        assert!(n >= self.n);
        let s = self.p.pow(n - self.n);
        Character { p: self.p, n, c: self.c.iter().map(|x| x * s).collect() }
    }
}

/// All characters of Γ_n in lexicographic order of exponent tuples.
pub fn all_characters(p: u64, n: u32, d: usize) -> Vec<Character> {
    let q = p.pow(n);
    let total = (q as usize).pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = vec![0u64; d];
            for i in (0..d).rev() {
                c[i] = (idx % q as usize) as u64;
                idx /= q as usize;
            }
            Character { p, n, c }
        })
        .collect()
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augmentation() {
        let x = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]);
        let w = Character::trivial(3, 2, 1);
        assert!(w.evaluate(&x).unwrap().is_zero().unwrap());
    }

    #[test]
    fn cyclotomic_zero() {
        let x = AlgebraElement::from_int_terms(1, &[(1, vec![2]), (1, vec![1]), (1, vec![0])]);
        let w = Character::new(3, 1, vec![1]);
        assert!(w.evaluate(&x).unwrap().is_zero().unwrap());
    }

    #[test]
    fn orbit_small() {
        let w = Character::new(3, 1, vec![1]);
        assert_eq!(w.galois_orbit(), vec![Character::new(3, 1, vec![1]), Character::new(3, 1, vec![2])]);
        let t = Character::trivial(3, 2, 2);
        assert_eq!(t.galois_orbit(), vec![t.clone()]);
    }

    #[test]
    fn modular_values_refuse_zero_test() {
        let x = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]).to_modular(3, 4).unwrap();
        let w = Character::trivial(3, 1, 1);
        assert!(matches!(w.evaluate(&x).unwrap().is_zero(), Err(Error::Inexact(_))));
    }
}
