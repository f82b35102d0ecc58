//! Laurent polynomials in γ₁..γ_d: the common carrier for Λ, Λ_n and Q_n.

use super::cyclotomic::Cyclotomic;
use crate::error::{input, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffRing {
    Integer,
    /// Residues in [0, p^m).
    Modular { p: u64, m: u32 },
    /// Elements of Q(ζ_{p^l}).
    Cyclotomic { p: u64, l: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Cyc(Cyclotomic),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Cyc(c) => c.is_zero(),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Coeff::Int(x) => Some(x),
            Coeff::Cyc(_) => None,
        }
    }
}

impl CoeffRing {
    /// p^m for Z/p^m coefficients.
    pub fn modulus(&self) -> Option<BigInt> {
        match *self {
            CoeffRing::Modular { p, m } => Some(num_traits::Pow::pow(BigInt::from(p), m)),
            _ => None,
        }
    }

    fn normalize(&self, c: Coeff) -> Coeff {
        match (self, c) {
            (CoeffRing::Modular { .. }, Coeff::Int(x)) => Coeff::Int(x.mod_floor(&self.modulus().unwrap())),
            (CoeffRing::Cyclotomic { l, .. }, Coeff::Cyc(z)) if z.l < *l => Coeff::Cyc(z.lift_to(*l)),
            (_, c) => c,
        }
    }

    fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let c = match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Cyc(x), Coeff::Cyc(y)) => Coeff::Cyc(x.add(y)),
            _ => unreachable!("ring tags are checked before arithmetic"),
        };
        self.normalize(c)
    }

    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let c = match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Cyc(x), Coeff::Cyc(y)) => Coeff::Cyc(x.mul(y)),
            _ => unreachable!("ring tags are checked before arithmetic"),
        };
        self.normalize(c)
    }

    fn neg(&self, a: &Coeff) -> Coeff {
        let c = match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Cyc(x) => Coeff::Cyc(x.neg()),
        };
        self.normalize(c)
    }

    pub fn one(&self) -> Coeff {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, x: BigInt) -> Coeff {
        match *self {
            CoeffRing::Cyclotomic { p, l } => Coeff::Cyc(Cyclotomic::from_int(p, l, x)),
            _ => self.normalize(Coeff::Int(x)),
        }
    }

    fn check(&self, c: &Coeff) -> Result<()> {
        match (self, c) {
            (CoeffRing::Cyclotomic { p, l }, Coeff::Cyc(z)) if z.p == *p && z.l <= *l => Ok(()),
            (CoeffRing::Integer | CoeffRing::Modular { .. }, Coeff::Int(_)) => Ok(()),
            _ => input("coefficient does not belong to the element's ring"),
        }
    }
}

/// Finite-support element Σ c_v γ^v; exponents unreduced, coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    ring: CoeffRing,
    d: usize,
    terms: BTreeMap<Vec<i64>, Coeff>,
}

impl AlgebraElement {
    pub fn zero(ring: CoeffRing, d: usize) -> Self {
        AlgebraElement { ring, d, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing, d: usize) -> Self {
        Self::monomial(ring, d, vec![0; d], ring.one())
    }

    pub fn monomial(ring: CoeffRing, d: usize, v: Vec<i64>, c: Coeff) -> Self {
        let mut x = Self::zero(ring, d);
        x.add_term(v, c);
        x
    }

    pub fn int_monomial(d: usize, v: Vec<i64>, c: i64) -> Self {
        Self::monomial(CoeffRing::Integer, d, v, Coeff::Int(BigInt::from(c)))
    }

    pub fn constant(ring: CoeffRing, d: usize, c: BigInt) -> Self {
        Self::monomial(ring, d, vec![0; d], ring.from_int(c))
    }

    /// The generator γ_i (0-based).
    pub fn gamma(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        Self::int_monomial(d, v, 1)
    }

    pub fn from_terms(ring: CoeffRing, d: usize, terms: Vec<(Vec<i64>, Coeff)>) -> Result<Self> {
        let mut x = Self::zero(ring, d);
        for (v, c) in terms {
            if v.len() != d {
                return input(format!("exponent vector {v:?} has length {}, expected {d}", v.len()));
            }
            ring.check(&c)?;
            x.add_term(v, c);
        }
        Ok(x)
    }

    pub fn from_int_terms(d: usize, terms: &[(i64, Vec<i64>)]) -> Self {
        let t = terms.iter().map(|(c, v)| (v.clone(), Coeff::Int(BigInt::from(*c)))).collect();
        Self::from_terms(CoeffRing::Integer, d, t).expect("well-formed integer terms")
    }

    fn add_term(&mut self, v: Vec<i64>, c: Coeff) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.get(&v) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if s.is_zero() {
                    self.terms.remove(&v);
                } else {
                    self.terms.insert(v, s);
                }
            }
            None => {
                self.terms.insert(v, c);
            }
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: &[i64]) -> Option<&Coeff> {
        self.terms.get(v)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.d != other.d {
            return input(format!(
                "mismatched operands: {:?}/d={} vs {:?}/d={}",
                self.ring, self.d, other.ring, other.d
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut x = self.clone();
        for (v, c) in &other.terms {
            x.add_term(v.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(v, c)| (v.clone(), self.ring.neg(c))).collect();
        AlgebraElement { ring: self.ring, d: self.d, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Formal Laurent product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut x = Self::zero(self.ring, self.d);
        for (v, c) in &self.terms {
            for (w, e) in &other.terms {
                let s: Vec<i64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
                x.add_term(s, self.ring.mul(c, e));
            }
        }
        Ok(x)
    }

    /// Product in Λ_n: exponents reduced to [0, p^n).
    pub fn mul_level(&self, other: &Self, p: u64, n: u32) -> Result<Self> {
        Ok(self.mul(other)?.reduce_level(p, n))
    }

    pub fn scale(&self, c: &Coeff) -> Result<Self> {
        self.ring.check(c)?;
        let mut x = Self::zero(self.ring, self.d);
        for (v, e) in &self.terms {
            x.add_term(v.clone(), self.ring.mul(e, c));
        }
        Ok(x)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&self.ring.from_int(c.clone())).expect("integer scalars embed in every ring")
    }

    pub fn shift(&self, w: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(v, c)| (v.iter().zip(w).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        AlgebraElement { ring: self.ring, d: self.d, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring, self.d);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Image in Λ_n = Z_p[Γ_n].
    pub fn reduce_level(&self, p: u64, n: u32) -> Self {
        let q = (p as i64).pow(n);
        let mut x = Self::zero(self.ring, self.d);
        for (v, c) in &self.terms {
            x.add_term(v.iter().map(|a| a.rem_euclid(q)).collect(), c.clone());
        }
        x
    }

    /// γ^v ↦ γ^{-v}.
    pub fn sharp(&self) -> Self {
        let terms = self.terms.iter().map(|(v, c)| (v.iter().map(|a| -a).collect(), c.clone())).collect();
        AlgebraElement { ring: self.ring, d: self.d, terms }
    }

    /// Reduce integer coefficients modulo p^m.
    pub fn to_modular(&self, p: u64, m: u32) -> Result<Self> {
        let ring = CoeffRing::Modular { p, m };
        match self.ring {
            CoeffRing::Integer | CoeffRing::Modular { .. } => {
                if let CoeffRing::Modular { p: p0, m: m0 } = self.ring {
                    if p0 != p || m0 < m {
                        return input("cannot raise precision of a modular element");
                    }
                }
                let t = self.terms.iter().map(|(v, c)| (v.clone(), c.clone())).collect();
                Self::from_terms(ring, self.d, t)
            }
            CoeffRing::Cyclotomic { .. } => input("cyclotomic coefficients do not reduce to Z/p^m"),
        }
    }

    /// Integer lift of residues, symmetric range when `balanced`.
    pub fn to_integer_lift(&self, balanced: bool) -> Result<Self> {
        match self.ring {
            CoeffRing::Integer => Ok(self.clone()),
            CoeffRing::Modular { .. } => {
                let q = self.ring.modulus().unwrap();
                let half = &q / 2;
                let t = self
                    .terms
                    .iter()
                    .map(|(v, c)| {
                        let x = c.as_int().unwrap().clone();
                        let x = if balanced && x > half { x - &q } else { x };
                        (v.clone(), Coeff::Int(x))
                    })
                    .collect();
                Self::from_terms(CoeffRing::Integer, self.d, t)
            }
            CoeffRing::Cyclotomic { .. } => input("cyclotomic coefficients have no integer lift"),
        }
    }

    /// View integer coefficients as constants of Q(ζ_{p^l}).
    pub fn to_cyclotomic(&self, p: u64, l: u32) -> Result<Self> {
        let ring = CoeffRing::Cyclotomic { p, l };
        let t = self
            .terms
            .iter()
            .map(|(v, c)| match c {
                Coeff::Int(x) => Ok((v.clone(), Coeff::Cyc(Cyclotomic::from_int(p, l, x.clone())))),
                Coeff::Cyc(z) if z.p == p && z.l <= l => Ok((v.clone(), Coeff::Cyc(z.lift_to(l)))),
                _ => input("incompatible cyclotomic coefficient"),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ring, self.d, t)
    }

    pub fn lead(&self) -> Option<(&Vec<i64>, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// `self = u·γ^w·other` with u = ±1 (a unit monomial), if such (u, w) exists.
    pub fn unit_monomial_quotient(&self, other: &Self) -> Option<(BigInt, Vec<i64>)> {
        if self.compatible(other).is_err() || self.num_terms() != other.num_terms() || self.is_zero() {
            return None;
        }
        let (va, ca) = self.lead()?;
        let (vb, cb) = other.lead()?;
        let w: Vec<i64> = va.iter().zip(vb).map(|(a, b)| a - b).collect();
        for u in [BigInt::one(), -BigInt::one()] {
            let cand = other.shift(&w).scale_int(&u);
            if &cand == self {
                let _ = (ca, cb);
                return Some((u, w));
            }
        }
        None
    }

    /// All exponent vectors of the support.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_integer_ring(&self) -> bool {
        self.ring == CoeffRing::Integer
    }

    /// Constant term value when the element is a scalar.
    pub fn as_constant(&self) -> Option<&Coeff> {
        if self.terms.len() == 1 {
            let (v, c) = self.terms.iter().next().unwrap();
            if v.iter().all(|&a| a == 0) {
                return Some(c);
            }
        }
        None
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().flat_map(|v| v.iter().map(|a| a.abs())).max().unwrap_or(0)
    }

    pub(crate) fn map_coeffs(&self, ring: CoeffRing, f: impl Fn(&Vec<i64>, &Coeff) -> Coeff) -> Self {
        let mut x = Self::zero(ring, self.d);
        for (v, c) in &self.terms {
            x.add_term(v.clone(), f(v, c));
        }
        x
    }

    /// Map c·γ^v ↦ c·γ^{Mv} for an integer matrix M (d_out × d).
    pub fn substitute_monomials(&self, m: &[Vec<i64>]) -> Self {
        let dout = m.len();
        let mut x = Self::zero(self.ring, dout);
        for (v, c) in &self.terms {
            let w: Vec<i64> = m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            x.add_term(w, c.clone());
        }
        x
    }

    /// Rational scalar on cyclotomic coefficients.
    pub fn scale_rational(&self, r: &BigRational) -> Result<Self> {
        match self.ring {
            CoeffRing::Cyclotomic { .. } => Ok(self.map_coeffs(self.ring, |_, c| match c {
                Coeff::Cyc(z) => Coeff::Cyc(z.scale(r)),
                Coeff::Int(_) => unreachable!(),
            })),
            _ => Err(Error::Input("rational scalars require cyclotomic coefficients".into())),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, c) in self.terms.iter().rev() {
            let mono: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("γ{}", i + 1) } else { format!("γ{}^{}", i + 1, a) })
                .collect();
            let mono = mono.join("·");
            match c {
                Coeff::Int(x) => {
                    let (neg, abs) = (x.is_negative(), x.abs());
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, "{}", if neg { " - " } else { " + " })?;
                    }
                    if mono.is_empty() {
                        write!(f, "{abs}")?;
                    } else if abs.is_one() {
                        write!(f, "{mono}")?;
                    } else {
                        write!(f, "{abs}·{mono}")?;
                    }
                }
                Coeff::Cyc(z) => {
                    if !first {
                        write!(f, " + ")?;
                    }
                    let body: Vec<String> = z
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| if k == 0 { format!("{c}") } else { format!("{c}ζ^{k}") })
                        .collect();
                    write!(f, "({})", body.join(" + "))?;
                    if !mono.is_empty() {
                        write!(f, "·{mono}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> AlgebraElement {
        AlgebraElement::gamma(1, 0)
    }

    #[test]
    fn product_identity() {
        let one = AlgebraElement::one(CoeffRing::Integer, 1);
        let a = g().sub(&one).unwrap();
        let b = g().add(&one).unwrap();
        let expect = AlgebraElement::from_int_terms(1, &[(1, vec![2]), (-1, vec![0])]);
        assert_eq!(a.mul(&b).unwrap(), expect);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn level_product() {
        let one = AlgebraElement::one(CoeffRing::Integer, 1);
        let a = g().sub(&one).unwrap();
        let sq = a.mul_level(&a, 2, 1).unwrap();
        assert_eq!(sq, AlgebraElement::from_int_terms(1, &[(2, vec![0]), (-2, vec![1])]));
    }

    #[test]
    fn sharp_factor() {
        let one = AlgebraElement::one(CoeffRing::Integer, 1);
        let a = g().sub(&one).unwrap();
        let (u, w) = a.sharp().unit_monomial_quotient(&a).unwrap();
        assert_eq!(u, -BigInt::one());
        assert_eq!(w, vec![-1]);
    }

    #[test]
    fn mismatch_is_input_error() {
        let a = AlgebraElement::gamma(1, 0);
        let b = AlgebraElement::gamma(2, 0);
        assert!(matches!(a.mul(&b), Err(Error::Input(_))));
    }
}
