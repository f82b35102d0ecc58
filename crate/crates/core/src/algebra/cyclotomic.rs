//! Exact arithmetic in Q(ζ_{p^l}) on the power basis 1, x, .., x^{φ(p^l)-1}
//! modulo the cyclotomic polynomial Φ_{p^l}.

use crate::arith::phi_pl;
use crate::linalg::integer::BigMat;
use crate::linalg::bareiss_det;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    pub p: u64,
    pub l: u32,
    /// Always of length φ(p^l); integral for values of integral elements.
    pub coeffs: Vec<BigRational>,
}

/// Values of exact-integer elements live here; the same carrier as `Cyclotomic`.
pub type CyclotomicInt = Cyclotomic;

impl Cyclotomic {
    pub fn zero(p: u64, l: u32) -> Self {
        Cyclotomic { p, l, coeffs: vec![BigRational::zero(); phi_pl(p, l)] }
    }

    pub fn from_rational(p: u64, l: u32, c: BigRational) -> Self {
        let mut z = Self::zero(p, l);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(p: u64, l: u32, c: BigInt) -> Self {
        Self::from_rational(p, l, BigRational::from_integer(c))
    }

    pub fn one(p: u64, l: u32) -> Self {
        Self::from_int(p, l, BigInt::one())
    }

    pub fn from_int_coeffs(p: u64, l: u32, c: &[BigInt]) -> Self {
        let mut full = vec![BigRational::zero(); c.len().max(1)];
        for (i, x) in c.iter().enumerate() {
            full[i] = BigRational::from_integer(x.clone());
        }
        Self::reduce_from(p, l, full)
    }

    /// ζ^e for any integer e.
    pub fn zeta_pow(p: u64, l: u32, e: i128) -> Self {
        let order = (p as i128).pow(l);
        let k = crate::arith::modp(e, order) as usize;
        let mut full = vec![BigRational::zero(); order as usize];
        full[k] = BigRational::one();
        Self::reduce_from(p, l, full)
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.l)
    }

    /// Reduce a coefficient vector in powers of x (any length) modulo x^{p^l} - 1
    /// and Φ_{p^l}.
    pub fn reduce_from(p: u64, l: u32, full: Vec<BigRational>) -> Self {
        let order = (p as usize).pow(l);
        let phi = phi_pl(p, l);
        let mut folded = vec![BigRational::zero(); order];
        for (k, c) in full.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % order] += c;
            }
        }
        if l == 0 {
            return Cyclotomic { p, l, coeffs: folded };
        }
        let step = (p as usize).pow(l - 1);
        for k in (phi..order).rev() {
            if folded[k].is_zero() {
                continue;
            }
            let a = std::mem::replace(&mut folded[k], BigRational::zero());
            for j in 0..(p as usize - 1) {
                folded[k - phi + j * step] -= &a;
            }
        }
        folded.truncate(phi);
        Cyclotomic { p, l, coeffs: folded }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.is_integral() {
            Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
        } else {
            None
        }
    }

    /// Image under Q(ζ_{p^l}) ⊂ Q(ζ_{p^L}), ζ_{p^l} = ζ_{p^L}^{p^{L-l}}.
    pub fn lift_to(&self, big_l: u32) -> Self {
        assert!(big_l >= self.l);
        if big_l == self.l {
            return self.clone();
        }
        let s = (self.p as usize).pow(big_l - self.l);
        let mut full = vec![BigRational::zero(); (self.p as usize).pow(big_l)];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[k * s] = c.clone();
        }
        Self::reduce_from(self.p, big_l, full)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.l.max(other.l);
        (self.lift_to(l), other.lift_to(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { p: a.p, l: a.l, coeffs }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { p: self.p, l: self.l, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.coeffs.len();
        let mut full = vec![BigRational::zero(); 2 * n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        Self::reduce_from(a.p, a.l, full)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Cyclotomic { p: self.p, l: self.l, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Field norm down to Q, as the determinant of multiplication on the power basis.
    pub fn norm(&self) -> BigRational {
        let n = self.coeffs.len();
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let scaled = self.scale(&BigRational::from_integer(den.clone()));
        let mut m: BigMat = vec![vec![BigInt::zero(); n]; n];
        let mut basis = Self::one(self.p, self.l);
        let x = if self.l == 0 { Self::one(self.p, 0) } else { Self::zeta_pow(self.p, self.l, 1) };
        for j in 0..n {
            let col = scaled.mul(&basis);
            for i in 0..n {
                m[i][j] = col.coeffs[i].to_integer();
            }
            basis = basis.mul(&x);
        }
        BigRational::new(bareiss_det(&m), num_traits::Pow::pow(den, n as u32))
    }

    /// Normalized p-adic valuation (v(p) = 1) of a nonzero value, as a rational.
    pub fn valuation(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        let nm = self.norm();
        let vn = crate::arith::val_big(nm.numer(), self.p)? as i64;
        let vd = crate::arith::val_big(nm.denom(), self.p).unwrap_or(0) as i64;
        Some(BigRational::new(BigInt::from(vn - vd), BigInt::from(self.coeffs.len())))
    }

    /// Galois conjugate ζ ↦ ζ^a for a unit a.
    pub fn conjugate(&self, a: u64) -> Self {
        let order = self.order();
        let mut full = vec![BigRational::zero(); order];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[(k * a as usize) % order] += c;
        }
        Self::reduce_from(self.p, self.l, full)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·ζ")?,
                _ => write!(f, "{c}·ζ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [ζ of order {}^{}]", self.p, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relations() {
        let z = Cyclotomic::zeta_pow(3, 1, 1);
        let s = Cyclotomic::one(3, 1).add(&z).add(&z.mul(&z));
        assert!(s.is_zero());
        let z9 = Cyclotomic::zeta_pow(3, 2, 1);
        let mut acc = Cyclotomic::one(3, 2);
        for _ in 0..9 {
            acc = acc.mul(&z9);
        }
        assert_eq!(acc, Cyclotomic::one(3, 2));
    }

    #[test]
    fn norms() {
        // N(1 - ζ_p) = p
        for p in [2u64, 3, 5] {
            let a = Cyclotomic::one(p, 1).sub(&Cyclotomic::zeta_pow(p, 1, 1));
            assert_eq!(a.norm(), BigRational::from_integer(BigInt::from(p)));
        }
        let a = Cyclotomic::one(3, 2).sub(&Cyclotomic::zeta_pow(3, 2, 1));
        assert_eq!(a.norm(), BigRational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn lift_is_ring_map() {
        let a = Cyclotomic::zeta_pow(3, 1, 1);
        let b = Cyclotomic::zeta_pow(3, 2, 3);
        assert_eq!(a.lift_to(2), b);
    }
}
