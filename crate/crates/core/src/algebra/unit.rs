use crate::arith::pow_mod;
use crate::error::{input, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::fmt;

/// φ(γ_i) = u_i with u_i ≡ 1 mod p (mod 4 for p = 2), residues mod p^M.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitCharacter {
    pub p: u64,
    pub m: u32,
    pub u: Vec<i128>,
}

impl UnitCharacter {
    pub fn new(p: u64, m: u32, values: &[i128]) -> Result<Self> {
        let q = crate::arith::checked_pow(p, m)?;
        let base: i128 = if p == 2 { 4 } else { p as i128 };
        let mut u = Vec::with_capacity(values.len());
        for &x in values {
            if crate::arith::modp(x - 1, base) != 0 {
                return input(format!("unit value {x} is not 1 mod {base}"));
            }
            u.push(crate::arith::modp(x, q));
        }
        Ok(UnitCharacter { p, m, u })
    }

    pub fn trivial(p: u64, m: u32, d: usize) -> Self {
        UnitCharacter { p, m, u: vec![1; d] }
    }

    pub fn modulus(&self) -> i128 {
        (self.p as i128).pow(self.m)
    }

    pub fn inverse(&self) -> Self {
        let q = self.modulus();
        UnitCharacter {
            p: self.p,
            m: self.m,
            u: self.u.iter().map(|&x| crate::arith::inv_mod(x, q).expect("u ≡ 1 mod p is a unit")).collect(),
        }
    }

    /// φ(γ^v) mod p^M.
    pub fn value(&self, v: &[i64]) -> i128 {
        let q = self.modulus();
        let mut acc = 1i128;
        for (u, &a) in self.u.iter().zip(v) {
            let base = if a >= 0 { *u } else { crate::arith::inv_mod(*u, q).unwrap() };
            acc = acc * pow_mod(base, a.unsigned_abs() as u128, q) % q;
        }
        acc
    }

    pub fn value_big(&self, v: &[i64]) -> BigInt {
        BigInt::from(self.value(v))
    }

    pub fn is_trivial(&self) -> bool {
        self.u.iter().all(|&x| x == 1)
    }

    /// Largest k with every u_i ≡ 1 mod p^k (capped at M).
    pub fn congruence_level(&self) -> u32 {
        let mut k = self.m;
        for &x in &self.u {
            let v = crate::arith::val_i128(x - 1, self.p).unwrap_or(self.m);
            k = k.min(v);
        }
        k
    }

    pub fn from_bigints(p: u64, m: u32, values: &[BigInt]) -> Result<Self> {
        let q = BigInt::from(crate::arith::checked_pow(p, m)?);
        let vals: Vec<i128> = values.iter().map(|x| x.mod_floor(&q).to_i128().unwrap()).collect();
        Self::new(p, m, &vals)
    }
}

impl fmt::Display for UnitCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(|x| x.to_string()).collect();
        write!(f, "φ = ({}) mod {}^{}", parts.join(","), self.p, self.m)
    }
}
