//! The group Γ ≅ Z_p^d, its quotients Γ_n, and group-algebra elements.

pub mod character;
pub mod cyclotomic;
pub mod element;
pub mod ops;
pub mod unit;

pub use character::{all_characters, Character, CharacterValue};
pub use cyclotomic::{Cyclotomic, CyclotomicInt};
pub use element::{AlgebraElement, Coeff, CoeffRing};
pub use ops::{idempotent, norm_element, simple_element, twist_endo, TwistOutcome};
pub use unit::UnitCharacter;

use crate::error::{input, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeConfig {
    pub p: u64,
    /// Working exponent M for coefficients reduced mod p^M.
    pub precision: u32,
}

impl PrimeConfig {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        crate::arith::check_prime(p)?;
        if precision == 0 {
            return input("precision must be at least 1");
        }
        Ok(PrimeConfig { p, precision })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaSpec {
    pub d: usize,
    pub basis: Vec<String>,
}

impl GammaSpec {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return input("rank d must be at least 1");
        }
        Ok(GammaSpec { d, basis: (1..=d).map(|i| format!("γ{i}")).collect() })
    }

    pub fn with_labels(basis: Vec<String>) -> Result<Self> {
        let mut sorted = basis.clone();
        sorted.sort();
        sorted.dedup();
        if basis.is_empty() || sorted.len() != basis.len() {
            return input("basis labels must be nonempty and distinct");
        }
        Ok(GammaSpec { d: basis.len(), basis })
    }
}

/// Element of Γ_n with exponents in [0, p^n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupVector {
    pub level: u32,
    pub exponents: Vec<u64>,
}

impl GroupVector {
    pub fn new(p: u64, level: u32, v: &[i64]) -> Self {
        let q = (p as i64).pow(level);
        GroupVector { level, exponents: v.iter().map(|a| a.rem_euclid(q) as u64).collect() }
    }
}

/// Elements of Γ_n in lexicographic order.
pub fn group_elements(p: u64, n: u32, d: usize) -> Vec<Vec<i64>> {
    all_characters(p, n, d).into_iter().map(|c| c.c.into_iter().map(|x| x as i64).collect()).collect()
}
