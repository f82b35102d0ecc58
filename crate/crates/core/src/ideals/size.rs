//! |M/I_n M| from valuations of character values, and free ranks of
//! Λ/(I_n + (ξ)) from the multiplication matrix.

use super::ElementaryModule;
use crate::algebra::{all_characters, group_elements, AlgebraElement, Character, Coeff, CoeffRing};
use crate::error::{input, precondition, Error, Result};
use crate::linalg::integer::BigMat;
use crate::linalg::bareiss_rank;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub level: u32,
    /// |M/I_n M| = p^exponent.
    pub exponent: u64,
    /// Σ_ω v_p(ω(ξ_i)) for each factor, before the multiplicity.
    pub per_factor: Vec<u64>,
}

fn budget_check(p: u64, n: u32, d: usize, budget: u128) -> Result<()> {
    let required = (p as u128).pow(n * d as u32);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(())
}

/// Σ_ω v_p(ω(ξ)) over Γ_n^∨, one norm per Galois orbit.
fn valuation_sum(xi: &AlgebraElement, p: u64, n: u32) -> Result<u64> {
    if xi.ring() != CoeffRing::Integer {
        return input("finite_level_size needs exact integer coefficients");
    }
    let reps: Vec<Character> = all_characters(p, n, xi.rank())
        .into_iter()
        .filter(|w| w.galois_orbit().first() == Some(w))
        .collect();
    let vals: Vec<Result<u64>> = reps
        .par_iter()
        .map(|w| {
            let v = w.evaluate(xi)?.value;
            if v.is_zero() {
                return precondition(format!("character {w} is a zero of {xi}"));
            }
            let nm = v.norm();
            // norms of algebraic integers are integers
            Ok(crate::arith::val_big(nm.numer(), p).expect("nonzero norm") as u64)
        })
        .collect();
    vals.into_iter().sum()
}

pub fn finite_level_size(m: &ElementaryModule, n: u32, budget: u128) -> Result<SizeReport> {
    budget_check(m.p, n, m.d, budget)?;
    let mut per_factor = Vec::with_capacity(m.factors.len());
    let mut exponent = 0u64;
    for f in &m.factors {
        let s = valuation_sum(&f.xi, m.p, n)?;
        per_factor.push(s);
        exponent += s * f.r as u64;
    }
    Ok(SizeReport { level: n, exponent, per_factor })
}

/// Matrix of x ↦ ξx on Z[Γ_n] in the basis `group_elements(p, n, d)`.
pub fn multiplication_matrix(xi: &AlgebraElement, p: u64, n: u32) -> Result<BigMat> {
    let xi = xi.to_integer_lift(true)?;
    let d = xi.rank();
    let elems = group_elements(p, n, d);
    let index: HashMap<&Vec<i64>, usize> = elems.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let q = (p as i64).pow(n);
    let g = elems.len();
    let mut m = vec![vec![BigInt::zero(); g]; g];
    let red = xi.reduce_level(p, n);
    for (j, e) in elems.iter().enumerate() {
        for (v, c) in red.terms() {
            let w: Vec<i64> = v.iter().zip(e).map(|(a, b)| (a + b).rem_euclid(q)).collect();
            let Coeff::Int(c) = c else { unreachable!("integer lift") };
            m[index[&w]][j] += c;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub p: u64,
    pub d: usize,
    /// rank_{Z_p} Λ/(I_n + (ξ)) for n = 0..=N.
    pub ranks: Vec<u64>,
    /// max_{n<N} rank_n / p^{n(d-1)}; the whole profile when N = 0.
    pub fitted_constant: f64,
    /// rank_N ≤ C·p^{N(d-1)} for the fitted constant C.
    pub within_bound: bool,
}

pub fn growth_profile(xi: &AlgebraElement, p: u64, top: u32, budget: u128) -> Result<GrowthProfile> {
    if xi.is_zero() {
        return input("growth profile of the zero element");
    }
    let d = xi.rank();
    budget_check(p, top, d, budget)?;
    let ranks: Vec<u64> = (0..=top)
        .into_par_iter()
        .map(|n| {
            let m = multiplication_matrix(xi, p, n)?;
            let g = m.len();
            Ok((g - bareiss_rank(&m, g)) as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let scale = |n: u32| (p as u128).pow(n * (d.max(1) as u32 - 1));
    let fit_levels = if top == 0 { 1 } else { top as usize };
    // C = a/b as the maximum ratio, compared by cross multiplication
    let (mut a, mut b) = (0u128, 1u128);
    for (n, &r) in ranks.iter().enumerate().take(fit_levels) {
        let s = scale(n as u32);
        if (r as u128) * b > a * s {
            a = r as u128;
            b = s;
        }
    }
    let last = *ranks.last().unwrap() as u128;
    let within_bound = last * b <= a * scale(top);
    Ok(GrowthProfile { p, d, ranks, fitted_constant: a as f64 / b as f64, within_bound })
}
