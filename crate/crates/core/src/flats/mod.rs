//! Character zero sets Δ_ξ at finite level, their decomposition into flats,
//! the NS test, and the φ₁/φ₂ and non-simple twist constructions.

mod twist_search;

pub use twist_search::{find_nonsimple_twist, integral_twist, line_form, LineForm};

use crate::algebra::{all_characters, simple_element, AlgebraElement, Character, CoeffRing};
use crate::error::{input, precondition, Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

/// Default cap on the number of characters enumerated at one level.
pub const DEFAULT_BUDGET: u128 = 729;

fn check_budget(p: u64, n: u32, d: usize, budget: u128) -> Result<()> {
    let required = (p as u128).pow(n * d as u32);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(())
}

/// {ω ∈ Γ_n^∨ : ω(ξ) = 0}, sorted lexicographically.
pub fn zero_set_level(xi: &AlgebraElement, p: u64, n: u32, budget: u128) -> Result<Vec<Character>> {
    if xi.ring() != CoeffRing::Integer {
        return input("zero sets need exact integer coefficients");
    }
    let d = xi.rank();
    check_budget(p, n, d, budget)?;
    let chars = all_characters(p, n, d);
    let flags: Vec<Result<bool>> = chars.par_iter().map(|w| w.evaluate(xi)?.is_zero()).collect();
    let mut out = Vec::new();
    for (w, f) in chars.into_iter().zip(flags) {
        if f? {
            out.push(w);
        }
    }
    Ok(out)
}

/// {c : B c ≡ t mod p^n}; rows of B extend to a basis of (Z/p^n)^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlatLevel {
    pub p: u64,
    pub level: u32,
    pub basis: Vec<Vec<u64>>,
    pub target: Vec<u64>,
}

impl FlatLevel {
    pub fn codim(&self) -> usize {
        self.basis.len()
    }

    pub fn d(&self) -> usize {
        self.basis.first().map_or(0, |r| r.len())
    }

    pub fn contains(&self, w: &Character) -> bool {
        let q = self.p.pow(self.level);
        self.basis.iter().zip(&self.target).all(|(row, &t)| dot(row, &w.c, q) == t)
    }

    /// Rows of B reduce to independent vectors mod p (equivalently all SNF divisors are units).
    pub fn is_well_shaped(&self) -> bool {
        let rows: Vec<Vec<i128>> = self.basis.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        if rows.is_empty() {
            return true;
        }
        let z = crate::linalg::ZMod::new(self.p, 1).unwrap();
        let s = z.snf(&rows, self.d());
        s.vals.len() == rows.len() && s.vals.iter().all(|&v| v == 0)
    }

    /// All members, lexicographic.
    pub fn members(&self, d: usize) -> Vec<Character> {
        all_characters(self.p, self.level, d).into_iter().filter(|w| self.contains(w)).collect()
    }

    pub fn size_exp(&self, d: usize) -> u32 {
        self.level * (d - self.codim()) as u32
    }
}

fn dot(a: &[u64], b: &[u64], q: u64) -> u64 {
    let mut s: u128 = 0;
    for (x, y) in a.iter().zip(b) {
        s = (s + (*x as u128) * (*y as u128)) % q as u128;
    }
    s as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSetReport {
    pub level: u32,
    pub zeros: Vec<Character>,
    pub cover: Vec<FlatLevel>,
    pub residual: Vec<Character>,
    /// Every flat lies in the zero set and cover ∪ residual is the zero set.
    pub exact: bool,
}

/// Free rank-k direct summands of (Z/p^n)^d, each exactly once, as generator
/// matrices in reduced echelon form over Z/p^n.
pub fn summands(p: u64, n: u32, d: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    let q = p.pow(n);
    let mut out = Vec::new();
    for pivots in subsets(d, k) {
        // slots: (row, column, allowed values)
        let mut slots: Vec<(usize, usize, Vec<u64>)> = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..d {
                if pivots.contains(&j) {
                    continue;
                }
                let vals: Vec<u64> = if j < pc { (0..q).step_by(p as usize).collect() } else { (0..q).collect() };
                slots.push((i, j, vals));
            }
        }
        let mut idx = vec![0usize; slots.len()];
        loop {
            let mut g = vec![vec![0u64; d]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                g[i][pc] = 1;
            }
            for (s, &(i, j, ref vals)) in slots.iter().enumerate() {
                g[i][j] = vals[idx[s]];
            }
            out.push(g);
            let mut s = slots.len();
            loop {
                if s == 0 {
                    break;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < slots[s].2.len() {
                    break;
                }
                idx[s] = 0;
                if s == 0 {
                    s = usize::MAX;
                    break;
                }
            }
            if slots.is_empty() || s == usize::MAX {
                break;
            }
        }
    }
    out
}

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Greedy maximal cover of a zero set by flats, largest flats first, ties
/// broken by echelon basis order and then by the smallest uncovered zero.
pub fn detect_flats(zeros: &[Character], p: u64, n: u32, d: usize) -> ZeroSetReport {
    let zero_set: HashSet<&Vec<u64>> = zeros.iter().map(|w| &w.c).collect();
    let mut sorted: Vec<&Character> = zeros.iter().collect();
    sorted.sort();
    let mut covered: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut cover = Vec::new();
    let q = p.pow(n);
    for k in 0..=d {
        if covered.len() == zeros.len() {
            break;
        }
        for g in summands(p, n, d, k) {
            let mut tried: HashSet<Vec<u64>> = HashSet::new();
            for w in &sorted {
                if covered.contains(&w.c) {
                    continue;
                }
                let t: Vec<u64> = g.iter().map(|row| dot(row, &w.c, q)).collect();
                if !tried.insert(t.clone()) {
                    continue;
                }
                let flat = FlatLevel { p, level: n, basis: g.clone(), target: t };
                let members = coset_members(&flat, &w.c, d);
                if members.iter().all(|m| zero_set.contains(m)) {
                    covered.extend(members);
                    cover.push(flat);
                }
            }
        }
    }
    let residual: Vec<Character> = zeros.iter().filter(|w| !covered.contains(&w.c)).cloned().collect();
    let exact = residual.is_empty();
    ZeroSetReport { level: n, zeros: zeros.to_vec(), cover, residual, exact }
}

/// Translate of Ker(B) through `base`, using the echelon shape of B.
fn coset_members(flat: &FlatLevel, base: &[u64], d: usize) -> Vec<Vec<u64>> {
    let q = flat.p.pow(flat.level);
    let pivots: Vec<usize> = flat.basis.iter().map(|r| r.iter().position(|&x| x == 1).unwrap()).collect();
    // pivot of row i is the first unit entry; echelon form puts it at a unique column
    let free: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();
    let total = (q as usize).pow(free.len() as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut c = vec![0u64; d];
        for &j in free.iter().rev() {
            c[j] = (idx % q as usize) as u64;
            idx /= q as usize;
        }
        for (i, &pc) in pivots.iter().enumerate() {
            let mut s: i128 = 0;
            for &j in &free {
                s += flat.basis[i][j] as i128 * c[j] as i128;
            }
            c[pc] = crate::arith::modp(-s, q as i128) as u64;
        }
        let v: Vec<u64> = c.iter().zip(base).map(|(a, b)| (a + b) % q).collect();
        out.push(v);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NsVerdict {
    /// The zero set is covered by flats of codimension ≥ 2.
    Holds,
    /// A flat of codimension ≤ 1 lies in the zero set at this level; necessary
    /// for a simple divisor, not sufficient.
    ViolatedAtLevel(FlatLevel),
    Undetermined,
}

pub fn ns_hypothesis_level(xi: &AlgebraElement, p: u64, n: u32, budget: u128) -> Result<(NsVerdict, ZeroSetReport)> {
    let zeros = zero_set_level(xi, p, n, budget)?;
    let report = detect_flats(&zeros, p, n, xi.rank());
    let verdict = if let Some(f) = report.cover.iter().find(|f| f.codim() <= 1) {
        NsVerdict::ViolatedAtLevel(f.clone())
    } else if !report.residual.is_empty() {
        NsVerdict::Undetermined
    } else {
        NsVerdict::Holds
    };
    Ok((verdict, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleChoice {
    pub direction: Vec<i64>,
    /// ε has order p^l.
    pub l: u32,
    pub epsilon_exponent: u64,
}

#[derive(Debug, Clone)]
pub struct PhiPair {
    pub phi1: AlgebraElement,
    pub phi2: AlgebraElement,
    pub choices1: Vec<SimpleChoice>,
    pub choices2: Vec<SimpleChoice>,
}

fn rank2_over_q(a: &[i64], b: &[i64]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] as i128 * b[j] as i128 != a[j] as i128 * b[i] as i128 {
                return true;
            }
        }
    }
    false
}

/// Small integer coefficient vectors, unit vectors first, then by l1 norm.
fn coefficient_candidates(k: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out.sort_by_key(|v| {
        let l1: i64 = v.iter().map(|x| x.abs()).sum();
        let negs = v.iter().filter(|&&x| x < 0).count();
        (l1, negs, v.iter().map(|x| -x).collect::<Vec<_>>())
    });
    out
}

/// φ₁ = ∏ f_{σ₁^{(j)}, ε₁^{(j)}}, φ₂ = ∏ f_{σ₂^{(j)}, ε₂^{(j)}} with pairwise
/// independent directions σ inside each flat's direction group.
pub fn construct_phi_pair(flats: &[FlatLevel], d: usize) -> Result<PhiPair> {
    let one = AlgebraElement::one(CoeffRing::Integer, d);
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let (mut phi1, mut phi2) = (one.clone(), one);
    for (j, f) in flats.iter().enumerate() {
        if f.codim() < 2 {
            return precondition(format!("flat {j} has codimension {} < 2", f.codim()));
        }
        let q = f.p.pow(f.level);
        let mut picks = Vec::new();
        for a in coefficient_candidates(f.codim(), 2) {
            let sigma: Vec<i64> = (0..d).map(|i| a.iter().zip(&f.basis).map(|(x, row)| x * row[i] as i64).sum()).collect();
            if sigma.iter().all(|&x| x.rem_euclid(f.p as i64) == 0) {
                continue;
            }
            if chosen.iter().any(|c| !rank2_over_q(c, &sigma)) {
                continue;
            }
            let e: i128 = a.iter().zip(&f.target).map(|(x, &t)| *x as i128 * t as i128).sum();
            let e = crate::arith::modp(e, q as i128) as u64;
            let eps = Character { p: f.p, n: f.level, c: vec![e] };
            chosen.push(sigma.clone());
            picks.push(SimpleChoice { direction: sigma, l: eps.order_exp(), epsilon_exponent: e });
            if picks.len() == 2 {
                break;
            }
        }
        if picks.len() < 2 {
            return Err(Error::Search(format!("no independent directions found inside flat {j}")));
        }
        let s1 = simple_element(f.p, &picks[0].direction, picks[0].l)?;
        let s2 = simple_element(f.p, &picks[1].direction, picks[1].l)?;
        phi1 = phi1.mul(&s1)?;
        phi2 = phi2.mul(&s2)?;
        c1.push(picks[0].clone());
        c2.push(picks[1].clone());
    }
    Ok(PhiPair { phi1, phi2, choices1: c1, choices2: c2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summand_counts() {
        // cyclic summands of (Z/9)^2: p^{n-1}(p+1)
        assert_eq!(summands(3, 2, 2, 1).len(), 12);
        assert_eq!(summands(3, 1, 3, 1).len(), 13);
        assert_eq!(summands(3, 1, 3, 2).len(), 13);
        assert_eq!(summands(2, 2, 2, 2).len(), 1);
        assert_eq!(summands(2, 2, 2, 0).len(), 1);
    }

    #[test]
    fn candidates_start_with_unit_vectors() {
        let c = coefficient_candidates(2, 1);
        assert_eq!(c[0], vec![1, 0]);
        assert_eq!(c[1], vec![0, 1]);
    }
}
