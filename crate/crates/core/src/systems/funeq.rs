//! Finite-level shadow of a^♯ ∼ b: image profiles of k_n^N on both sides and
//! level-wise searches for a Γ-isomorphism image(k|a) ≅ image(k|b)^♯.

use super::{validate, GammaSystem};
use crate::error::Result;
use crate::linalg::{zeros, Mat};
use crate::modules::module::kernel_vectors as kernel_vectors_pub;
use crate::modules::{image, FiniteModule, ModuleMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The same group with γ acting by γ^{-1}.
pub fn sharp_module(m: &FiniteModule) -> Result<FiniteModule> {
    let inv = m
        .actions()
        .iter()
        .enumerate()
        .map(|(i, a)| m.invert(a).ok_or_else(|| crate::Error::Input(format!("γ{} is not invertible", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    m.with_actions(inv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitProfile {
    pub top: u32,
    /// Elementary divisor exponents of image(k_n^N) on each side.
    pub a: Vec<Vec<u32>>,
    pub b: Vec<Vec<u32>>,
    /// image(k_n^N) and image(k_n^{N-1}) have the same profile for all n < N;
    /// `None` below N = 2.
    pub stabilized: Option<bool>,
}

fn profiles(s: &GammaSystem, top: u32) -> Result<(Vec<FiniteModule>, Vec<FiniteModule>)> {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for n in 0..=top {
        let t = s.transition(n, top);
        a.push(image(&t.k_a)?.module);
        b.push(image(&t.k_b)?.module);
    }
    Ok((a, b))
}

pub fn limit_invariants(s: &GammaSystem) -> Result<LimitProfile> {
    let top = s.top();
    let (a, b) = profiles(s, top)?;
    let stabilized = if top < 2 {
        None
    } else {
        let (pa, pb) = profiles(s, top - 1)?;
        Some((0..top as usize).all(|n| pa[n].exps() == a[n].exps() && pb[n].exps() == b[n].exps()))
    };
    let ex = |v: &[FiniteModule]| v.iter().map(|m| m.exps().to_vec()).collect();
    Ok(LimitProfile { top, a: ex(&a), b: ex(&b), stabilized })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Enumerate Hom_Γ completely when it has at most this many elements.
    pub enumerate: u64,
    /// Otherwise, random elements of Hom_Γ to try.
    pub samples: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { enumerate: 1 << 16, samples: 4096, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    /// Matrix of an equivariant bijection X → Y.
    Isomorphic(Mat),
    NotIsomorphic(String),
    /// Sampling found no isomorphism; this is not a proof that none exists.
    Undetermined,
}

/// Hom_Γ(X, Y) as the kernel of F ↦ (F γ_i − γ_i F)_i on the parameter module
/// F_ij = p^{max(0, y_i − x_j)} t_ij, t_ij mod p^{min(x_j, y_i)}.
fn hom_generators(x: &FiniteModule, y: &FiniteModule) -> Result<Vec<Mat>> {
    let (gx, gy, p) = (x.gens(), y.gens(), x.p());
    let mut params: Vec<(u32, usize, usize)> = Vec::new();
    for i in 0..gy {
        for j in 0..gx {
            params.push((x.exps()[j].min(y.exps()[i]), i, j));
        }
    }
    params.sort();
    let scale = |i: usize, j: usize| crate::arith::pow_i128(p, y.exps()[i].saturating_sub(x.exps()[j]));
    let pmod = FiniteModule::new_lenient(p, x.level(), params.iter().map(|t| t.0).collect(), vec![])?;
    // target: d·gx copies of Y, one per (γ_i, source generator)
    let d = x.d();
    let mut texps: Vec<(u32, usize)> = Vec::new();
    for k in 0..d * gx {
        for i in 0..gy {
            texps.push((y.exps()[i], k * gy + i));
        }
    }
    texps.sort();
    let mut pos = vec![0; texps.len()];
    for (new, &(_, old)) in texps.iter().enumerate() {
        pos[old] = new;
    }
    let tmod = FiniteModule::new_lenient(p, x.level(), texps.iter().map(|t| t.0).collect(), vec![])?;
    let q = x.zmod().q.max(y.zmod().q);
    let mut sys = zeros(texps.len(), params.len());
    for (c, &(_, pi, pj)) in params.iter().enumerate() {
        let mut f = zeros(gy, gx);
        f[pi][pj] = scale(pi, pj);
        for g in 0..d {
            let lhs = crate::linalg::mul_mod(&f, x.action(g), gx, q);
            let rhs = crate::linalg::mul_mod(y.action(g), &f, gy, q);
            for j in 0..gx {
                for i in 0..gy {
                    sys[pos[(g * gx + j) * gy + i]][c] = lhs[i][j] - rhs[i][j];
                }
            }
        }
    }
    let sys = tmod.reduce_matrix(&sys);
    let ker = if params.is_empty() { vec![] } else { kernel_vectors_pub(&pmod, &tmod, &sys) };
    let mut out = Vec::new();
    for v in ker {
        let mut f = zeros(gy, gx);
        for (c, &(_, i, j)) in params.iter().enumerate() {
            f[i][j] = v[c] * scale(i, j);
        }
        out.push(y.reduce_matrix(&f));
    }
    Ok(out)
}

fn combination(y: &FiniteModule, gens: &[Mat], coeffs: &[i128]) -> Mat {
    let (gy, gx) = (y.gens(), gens.first().map_or(0, |m| m.first().map_or(0, |r| r.len())));
    let q = y.zmod().q;
    let mut f = zeros(gy, gx);
    for (g, &c) in gens.iter().zip(coeffs) {
        for i in 0..gy {
            for j in 0..gx {
                f[i][j] = (f[i][j] + c * g[i][j]) % q;
            }
        }
    }
    y.reduce_matrix(&f)
}

fn is_iso(x: &FiniteModule, y: &FiniteModule, f: &Mat) -> bool {
    ModuleMap::new(x.clone(), y.clone(), f.clone()).is_ok_and(|m| m.is_injective())
}

pub fn equivariant_isomorphism(x: &FiniteModule, y: &FiniteModule, budget: SearchBudget) -> Result<IsoVerdict> {
    if x.exps() != y.exps() {
        return Ok(IsoVerdict::NotIsomorphic(format!("groups differ: {:?} vs {:?}", x.exps(), y.exps())));
    }
    if x.gens() == 0 {
        return Ok(IsoVerdict::Isomorphic(vec![]));
    }
    let gens = hom_generators(x, y)?;
    if gens.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic("Hom_Γ(X, Y) = 0".into()));
    }
    // coefficient ranges: each generator is determined modulo p^{exponent of Y}
    let q = y.zmod().q;
    let total = (q as u128).checked_pow(gens.len() as u32);
    if total.is_some_and(|t| t <= budget.enumerate as u128) {
        let mut c = vec![0i128; gens.len()];
        loop {
            let f = combination(y, &gens, &c);
            if is_iso(x, y, &f) {
                return Ok(IsoVerdict::Isomorphic(f));
            }
            let mut k = 0;
            while k < c.len() {
                c[k] += 1;
                if c[k] < q {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == c.len() {
                return Ok(IsoVerdict::NotIsomorphic("no bijection in Hom_Γ(X, Y)".into()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.samples {
        let c: Vec<i128> = (0..gens.len()).map(|_| rng.gen_range(0..q)).collect();
        let f = combination(y, &gens, &c);
        if is_iso(x, y, &f) {
            return Ok(IsoVerdict::Isomorphic(f));
        }
    }
    Ok(IsoVerdict::Undetermined)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelFuneq {
    pub level: u32,
    pub a_exps: Vec<u32>,
    pub b_exps: Vec<u32>,
    pub groups_equal: bool,
    pub verdict: IsoVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuneqReport {
    pub valid: bool,
    /// |a_n| = |b_n| at every level.
    pub orders_equal: bool,
    pub profile: Option<LimitProfile>,
    pub levels: Vec<LevelFuneq>,
}

impl FuneqReport {
    pub fn all_isomorphic(&self) -> bool {
        self.valid && self.levels.iter().all(|l| matches!(l.verdict, IsoVerdict::Isomorphic(_)))
    }
    pub fn any_refuted(&self) -> bool {
        !self.valid || self.levels.iter().any(|l| !l.groups_equal || matches!(l.verdict, IsoVerdict::NotIsomorphic(_)))
    }
}

pub fn funeq_check(s: &GammaSystem, budget: SearchBudget) -> Result<FuneqReport> {
    let valid = validate(s).passed();
    let orders_equal = s.a_orders() == s.b_orders();
    if !valid {
        return Ok(FuneqReport { valid, orders_equal, profile: None, levels: vec![] });
    }
    let profile = limit_invariants(s)?;
    let (a, b) = profiles(s, s.top())?;
    let mut levels = Vec::new();
    for n in 0..=s.top() {
        let (x, y) = (&a[n as usize], sharp_module(&b[n as usize])?);
        let groups_equal = x.exps() == y.exps();
        let verdict = equivariant_isomorphism(x, &y, budget)?;
        levels.push(LevelFuneq { level: n, a_exps: x.exps().to_vec(), b_exps: y.exps().to_vec(), groups_equal, verdict });
    }
    Ok(FuneqReport { valid, orders_equal, profile: Some(profile), levels })
}
