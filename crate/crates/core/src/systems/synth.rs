//! The standard system attached to M = ⊕ Λ/(ξ_i^{r_i}): b_n = M/I_n M (or its
//! p-power torsion), k = projection, r = multiplication by the norm, and
//! a_n = b_n^∨ with the adjoint maps and the evaluation pairing.

use super::{GammaSystem, LevelData, Transition};
use crate::algebra::{group_elements, AlgebraElement};
use crate::error::{precondition, Result};
use crate::ideals::{multiplication_matrix, ElementaryModule};
use crate::linalg::{bareiss_rank, mul_mod, zeros, Mat};
use crate::modules::module::normalize;
use crate::modules::{dual, dual_map, FiniteModule, ModuleMap, Normalized, PairingMatrix};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// b_n = M/I_n M; needs ω(ξ) ≠ 0 for every character of Γ_N.
    Full,
    /// b_n = p-power torsion of M/I_n M.
    Torsion,
}

/// Z_p-lattice of level n: coordinates (factor i, group element j) ↦ i·F + j.
struct Lattice {
    p: u64,
    d: usize,
    level: u32,
    elems: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Multiplication by ξ_i^{r_i}, one block per factor.
    blocks: Vec<Vec<Vec<num_bigint::BigInt>>>,
}

impl Lattice {
    fn new(m: &ElementaryModule, level: u32, powers: &[AlgebraElement]) -> Result<Self> {
        let elems = group_elements(m.p, level, m.d);
        let index = elems.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let blocks = powers.iter().map(|x| multiplication_matrix(x, m.p, level)).collect::<Result<Vec<_>>>()?;
        Ok(Lattice { p: m.p, d: m.d, level, elems, index, blocks })
    }

    fn f(&self) -> usize {
        self.elems.len()
    }

    fn rank(&self) -> usize {
        self.blocks.len() * self.f()
    }

    /// Z_p-rank of the cokernel.
    fn free_rank(&self) -> usize {
        self.blocks.iter().map(|b| self.f() - bareiss_rank(b, self.f())).sum()
    }

    fn relations(&self, q: i128) -> Vec<Vec<i128>> {
        let f = self.f();
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for j in 0..f {
                let mut v = vec![0; self.rank()];
                for r in 0..f {
                    v[i * f + r] = crate::arith::big_mod_i128(&b[r][j], q);
                }
                out.push(v);
            }
        }
        out
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let q = (self.p as i64).pow(self.level);
        v.iter().map(|a| a.rem_euclid(q)).collect()
    }

    fn actions(&self) -> Vec<Mat> {
        let (f, g) = (self.f(), self.rank());
        (0..self.d)
            .map(|k| {
                let mut a = zeros(g, g);
                for (j, v) in self.elems.iter().enumerate() {
                    let mut w = v.clone();
                    w[k] += 1;
                    let t = self.index[&self.reduce(&w)];
                    for i in 0..self.blocks.len() {
                        a[i * f + t][i * f + j] = 1;
                    }
                }
                a
            })
            .collect()
    }

    fn present(&self, e: u32) -> Result<Normalized> {
        let q = crate::arith::checked_pow(self.p, e)?;
        normalize(self.p, self.level, e, self.rank(), &self.relations(q), &self.actions())
    }
}

/// Projection Λ_n → Λ_m in lattice coordinates.
fn projection_matrix(hi: &Lattice, lo: &Lattice) -> Mat {
    let (fh, fl) = (hi.f(), lo.f());
    let mut a = zeros(lo.rank(), hi.rank());
    for (j, v) in hi.elems.iter().enumerate() {
        let t = lo.index[&lo.reduce(v)];
        for i in 0..hi.blocks.len() {
            a[i * fl + t][i * fh + j] = 1;
        }
    }
    a
}

/// x ↦ Nm_{Γ_n/Γ_m}·x̃ from level m to level n.
fn norm_matrix(lo: &Lattice, hi: &Lattice) -> Mat {
    let (fh, fl) = (hi.f(), lo.f());
    let step = (lo.p as i64).pow(lo.level);
    let kernel = group_elements(lo.p, hi.level - lo.level, lo.d);
    let mut a = zeros(hi.rank(), lo.rank());
    for (j, w) in lo.elems.iter().enumerate() {
        for k in &kernel {
            let v: Vec<i64> = w.iter().zip(k).map(|(x, y)| x + step * y).collect();
            let t = hi.index[&hi.reduce(&v)];
            for i in 0..lo.blocks.len() {
                a[i * fh + t][i * fl + j] += 1;
            }
        }
    }
    a
}

/// Level data in Smith coordinates, cut down to the first `tors` generators.
struct Presented {
    nz: Normalized,
    tors: usize,
    module: FiniteModule,
}

fn cut(nz: Normalized, e: u32) -> Result<Presented> {
    let exps = nz.module.exps();
    let tors = exps.iter().take_while(|&&v| v < e).count();
    let actions: Vec<Mat> = nz.module.actions().iter().map(|a| a[..tors].iter().map(|r| r[..tors].to_vec()).collect()).collect();
    let module = FiniteModule::new(nz.module.p(), nz.module.level(), exps[..tors].to_vec(), actions)?;
    Ok(Presented { nz, tors, module })
}

/// The induced map on the torsion blocks, after checking on each source
/// relation that the lattice map is well defined modulo p^E.
fn induced(map: &Mat, src: &Presented, src_lat: &Lattice, dst: &Presented, e: u32, name: &str) -> Result<ModuleMap> {
    let q = crate::arith::checked_pow(src_lat.p, e)?;
    for rel in src_lat.relations(q) {
        let img = crate::linalg::mul_vec_mod(map, &rel, q);
        let img = crate::linalg::mul_vec_mod(&dst.nz.to_new, &img, q);
        if !dst.nz.module.is_zero(&img) {
            return precondition(format!("{name} does not carry relations into relations"));
        }
    }
    let from: Mat = src.nz.from_new.iter().map(|r| r[..src.tors].to_vec()).collect();
    let to: Mat = dst.nz.to_new[..dst.tors].to_vec();
    let mid = if src.tors == 0 { zeros(map.len(), 0) } else { mul_mod(map, &from, src_lat.rank(), q) };
    let m = if dst.tors == 0 || src.tors == 0 { zeros(dst.tors, src.tors) } else { mul_mod(&to, &mid, dst_lat_rank(&dst.nz), q) };
    ModuleMap::new(src.module.clone(), dst.module.clone(), m)
}

fn dst_lat_rank(nz: &Normalized) -> usize {
    nz.from_new.len()
}

/// Synthetic system up to level `top`; `budget` caps |Γ_N|.
pub fn from_torsion_module(m: &ElementaryModule, top: u32, mode: Mode, budget: u128) -> Result<GammaSystem> {
    let (p, d) = (m.p, m.d);
    let required = (p as u128).checked_pow(top * d as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(crate::Error::Budget { required, budget });
    }
    if m.is_zero_module() {
        return GammaSystem::trivial(p, d, 1, top);
    }
    let powers: Vec<AlgebraElement> = m
        .factors
        .iter()
        .map(|f| f.xi.to_integer_lift(true).map(|x| x.pow(f.r)))
        .collect::<Result<_>>()?;
    if mode == Mode::Full {
        for (i, x) in powers.iter().enumerate() {
            if let Some(w) = crate::flats::zero_set_level(x, p, top, budget)?.into_iter().next() {
                return precondition(format!("mode full: factors[{i}] vanishes at the character {w}"));
            }
        }
    }
    let lattices = (0..=top).map(|n| Lattice::new(m, n, &powers)).collect::<Result<Vec<_>>>()?;

    // largest torsion exponent over all levels
    let mut t = 0;
    for lat in &lattices {
        let f = lat.free_rank();
        if mode == Mode::Full && f > 0 {
            return precondition(format!("mode full: M/I_{} M has Z_p-rank {f}", lat.level));
        }
        let mut e = 1;
        loop {
            let nz = lat.present(e)?;
            if nz.module.exps().iter().filter(|&&v| v == e).count() == f {
                t = t.max(nz.module.exps().iter().copied().filter(|&v| v < e).max().unwrap_or(0));
                break;
            }
            e += 1;
        }
    }
    // torsion mode: with E ≥ 2t the torsion block is the quotient of M̄[p^t]
    // by its intersection with p^{E-t}M̄, so the block maps are canonical
    let e = match mode {
        Mode::Full => t + 1,
        Mode::Torsion => 2 * t + 2,
    };
    let pres =
        lattices.iter().map(|lat| cut(lat.present(e)?, e)).collect::<Result<Vec<_>>>()?;

    let duals = pres.iter().map(|x| dual(&x.module)).collect::<Result<Vec<_>>>()?;
    let levels: Vec<LevelData> = pres
        .iter()
        .zip(&duals)
        .map(|(b, a)| Ok(LevelData { pairing: PairingMatrix::evaluation(a, &b.module)?, a: a.clone(), b: b.module.clone() }))
        .collect::<Result<_>>()?;

    let mut tr = BTreeMap::new();
    for n in 0..=top {
        for lo in 0..=n {
            let (hl, ll) = (&lattices[n as usize], &lattices[lo as usize]);
            let (hp, lp) = (&pres[n as usize], &pres[lo as usize]);
            let k_b = induced(&projection_matrix(hl, ll), hp, hl, lp, e, "k")?;
            let r_b = induced(&norm_matrix(ll, hl), lp, ll, hp, e, "r")?;
            let (ah, al) = (&duals[n as usize], &duals[lo as usize]);
            // k_a = r_b^∨ : a_n → a_m, r_a = k_b^∨ : a_m → a_n
            let k_a = dual_map(&r_b, al, ah)?;
            let r_a = dual_map(&k_b, ah, al)?;
            tr.insert((lo, n), Transition { r_a, r_b, k_a, k_b });
        }
    }
    GammaSystem::new(p, d, e, levels, tr)
}
