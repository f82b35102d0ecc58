//! Subquotients X/(X ∩ Y) of the level modules, and the systems assembled
//! from them with induced maps and pairings.

use super::{pairing_from_values, GammaSystem, LevelData, Transition};
use crate::error::{input, Result};
use crate::linalg::Mat;
use crate::modules::{kernel, quotient, submodule, FiniteModule, ModuleMap, PairingMatrix, Quotient, Sub};
use std::collections::BTreeMap;

/// Generators of X and Y in ambient coordinates; `x = None` means X = ambient.
#[derive(Debug, Clone, Default)]
pub struct PieceSpec {
    pub x: Option<Vec<Vec<i128>>>,
    pub y: Vec<Vec<i128>>,
}

impl PieceSpec {
    pub fn whole() -> Self {
        PieceSpec::default()
    }
    pub fn sub(x: Vec<Vec<i128>>) -> Self {
        PieceSpec { x: Some(x), y: vec![] }
    }
    pub fn quotient(y: Vec<Vec<i128>>) -> Self {
        PieceSpec { x: None, y }
    }
    pub fn subquotient(x: Vec<Vec<i128>>, y: Vec<Vec<i128>>) -> Self {
        PieceSpec { x: Some(x), y }
    }
}

#[derive(Debug, Clone)]
pub struct Piece {
    pub module: FiniteModule,
    ambient: FiniteModule,
    x: Sub,
    q: Quotient,
}

impl Piece {
    pub fn new(ambient: &FiniteModule, spec: &PieceSpec) -> Result<Piece> {
        let all: Vec<Vec<i128>> = (0..ambient.gens()).map(|j| ambient.basis(j)).collect();
        let x = submodule(ambient, spec.x.as_ref().unwrap_or(&all))?;
        // X ∩ Y as the kernel of X → ambient/Y
        let qy = quotient(ambient, &spec.y)?;
        let to_qy = qy.projection.compose(&x.inclusion)?;
        let xy = kernel(&to_qy)?;
        let gens: Vec<Vec<i128>> = (0..xy.module.gens()).map(|j| xy.inclusion.apply(&xy.module.basis(j))).collect();
        let q = quotient(&x.module, &gens)?;
        Ok(Piece { module: q.module.clone(), ambient: ambient.clone(), x, q })
    }

    pub fn ambient(&self) -> &FiniteModule {
        &self.ambient
    }

    /// Ambient lift of a piece element.
    pub fn lift(&self, v: &[i128]) -> Vec<i128> {
        let g = self.x.module.gens();
        let mut inx = vec![0i128; g];
        for (j, &c) in v.iter().enumerate() {
            for (i, s) in inx.iter_mut().enumerate() {
                *s += c * self.q.section[i][j];
            }
        }
        self.x.inclusion.apply(&self.x.module.reduce(&inx))
    }

    /// Class of an ambient element; `None` when it lies outside X.
    pub fn project(&self, y: &[i128]) -> Option<Vec<i128>> {
        let pre = self.x.inclusion.preimage(y)?;
        Some(self.q.projection.apply(&pre))
    }

    pub fn lifts(&self) -> Vec<Vec<i128>> {
        (0..self.module.gens()).map(|j| self.lift(&self.module.basis(j))).collect()
    }
}

/// The map src → dst induced by an ambient map, or an error naming the
/// generator whose image leaves X_dst.
pub fn induced_map(f: &ModuleMap, src: &Piece, dst: &Piece, name: &str) -> Result<ModuleMap> {
    let g = src.module.gens();
    let mut m: Mat = crate::linalg::zeros(dst.module.gens(), g);
    for j in 0..g {
        let img = f.apply(&src.lift(&src.module.basis(j)));
        let Some(c) = dst.project(&img) else {
            return input(format!("{name}: generator {j} maps to {img:?}, outside the target piece"));
        };
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = c[i];
        }
    }
    ModuleMap::new(src.module.clone(), dst.module.clone(), m)
}

pub fn induced_pairing(pairing: &PairingMatrix, left: &Piece, right: &Piece) -> Result<PairingMatrix> {
    let (ll, rl) = (left.lifts(), right.lifts());
    pairing_from_values(&left.module, &right.module, |i, j| Ok(pairing.value(&ll[i], &rl[j])))
}

pub(crate) type PairingFn<'a> = dyn Fn(u32, &Piece, &Piece) -> Result<PairingMatrix> + 'a;

/// A system on the given pieces of `s`; `pairing` overrides the induced pairing.
pub(crate) fn assemble(s: &GammaSystem, a: &[Piece], b: &[Piece], pairing: Option<&PairingFn<'_>>) -> Result<GammaSystem> {
    let mut levels = Vec::new();
    for n in 0..=s.top() {
        let (pa, pb) = (&a[n as usize], &b[n as usize]);
        let pm = match pairing {
            Some(f) => f(n, pa, pb)?,
            None => induced_pairing(&s.level(n).pairing, pa, pb)?,
        };
        levels.push(LevelData { a: pa.module.clone(), b: pb.module.clone(), pairing: pm });
    }
    let mut tr = BTreeMap::new();
    for (&(m, n), t) in s.transitions() {
        let (am, an, bm, bn) = (&a[m as usize], &a[n as usize], &b[m as usize], &b[n as usize]);
        tr.insert(
            (m, n),
            Transition {
                r_a: induced_map(&t.r_a, am, an, &format!("r_a({m},{n})"))?,
                r_b: induced_map(&t.r_b, bm, bn, &format!("r_b({m},{n})"))?,
                k_a: induced_map(&t.k_a, an, am, &format!("k_a({m},{n})"))?,
                k_b: induced_map(&t.k_b, bn, bm, &format!("k_b({m},{n})"))?,
            },
        );
    }
    GammaSystem::new(s.p(), s.d(), s.precision(), levels, tr)
}

/// ⟨u, v⟩ := ⟨x, v⟩ for some x with λ x = u, on pieces of λa_n and λ^♯b_n.
pub(crate) fn divided_pairing(base: &PairingMatrix, lam: &Mat, left: &Piece, right: &Piece) -> Result<PairingMatrix> {
    let amb = left.ambient();
    let pre: Vec<Vec<i128>> = left
        .lifts()
        .iter()
        .map(|u| amb.solve_endo(lam, u).ok_or_else(|| crate::Error::Input("element outside λ·a".into())))
        .collect::<Result<_>>()?;
    let rl = right.lifts();
    pairing_from_values(&left.module, &right.module, |i, j| Ok(base.value(&pre[i], &rl[j])))
}
