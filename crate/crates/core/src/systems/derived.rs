//! Systems derived from a given one: kernels of the restriction maps, the
//! pair (C, E) cut out by a stable family c_n, the strongly controlled A′,
//! λ·A and A[λ], and splittings by idempotents.

use super::pieces::{assemble, divided_pairing, Piece, PieceSpec};
use super::{GammaSystem, Side};
use crate::algebra::AlgebraElement;
use crate::error::{input, Result};
use crate::linalg::Mat;
use crate::modules::{annihilator_left, annihilator_right, kernel, FiniteModule, ModuleMap, Sub};
use serde::Serialize;

fn gens_of(sub: &Sub) -> Vec<Vec<i128>> {
    (0..sub.module.gens()).map(|j| sub.inclusion.apply(&sub.module.basis(j))).collect()
}

fn zero_sub(m: &FiniteModule) -> Result<Sub> {
    crate::modules::submodule(m, &[])
}

/// a_n⁰ × b_n⁰ = Ker(r_n^N) for n < N and 0 at n = N.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    pub a0: Vec<Sub>,
    pub b0: Vec<Sub>,
    /// Per level: |Ker(r_n^N)| = |Ker(r_n^{N-1})|; true at n = N.
    pub stabilized: Vec<bool>,
}

impl KernelFamily {
    pub fn a_orders(&self) -> Vec<u32> {
        self.a0.iter().map(|s| s.module.order_exp()).collect()
    }
    pub fn b_orders(&self) -> Vec<u32> {
        self.b0.iter().map(|s| s.module.order_exp()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.a0.iter().chain(&self.b0).all(|s| s.module.is_zero_module())
    }
    pub fn all_stabilized(&self) -> bool {
        self.stabilized.iter().all(|&x| x)
    }
}

pub fn kernel_system(s: &GammaSystem) -> Result<KernelFamily> {
    let top = s.top();
    let (mut a0, mut b0, mut stabilized) = (Vec::new(), Vec::new(), Vec::new());
    for n in 0..=top {
        let l = s.level(n);
        if n == top {
            a0.push(zero_sub(&l.a)?);
            b0.push(zero_sub(&l.b)?);
            stabilized.push(true);
            continue;
        }
        let t = s.transition(n, top);
        let (ka, kb) = (kernel(&t.r_a)?, kernel(&t.r_b)?);
        let prev = s.transition(n, top - 1);
        let (pa, pb) = (kernel(&prev.r_a)?, kernel(&prev.r_b)?);
        stabilized.push(pa.module.order_exp() == ka.module.order_exp() && pb.module.order_exp() == kb.module.order_exp());
        a0.push(ka);
        b0.push(kb);
    }
    Ok(KernelFamily { a0, b0, stabilized })
}

/// Both characterizations of strong control, computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongControl {
    /// Every r_m^n is injective.
    pub r_injective: bool,
    /// Every k_m^n is surjective.
    pub k_surjective: bool,
    /// (side, m, n, element of Ker r_m^n).
    pub kernel_witness: Option<(Side, u32, u32, Vec<i128>)>,
    /// (side, m, n, generator of level m missing from the image of k_m^n).
    pub cokernel_witness: Option<(Side, u32, u32, usize)>,
}

impl StrongControl {
    pub fn holds(&self) -> bool {
        self.r_injective && self.k_surjective
    }
    pub fn consistent(&self) -> bool {
        self.r_injective == self.k_surjective
    }
}

pub fn is_strongly_controlled(s: &GammaSystem) -> StrongControl {
    let (mut kw, mut cw) = (None, None);
    for (&(m, n), t) in s.transitions() {
        for (side, r, k) in [(Side::A, &t.r_a, &t.k_a), (Side::B, &t.r_b, &t.k_b)] {
            if kw.is_none() {
                if let Some(x) = r.kernel_generators().into_iter().next() {
                    kw = Some((side, m, n, x));
                }
            }
            if cw.is_none() {
                if let Some(j) = k.cokernel_witness() {
                    cw = Some((side, m, n, j));
                }
            }
        }
    }
    StrongControl { r_injective: kw.is_none(), k_surjective: cw.is_none(), kernel_witness: kw, cokernel_witness: cw }
}

/// (C, E) from c_n ⊆ a_n: C = (c_n, b_n/f_n), E = (a_n/c_n, f_n), f_n = c_n^⊥.
pub fn derived_pair(s: &GammaSystem, c: &[Vec<Vec<i128>>]) -> Result<(GammaSystem, GammaSystem)> {
    if c.len() != s.levels().len() {
        return input(format!("c needs {} levels, got {}", s.levels().len(), c.len()));
    }
    let (mut ca, mut cb, mut ea, mut eb) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (n, gens) in c.iter().enumerate() {
        let l = s.level(n as u32);
        let csub = crate::modules::submodule(&l.a, gens)?;
        let cg = gens_of(&csub);
        let f = gens_of(&annihilator_right(&l.pairing, &cg)?);
        ca.push(Piece::new(&l.a, &PieceSpec::sub(cg.clone()))?);
        cb.push(Piece::new(&l.b, &PieceSpec::quotient(f.clone()))?);
        ea.push(Piece::new(&l.a, &PieceSpec::quotient(cg))?);
        eb.push(Piece::new(&l.b, &PieceSpec::sub(f))?);
    }
    let unstable = |e: crate::Error| match e {
        crate::Error::Input(msg) => crate::Error::Input(format!("c is not stable: {msg}")),
        other => other,
    };
    let big_c = assemble(s, &ca, &cb, None).map_err(unstable)?;
    let big_e = assemble(s, &ea, &eb, None).map_err(unstable)?;
    Ok((big_c, big_e))
}

/// A′ = image(a¹ × b¹ → a/a⁰ × b/b⁰) with a¹ = (b⁰)^⊥, b¹ = (a⁰)^⊥.
pub fn derived_prime(s: &GammaSystem) -> Result<GammaSystem> {
    let k = kernel_system(s)?;
    let (mut pa, mut pb) = (Vec::new(), Vec::new());
    for n in 0..=s.top() {
        let l = s.level(n);
        let (a0, b0) = (gens_of(&k.a0[n as usize]), gens_of(&k.b0[n as usize]));
        let a1 = gens_of(&annihilator_left(&l.pairing, &b0)?);
        let b1 = gens_of(&annihilator_right(&l.pairing, &a0)?);
        pa.push(Piece::new(&l.a, &PieceSpec::subquotient(a1, a0))?);
        pb.push(Piece::new(&l.b, &PieceSpec::subquotient(b1, b0))?);
    }
    assemble(s, &pa, &pb, None)
}

fn column_images(m: &FiniteModule, a: &Mat) -> Vec<Vec<i128>> {
    (0..m.gens()).map(|j| m.apply(a, &m.basis(j))).collect()
}

/// λ·A = {λa_n, λ^♯b_n} with ⟨λx, y⟩ := ⟨x, y⟩.
pub fn scalar_system(s: &GammaSystem, lambda: &AlgebraElement) -> Result<GammaSystem> {
    let sharp = lambda.sharp();
    let (mut pa, mut pb, mut mats) = (Vec::new(), Vec::new(), Vec::new());
    for l in s.levels() {
        let la = l.a.algebra_matrix(lambda)?;
        let lb = l.b.algebra_matrix(&sharp)?;
        pa.push(Piece::new(&l.a, &PieceSpec::sub(column_images(&l.a, &la)))?);
        pb.push(Piece::new(&l.b, &PieceSpec::sub(column_images(&l.b, &lb)))?);
        mats.push(la);
    }
    let f = |n: u32, x: &Piece, y: &Piece| divided_pairing(&s.level(n).pairing, &mats[n as usize], x, y);
    assemble(s, &pa, &pb, Some(&f))
}

/// A[λ] = {a_n[λ], b_n/λ^♯b_n}.
pub fn torsion_system(s: &GammaSystem, lambda: &AlgebraElement) -> Result<GammaSystem> {
    let sharp = lambda.sharp();
    let (mut pa, mut pb) = (Vec::new(), Vec::new());
    for l in s.levels() {
        let la = ModuleMap::new(l.a.clone(), l.a.clone(), l.a.algebra_matrix(lambda)?)?;
        let lb = l.b.algebra_matrix(&sharp)?;
        pa.push(Piece::new(&l.a, &PieceSpec::sub(gens_of(&kernel(&la)?)))?);
        pb.push(Piece::new(&l.b, &PieceSpec::quotient(column_images(&l.b, &lb)))?);
    }
    assemble(s, &pa, &pb, None)
}

#[derive(Debug, Clone)]
pub struct SplitSystems {
    pub first: GammaSystem,
    pub second: GammaSystem,
}

fn same_endo(m: &FiniteModule, x: &Mat, y: &Mat) -> Option<usize> {
    (0..m.gens()).find(|&j| {
        let e = m.basis(j);
        let (u, v) = (m.apply(x, &e), m.apply(y, &e));
        !m.is_zero(&u.iter().zip(&v).map(|(a, b)| a - b).collect::<Vec<_>>())
    })
}

fn complement(m: &FiniteModule, e: &Mat) -> Mat {
    let mut c = m.one_mat();
    for (i, row) in c.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x -= e[i][j];
        }
    }
    m.reduce_matrix(&c)
}

/// (e·A, (1−e)·A) for an equivariant idempotent family ea on a with adjoint eb on b.
pub fn idempotent_split(s: &GammaSystem, ea: &[Mat], eb: &[Mat]) -> Result<SplitSystems> {
    let nl = s.levels().len();
    if ea.len() != nl || eb.len() != nl {
        return input(format!("idempotents needed at {nl} levels"));
    }
    let mut maps = Vec::new();
    for (n, l) in s.levels().iter().enumerate() {
        let fa = ModuleMap::new(l.a.clone(), l.a.clone(), ea[n].clone())?;
        let fb = ModuleMap::new(l.b.clone(), l.b.clone(), eb[n].clone())?;
        for (name, m, f) in [("ea", &l.a, &fa), ("eb", &l.b, &fb)] {
            if let Some(j) = same_endo(m, &m.compose(f.matrix(), f.matrix()), f.matrix()) {
                return input(format!("{name}_{n} is not idempotent on generator {j}"));
            }
            if let Some((g, j)) = f.equivariance_defect() {
                return input(format!("{name}_{n} does not commute with γ{} on generator {j}", g + 1));
            }
        }
        for i in 0..l.a.gens() {
            for j in 0..l.b.gens() {
                let (x, y) = (l.a.basis(i), l.b.basis(j));
                if l.pairing.value(&fa.apply(&x), &y) != l.pairing.value(&x, &fb.apply(&y)) {
                    return input(format!("level {n}: ⟨ea·e_{i}, f_{j}⟩ ≠ ⟨e_{i}, eb·f_{j}⟩"));
                }
            }
        }
        maps.push((fa, fb));
    }
    for (&(m, n), t) in s.transitions() {
        let (lo, hi) = (&maps[m as usize], &maps[n as usize]);
        let checks = [
            ("r_a", hi.0.compose(&t.r_a)?, t.r_a.compose(&lo.0)?),
            ("r_b", hi.1.compose(&t.r_b)?, t.r_b.compose(&lo.1)?),
            ("k_a", lo.0.compose(&t.k_a)?, t.k_a.compose(&hi.0)?),
            ("k_b", lo.1.compose(&t.k_b)?, t.k_b.compose(&hi.1)?),
        ];
        for (name, x, y) in checks {
            if let Some(j) = x.first_difference(&y) {
                return input(format!("idempotents do not commute with {name}({m},{n}) on generator {j}"));
            }
        }
    }
    let mut parts = [(Vec::new(), Vec::new()), (Vec::new(), Vec::new())];
    for (n, l) in s.levels().iter().enumerate() {
        let (ca, cb) = (complement(&l.a, &ea[n]), complement(&l.b, &eb[n]));
        for (k, (xa, xb)) in [(&ea[n], &eb[n]), (&ca, &cb)].into_iter().enumerate() {
            parts[k].0.push(Piece::new(&l.a, &PieceSpec::sub(column_images(&l.a, xa)))?);
            parts[k].1.push(Piece::new(&l.b, &PieceSpec::sub(column_images(&l.b, xb)))?);
        }
    }
    let [(a1, b1), (a2, b2)] = parts;
    Ok(SplitSystems { first: assemble(s, &a1, &b1, None)?, second: assemble(s, &a2, &b2, None)? })
}
