//! Γ-systems {a_n, b_n, ⟨,⟩_n, r_m^n, k_m^n} truncated at a top level N, with
//! the axiom validator and the constructions acting on whole systems.

mod derived;
mod fourier;
mod funeq;
mod pieces;
mod synth;
mod twist;
mod validate;

pub use derived::{
    derived_pair, derived_prime, idempotent_split, is_strongly_controlled, kernel_system, scalar_system,
    torsion_system, KernelFamily, SplitSystems, StrongControl,
};
pub use fourier::{check1, fourier_hat, CharacterHom, FourierHat};
pub use funeq::{
    equivariant_isomorphism, funeq_check, limit_invariants, sharp_module, FuneqReport, IsoVerdict, LevelFuneq,
    LimitProfile, SearchBudget,
};
pub use pieces::{Piece, PieceSpec};
pub use synth::{from_torsion_module, Mode};
pub use twist::{twist_system, twistable_order};
pub use validate::{validate, Axiom, AxiomCheck, LevelSummary, Side, SystemReport, Witness};

use crate::error::{input, Result};
use crate::modules::{direct_sum as module_sum, FiniteModule, ModuleMap, PairingMatrix};
use num_rational::Ratio;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    pub a: FiniteModule,
    pub b: FiniteModule,
    pub pairing: PairingMatrix,
}

/// r goes up (level m to level n), k goes down (level n to level m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub r_a: ModuleMap,
    pub r_b: ModuleMap,
    pub k_a: ModuleMap,
    pub k_b: ModuleMap,
}

impl Transition {
    pub fn identity(l: &LevelData) -> Self {
        Transition {
            r_a: ModuleMap::identity(&l.a),
            r_b: ModuleMap::identity(&l.b),
            k_a: ModuleMap::identity(&l.a),
            k_b: ModuleMap::identity(&l.b),
        }
    }

    pub fn get(&self, which: MapKind) -> &ModuleMap {
        match which {
            MapKind::RA => &self.r_a,
            MapKind::RB => &self.r_b,
            MapKind::KA => &self.k_a,
            MapKind::KB => &self.k_b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum MapKind {
    RA,
    RB,
    KA,
    KB,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSystem {
    p: u64,
    d: usize,
    precision: u32,
    levels: Vec<LevelData>,
    transitions: BTreeMap<(u32, u32), Transition>,
}

impl GammaSystem {
    /// Structural checks only: shapes, sources and targets; axioms are left to `validate`.
    pub fn new(
        p: u64,
        d: usize,
        precision: u32,
        levels: Vec<LevelData>,
        transitions: BTreeMap<(u32, u32), Transition>,
    ) -> Result<Self> {
        crate::arith::check_prime(p)?;
        if levels.is_empty() {
            return input("a system needs at least level 0");
        }
        for (n, l) in levels.iter().enumerate() {
            for (name, m) in [("a", &l.a), ("b", &l.b)] {
                if m.p() != p || m.d() != d || m.level() != n as u32 {
                    return input(format!("{name}_{n} has the wrong prime, rank or level"));
                }
            }
            if l.pairing.left() != &l.a || l.pairing.right() != &l.b {
                return input(format!("pairing_{n} is not defined on a_{n} × b_{n}"));
            }
        }
        let top = levels.len() as u32 - 1;
        for n in 0..=top {
            for m in 0..=n {
                let t = transitions.get(&(m, n)).ok_or_else(|| crate::Error::Input(format!("missing maps for (m, n) = ({m}, {n})")))?;
                let (lm, ln) = (&levels[m as usize], &levels[n as usize]);
                let ok = t.r_a.source().exps() == lm.a.exps()
                    && t.r_a.target().exps() == ln.a.exps()
                    && t.r_b.source().exps() == lm.b.exps()
                    && t.r_b.target().exps() == ln.b.exps()
                    && t.k_a.source().exps() == ln.a.exps()
                    && t.k_a.target().exps() == lm.a.exps()
                    && t.k_b.source().exps() == ln.b.exps()
                    && t.k_b.target().exps() == lm.b.exps();
                if !ok {
                    return input(format!("maps for (m, n) = ({m}, {n}) do not respect the a/b factors"));
                }
            }
        }
        if transitions.keys().any(|&(m, n)| m > n || n > top) {
            return input("transition indices outside 0 ≤ m ≤ n ≤ N");
        }
        Ok(GammaSystem { p, d, precision, levels, transitions })
    }

    /// The one-level system with a_0 = b_0 = 0.
    pub fn trivial(p: u64, d: usize, precision: u32, top: u32) -> Result<Self> {
        let levels: Vec<LevelData> = (0..=top)
            .map(|n| {
                let z = FiniteModule::trivial(p, n, d);
                LevelData { pairing: PairingMatrix::zero(&z, &z), a: z.clone(), b: z }
            })
            .collect();
        let mut tr = BTreeMap::new();
        for n in 0..=top {
            for m in 0..=n {
                let (lm, ln) = (&levels[m as usize], &levels[n as usize]);
                tr.insert(
                    (m, n),
                    Transition {
                        r_a: ModuleMap::zero(&lm.a, &ln.a),
                        r_b: ModuleMap::zero(&lm.b, &ln.b),
                        k_a: ModuleMap::zero(&ln.a, &lm.a),
                        k_b: ModuleMap::zero(&ln.b, &lm.b),
                    },
                );
            }
        }
        Self::new(p, d, precision, levels, tr)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn top(&self) -> u32 {
        self.levels.len() as u32 - 1
    }
    pub fn level(&self, n: u32) -> &LevelData {
        &self.levels[n as usize]
    }
    pub fn levels(&self) -> &[LevelData] {
        &self.levels
    }
    pub fn transition(&self, m: u32, n: u32) -> &Transition {
        &self.transitions[&(m, n)]
    }
    pub fn transitions(&self) -> &BTreeMap<(u32, u32), Transition> {
        &self.transitions
    }

    /// Replace one transition matrix, keeping the structural checks; used to
    /// build faulty systems for the validator.
    pub fn with_map_matrix(&self, m: u32, n: u32, which: MapKind, matrix: crate::linalg::Mat) -> Result<Self> {
        let mut tr = self.transitions.clone();
        let t = tr.get_mut(&(m, n)).ok_or_else(|| crate::Error::Input(format!("no maps for ({m}, {n})")))?;
        let old = t.get(which).clone();
        let new = ModuleMap::new(old.source().clone(), old.target().clone(), matrix)?;
        match which {
            MapKind::RA => t.r_a = new,
            MapKind::RB => t.r_b = new,
            MapKind::KA => t.k_a = new,
            MapKind::KB => t.k_b = new,
        }
        Self::new(self.p, self.d, self.precision, self.levels.clone(), tr)
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        GammaSystem { precision, ..self.clone() }
    }

    /// log_p |a_n| for every level.
    pub fn a_orders(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.a.order_exp()).collect()
    }

    pub fn b_orders(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.b.order_exp()).collect()
    }
}

/// Pairing with entries ⟨e_i, f_j⟩ given by a function, over the common
/// denominator p^{max exponent}.
pub(crate) fn pairing_from_values(
    left: &FiniteModule,
    right: &FiniteModule,
    mut value: impl FnMut(usize, usize) -> Result<Ratio<i128>>,
) -> Result<PairingMatrix> {
    let e = left.exponent().max(right.exponent());
    let q = crate::arith::pow_i128(left.p(), e);
    let mut num = crate::linalg::zeros(left.gens(), right.gens());
    for (i, row) in num.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let v = value(i, j)? * Ratio::from_integer(q);
            if !v.is_integer() {
                return input(format!("pairing value ({i},{j}) has denominator beyond p^{e}"));
            }
            *x = v.to_integer();
        }
    }
    PairingMatrix::new(left.clone(), right.clone(), e, num)
}

/// A × B with the projector onto the first factor at every level.
#[derive(Debug, Clone)]
pub struct SystemSum {
    pub system: GammaSystem,
    pub first_a: Vec<crate::linalg::Mat>,
    pub first_b: Vec<crate::linalg::Mat>,
}

/// A × B level by level, with block-diagonal maps and pairings.
pub fn direct_sum(x: &GammaSystem, y: &GammaSystem) -> Result<SystemSum> {
    if x.p != y.p || x.d != y.d || x.top() != y.top() {
        return input("direct sum of systems with different (p, d, N)");
    }
    let mut levels = Vec::new();
    let mut sums = Vec::new();
    for n in 0..=x.top() {
        let (lx, ly) = (x.level(n), y.level(n));
        let sa = module_sum(&lx.a, &ly.a)?;
        let sb = module_sum(&lx.b, &ly.b)?;
        let pairing = pairing_from_values(&sa.module, &sb.module, |i, j| {
            let (ei, fj) = (sa.module.basis(i), sb.module.basis(j));
            Ok(lx.pairing.value(&sa.proj[0].apply(&ei), &sb.proj[0].apply(&fj))
                + ly.pairing.value(&sa.proj[1].apply(&ei), &sb.proj[1].apply(&fj)))
        })?;
        levels.push(LevelData { a: sa.module.clone(), b: sb.module.clone(), pairing });
        sums.push((sa, sb));
    }
    let block = |f: &ModuleMap, g: &ModuleMap, src: &crate::modules::DirectSum, dst: &crate::modules::DirectSum| {
        let h0 = dst.inj[0].compose(&f.compose(&src.proj[0])?)?;
        let h1 = dst.inj[1].compose(&g.compose(&src.proj[1])?)?;
        let g_src = src.module.gens();
        let cols: Vec<Vec<i128>> = (0..g_src)
            .map(|j| {
                let e = src.module.basis(j);
                dst.module.add(&h0.apply(&e), &h1.apply(&e))
            })
            .collect();
        let mut m = crate::linalg::zeros(dst.module.gens(), g_src);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dst.module.gens() {
                m[i][j] = c[i];
            }
        }
        ModuleMap::new(src.module.clone(), dst.module.clone(), m)
    };
    let mut tr = BTreeMap::new();
    for (&(m, n), tx) in &x.transitions {
        let ty = y.transition(m, n);
        let (sm, sn) = (&sums[m as usize], &sums[n as usize]);
        tr.insert(
            (m, n),
            Transition {
                r_a: block(&tx.r_a, &ty.r_a, &sm.0, &sn.0)?,
                r_b: block(&tx.r_b, &ty.r_b, &sm.1, &sn.1)?,
                k_a: block(&tx.k_a, &ty.k_a, &sn.0, &sm.0)?,
                k_b: block(&tx.k_b, &ty.k_b, &sn.1, &sm.1)?,
            },
        );
    }
    let projector = |s: &crate::modules::DirectSum| s.inj[0].compose(&s.proj[0]).map(|f| f.matrix().clone());
    let first_a = sums.iter().map(|(sa, _)| projector(sa)).collect::<Result<Vec<_>>>()?;
    let first_b = sums.iter().map(|(_, sb)| projector(sb)).collect::<Result<Vec<_>>>()?;
    let system = GammaSystem::new(x.p, x.d, x.precision.min(y.precision), levels, tr)?;
    Ok(SystemSum { system, first_a, first_b })
}
