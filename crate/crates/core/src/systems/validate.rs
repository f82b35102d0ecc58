//! Axioms (Γ-1)–(Γ-4), checked on generators at every level and level pair.

use super::{GammaSystem, MapKind};
use crate::algebra::norm_element;
use crate::modules::{ActionDefect, FiniteModule, ModuleMap};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    Gamma1,
    Gamma2,
    Gamma3,
    Gamma4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

/// A concrete violation; every field is enough to recheck it by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    Action { side: Side, level: u32, defect: ActionDefect },
    NotIdentity { map: MapKind, level: u32, generator: usize },
    NotTransitive { map: MapKind, m: u32, l: u32, n: u32, generator: usize },
    NotEquivariant { map: MapKind, m: u32, n: u32, gamma: usize, generator: usize },
    /// r∘k differs from the norm on a generator of level n.
    Norm { side: Side, m: u32, n: u32, generator: usize, lhs: Vec<i128>, rhs: Vec<i128> },
    /// k∘r differs from p^{d(n-m)} on a generator of level m.
    Multiplication { side: Side, m: u32, n: u32, generator: usize, lhs: Vec<i128>, rhs: Vec<i128> },
    OrderMismatch { level: u32, a: u32, b: u32 },
    Radical { level: u32, element: Vec<i128> },
    NotInvariant { level: u32, gamma: usize, a_generator: usize, b_generator: usize },
    /// `first`: ⟨a, r b⟩_n against ⟨k a, b⟩_m; otherwise ⟨r a, b⟩_n against ⟨a, k b⟩_m.
    Adjoint { m: u32, n: u32, first: bool, a_generator: usize, b_generator: usize, lhs: [i128; 2], rhs: [i128; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// (m, n); (n, n) for single-level checks.
    pub levels: (u32, u32),
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: u32,
    pub a_exps: Vec<u32>,
    pub b_exps: Vec<u32>,
    pub a_order_exp: u32,
    pub b_order_exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub p: u64,
    pub d: usize,
    pub top: u32,
    pub checks: Vec<AxiomCheck>,
    pub summary: Vec<LevelSummary>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn axiom_passed(&self, ax: Axiom) -> bool {
        self.checks.iter().filter(|c| c.axiom == ax).all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn check(axiom: Axiom, levels: (u32, u32), witness: Option<Witness>) -> AxiomCheck {
    AxiomCheck { axiom, levels, passed: witness.is_none(), witness }
}

fn diff(m: &FiniteModule, x: &[i128], y: &[i128]) -> bool {
    !m.is_zero(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
}

fn ratio_pair(r: Ratio<i128>) -> [i128; 2] {
    [*r.numer(), *r.denom()]
}

fn level_checks(s: &GammaSystem, n: u32) -> Vec<AxiomCheck> {
    let l = s.level(n);
    let mut out = Vec::new();
    let mut g1 = None;
    for (side, m) in [(Side::A, &l.a), (Side::B, &l.b)] {
        if let Some(defect) = m.action_defects().into_iter().next() {
            g1 = Some(Witness::Action { side, level: n, defect });
            break;
        }
    }
    out.push(check(Axiom::Gamma1, (n, n), g1));
    let w = if l.a.order_exp() != l.b.order_exp() {
        Some(Witness::OrderMismatch { level: n, a: l.a.order_exp(), b: l.b.order_exp() })
    } else if !l.pairing.is_perfect() {
        Some(Witness::Radical { level: n, element: l.pairing.left_radical_witness().unwrap_or_default() })
    } else {
        l.pairing.invariance_defect().map(|(k, i, j)| Witness::NotInvariant { level: n, gamma: k, a_generator: i, b_generator: j })
    };
    out.push(check(Axiom::Gamma4, (n, n), w));
    out
}

fn first_diff_gen(f: &ModuleMap, g: &ModuleMap) -> Option<usize> {
    f.first_difference(g)
}

fn pair_checks(s: &GammaSystem, m: u32, n: u32) -> Vec<AxiomCheck> {
    let t = s.transition(m, n);
    let (lm, ln) = (s.level(m), s.level(n));
    let mut out = Vec::new();

    // (Γ-2)
    let mut w = None;
    let kinds = [MapKind::RA, MapKind::RB, MapKind::KA, MapKind::KB];
    if m == n {
        for k in kinds {
            let f = t.get(k);
            if let Some(g) = first_diff_gen(f, &ModuleMap::identity(f.source())) {
                w = Some(Witness::NotIdentity { map: k, level: n, generator: g });
                break;
            }
        }
    }
    if w.is_none() {
        for k in kinds {
            if let Some((gamma, g)) = t.get(k).equivariance_defect() {
                w = Some(Witness::NotEquivariant { map: k, m, n, gamma, generator: g });
                break;
            }
        }
    }
    if w.is_none() {
        'outer: for l in m + 1..n {
            let (lo, hi) = (s.transition(m, l), s.transition(l, n));
            for k in kinds {
                let composed = match k {
                    MapKind::RA => hi.r_a.compose(&lo.r_a),
                    MapKind::RB => hi.r_b.compose(&lo.r_b),
                    MapKind::KA => lo.k_a.compose(&hi.k_a),
                    MapKind::KB => lo.k_b.compose(&hi.k_b),
                };
                let Ok(c) = composed else { continue };
                if let Some(g) = first_diff_gen(t.get(k), &c) {
                    w = Some(Witness::NotTransitive { map: k, m, l, n, generator: g });
                    break 'outer;
                }
            }
        }
    }
    out.push(check(Axiom::Gamma2, (m, n), w));

    // (Γ-3)
    let mut w = None;
    let nm = norm_element(s.p(), s.d(), n, m).expect("n ≥ m");
    let scalar = (s.p() as i128).pow(s.d() as u32 * (n - m));
    for (side, top, r, k) in [(Side::A, &ln.a, &t.r_a, &t.k_a), (Side::B, &ln.b, &t.r_b, &t.k_b)] {
        let Ok(nmat) = top.algebra_matrix(&nm) else { continue };
        for j in 0..top.gens() {
            let e = top.basis(j);
            let lhs = r.apply(&k.apply(&e));
            let rhs = top.apply(&nmat, &e);
            if diff(top, &lhs, &rhs) {
                w = Some(Witness::Norm { side, m, n, generator: j, lhs, rhs });
                break;
            }
        }
        if w.is_some() {
            break;
        }
    }
    if w.is_none() {
        for (side, bottom, r, k) in [(Side::A, &lm.a, &t.r_a, &t.k_a), (Side::B, &lm.b, &t.r_b, &t.k_b)] {
            for j in 0..bottom.gens() {
                let e = bottom.basis(j);
                let lhs = k.apply(&r.apply(&e));
                let rhs = bottom.scale(scalar, &e);
                if diff(bottom, &lhs, &rhs) {
                    w = Some(Witness::Multiplication { side, m, n, generator: j, lhs, rhs });
                    break;
                }
            }
            if w.is_some() {
                break;
            }
        }
    }
    out.push(check(Axiom::Gamma3, (m, n), w));

    // (Γ-4) adjointness
    let mut w = None;
    'adj: for i in 0..ln.a.gens() {
        let a = ln.a.basis(i);
        let ka = t.k_a.apply(&a);
        for j in 0..lm.b.gens() {
            let b = lm.b.basis(j);
            let lhs = ln.pairing.value(&a, &t.r_b.apply(&b));
            let rhs = lm.pairing.value(&ka, &b);
            if lhs != rhs {
                w = Some(Witness::Adjoint { m, n, first: true, a_generator: i, b_generator: j, lhs: ratio_pair(lhs), rhs: ratio_pair(rhs) });
                break 'adj;
            }
        }
    }
    if w.is_none() {
        'adj2: for i in 0..lm.a.gens() {
            let a = lm.a.basis(i);
            let ra = t.r_a.apply(&a);
            for j in 0..ln.b.gens() {
                let b = ln.b.basis(j);
                let lhs = ln.pairing.value(&ra, &b);
                let rhs = lm.pairing.value(&a, &t.k_b.apply(&b));
                if lhs != rhs {
                    w = Some(Witness::Adjoint { m, n, first: false, a_generator: i, b_generator: j, lhs: ratio_pair(lhs), rhs: ratio_pair(rhs) });
                    break 'adj2;
                }
            }
        }
    }
    out.push(check(Axiom::Gamma4, (m, n), w));
    out
}

pub fn validate(s: &GammaSystem) -> SystemReport {
    let top = s.top();
    let mut checks: Vec<AxiomCheck> = (0..=top).into_par_iter().flat_map_iter(|n| level_checks(s, n)).collect();
    let pairs: Vec<(u32, u32)> = s.transitions().keys().copied().collect();
    checks.extend(pairs.par_iter().flat_map_iter(|&(m, n)| pair_checks(s, m, n)).collect::<Vec<_>>());
    checks.sort_by(|x, y| (x.axiom, x.levels).cmp(&(y.axiom, y.levels)));
    let summary = (0..=top)
        .map(|n| {
            let l = s.level(n);
            LevelSummary {
                level: n,
                a_exps: l.a.exps().to_vec(),
                b_exps: l.b.exps().to_vec(),
                a_order_exp: l.a.order_exp(),
                b_order_exp: l.b.order_exp(),
            }
        })
        .collect();
    SystemReport { p: s.p(), d: s.d(), top, checks, summary }
}
