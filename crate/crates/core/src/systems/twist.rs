//! A(φ) = {a_n(φ^{-1}), b_n(φ)}: γ acts by φ(γ)^{-1}γ on a_n and by φ(γ)γ on
//! b_n; pairings and transition maps are unchanged.

use super::{GammaSystem, LevelData, Transition};
use crate::algebra::UnitCharacter;
use crate::error::{input, precondition, Result};
use crate::modules::{FiniteModule, ModuleMap};
use std::collections::BTreeMap;

/// Smallest k ≥ 0 with p^{n+k} a_n = 0 for all n.
pub fn twistable_order(s: &GammaSystem) -> u32 {
    s.levels().iter().enumerate().map(|(n, l)| l.a.exponent().saturating_sub(n as u32)).max().unwrap_or(0)
}

fn scaled(m: &FiniteModule, u: &[i128]) -> Result<FiniteModule> {
    let q = m.zmod().q;
    let actions = m
        .actions()
        .iter()
        .zip(u)
        .map(|(a, &c)| a.iter().map(|r| r.iter().map(|&x| crate::arith::modp(c, q) * x % q).collect()).collect())
        .collect();
    FiniteModule::new(m.p(), m.level(), m.exps().to_vec(), actions)
}

pub fn twist_system(s: &GammaSystem, phi: &UnitCharacter) -> Result<GammaSystem> {
    if phi.p != s.p() || phi.u.len() != s.d() {
        return input("character is defined on a different Γ");
    }
    let k = twistable_order(s);
    if phi.congruence_level() < k {
        return precondition(format!(
            "φ ≡ 1 only mod {}^{}, the system needs φ(Γ) ⊆ 1 + {}^{k}",
            s.p(),
            phi.congruence_level(),
            s.p()
        ));
    }
    let top_exp = s.levels().iter().map(|l| l.a.exponent().max(l.b.exponent())).max().unwrap_or(0);
    if phi.m < top_exp {
        return precondition(format!("φ is known mod {}^{} but the modules need {}^{top_exp}", s.p(), phi.m, s.p()));
    }
    let inv = phi.inverse();
    let mut levels = Vec::new();
    for l in s.levels() {
        let a = scaled(&l.a, &inv.u)?;
        let b = scaled(&l.b, &phi.u)?;
        let pairing = l.pairing.with_modules(a.clone(), b.clone())?;
        levels.push(LevelData { a, b, pairing });
    }
    let remap = |f: &ModuleMap, src: &FiniteModule, dst: &FiniteModule| f.with_modules(src.clone(), dst.clone());
    let mut tr = BTreeMap::new();
    for (&(m, n), t) in s.transitions() {
        let (lm, ln) = (&levels[m as usize], &levels[n as usize]);
        tr.insert(
            (m, n),
            Transition {
                r_a: remap(&t.r_a, &lm.a, &ln.a)?,
                r_b: remap(&t.r_b, &lm.b, &ln.b)?,
                k_a: remap(&t.k_a, &ln.a, &lm.a)?,
                k_b: remap(&t.k_b, &ln.b, &lm.b)?,
            },
        );
    }
    GammaSystem::new(s.p(), s.d(), s.precision().max(phi.m), levels, tr)
}
