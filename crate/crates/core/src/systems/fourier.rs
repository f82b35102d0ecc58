//! f ↦ f̂ from Hom(b_n, Q/Z) to Hom_{Λ_n}(b_n, Q_n/Λ_n), f̂(x) = Σ_γ f(γ^{-1}x)γ.

use super::GammaSystem;
use crate::algebra::group_elements;
use crate::error::{input, Result};
use crate::modules::FiniteModule;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

/// A homomorphism b_n → Q/Z by its values on the generators, kept in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterHom {
    pub level: u32,
    pub values: Vec<Ratio<i128>>,
}

fn frac(x: Ratio<i128>) -> Ratio<i128> {
    x - x.floor()
}

impl CharacterHom {
    /// Checks p^{b_j} f(e_j) ∈ Z.
    pub fn new(m: &FiniteModule, values: Vec<Ratio<i128>>) -> Result<Self> {
        if values.len() != m.gens() {
            return input(format!("{} values for {} generators", values.len(), m.gens()));
        }
        for (j, v) in values.iter().enumerate() {
            if !(v * Ratio::from_integer(m.modulus(j))).is_integer() {
                return input(format!("value {v} on generator {j} is not killed by its order"));
            }
        }
        Ok(CharacterHom { level: m.level(), values: values.into_iter().map(frac).collect() })
    }

    pub fn eval(&self, x: &[i128]) -> Ratio<i128> {
        frac(x.iter().zip(&self.values).fold(Ratio::zero(), |acc, (&c, v)| acc + v * Ratio::from_integer(c)))
    }

    /// f ∘ g for a map g given by its matrix (columns are generator images).
    pub fn pullback(&self, g: &crate::modules::ModuleMap) -> CharacterHom {
        let src = g.source();
        CharacterHom { level: src.level(), values: (0..src.gens()).map(|j| self.eval(&g.apply(&src.basis(j)))).collect() }
    }
}

/// f̂ on the generators: `columns[j][k]` is the coefficient of `elements[k]` in f̂(e_j), in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierHat {
    pub level: u32,
    pub elements: Vec<Vec<i64>>,
    pub columns: Vec<Vec<Ratio<i128>>>,
}

impl FourierHat {
    /// δ_e ∘ f̂.
    pub fn delta_e(&self) -> CharacterHom {
        CharacterHom { level: self.level, values: self.columns.iter().map(|c| c[0]).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().flatten().all(|x| x.is_zero())
    }

    pub fn eval(&self, x: &[i128]) -> Vec<Ratio<i128>> {
        let mut out = vec![Ratio::zero(); self.elements.len()];
        for (c, col) in x.iter().zip(&self.columns) {
            for (o, v) in out.iter_mut().zip(col) {
                *o = frac(*o + v * Ratio::from_integer(*c));
            }
        }
        out
    }

    /// f̂(γ_i x) = γ_i f̂(x) for every generator.
    pub fn is_linear(&self, m: &FiniteModule, p: u64) -> bool {
        let q = (p as i64).pow(self.level);
        let index: std::collections::HashMap<&Vec<i64>, usize> = self.elements.iter().enumerate().map(|(k, v)| (v, k)).collect();
        (0..m.d()).all(|i| {
            (0..m.gens()).all(|j| {
                let e = m.basis(j);
                let lhs = self.eval(&m.gamma_act(i, &e));
                let base = self.eval(&e);
                let mut rhs = vec![Ratio::zero(); base.len()];
                for (k, v) in self.elements.iter().enumerate() {
                    let mut w = v.clone();
                    w[i] = (w[i] + 1).rem_euclid(q.max(1));
                    rhs[index[&w]] = base[k];
                }
                lhs == rhs
            })
        })
    }
}

pub fn fourier_hat(b: &FiniteModule, f: &CharacterHom) -> Result<FourierHat> {
    if f.values.len() != b.gens() {
        return input("homomorphism and module disagree on the number of generators");
    }
    let elements = group_elements(b.p(), b.level(), b.d());
    let mats: Vec<_> = elements.iter().map(|v| b.group_element_matrix(&v.iter().map(|x| -x).collect::<Vec<_>>())).collect();
    let columns = (0..b.gens())
        .map(|j| {
            let e = b.basis(j);
            mats.iter().map(|g| f.eval(&b.apply(g, &e))).collect()
        })
        .collect();
    Ok(FourierHat { level: b.level(), elements, columns })
}

/// For f_m = f_n ∘ r_m^n: p^{-d(n-m)} Σ over each fibre of Γ_n → Γ_m of the
/// [0,1)-representatives of f̂_n(r x) equals f̂_m(x), on every generator x of b_m.
pub fn check1(s: &GammaSystem, m: u32, n: u32, f_n: &CharacterHom) -> Result<bool> {
    if m > n || n > s.top() {
        return input(format!("levels ({m}, {n}) outside the system"));
    }
    let r = &s.transition(m, n).r_b;
    let (bm, bn) = (&s.level(m).b, &s.level(n).b);
    let f_m = f_n.pullback(r);
    let hat_n = fourier_hat(bn, f_n)?;
    let hat_m = fourier_hat(bm, &f_m)?;
    let qm = (s.p() as i64).pow(m);
    let index: std::collections::HashMap<Vec<i64>, usize> =
        hat_m.elements.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
    let scale = Ratio::new(1, (s.p() as i128).pow(s.d() as u32 * (n - m)));
    for j in 0..bm.gens() {
        let img = hat_n.eval(&r.apply(&bm.basis(j)));
        let mut sums = vec![Ratio::zero(); hat_m.elements.len()];
        for (v, c) in hat_n.elements.iter().zip(img) {
            let w: Vec<i64> = v.iter().map(|x| x.rem_euclid(qm.max(1))).collect();
            sums[index[&w]] += c;
        }
        if sums.into_iter().map(|x| frac(x * scale)).collect::<Vec<_>>() != hat_m.columns[j] {
            return Ok(false);
        }
    }
    Ok(true)
}
