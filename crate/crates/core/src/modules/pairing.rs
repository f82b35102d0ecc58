use super::map::ModuleMap;
use super::module::FiniteModule;
use crate::arith::{modp, pow_i128};
use crate::error::{input, Result};
use crate::linalg::{zeros, Mat};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// ⟨e_i, f_j⟩ = num[i][j] / p^den_exp in Q/Z, a-side generators first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    left: FiniteModule,
    right: FiniteModule,
    den_exp: u32,
    num: Mat,
}

impl PairingMatrix {
    pub fn new(left: FiniteModule, right: FiniteModule, den_exp: u32, num: Mat) -> Result<Self> {
        let p = left.p();
        crate::arith::checked_pow(p, den_exp)?;
        if num.len() != left.gens() || num.iter().any(|r| r.len() != right.gens()) {
            return input(format!("pairing matrix must be {}×{}", left.gens(), right.gens()));
        }
        let q = pow_i128(p, den_exp);
        let num: Mat = num.iter().map(|r| r.iter().map(|&x| modp(x, q)).collect()).collect();
        let pm = PairingMatrix { left, right, den_exp, num };
        for i in 0..pm.left.gens() {
            for j in 0..pm.right.gens() {
                // p^{a_i} and p^{b_j} must kill the value
                let v = pm.value(&pm.left.basis(i), &pm.right.basis(j));
                let k = pm.left.exps()[i].min(pm.right.exps()[j]);
                if (v * Ratio::from_integer(pow_i128(p, k))).denom() != &1 {
                    return input(format!("pairing entry ({i},{j}) is not well-defined"));
                }
            }
        }
        Ok(pm)
    }

    /// Evaluation pairing M^∨ × M, e_i^* (e_j) = δ_ij / p^{a_i}.
    pub fn evaluation(dual: &FiniteModule, m: &FiniteModule) -> Result<Self> {
        if dual.exps() != m.exps() {
            return input("evaluation pairing needs matching exponents");
        }
        let e = m.exponent();
        let mut num = zeros(m.gens(), m.gens());
        for (i, row) in num.iter_mut().enumerate() {
            row[i] = pow_i128(m.p(), e - m.exps()[i]);
        }
        Self::new(dual.clone(), m.clone(), e, num)
    }

    pub fn zero(left: &FiniteModule, right: &FiniteModule) -> Self {
        PairingMatrix { left: left.clone(), right: right.clone(), den_exp: 0, num: zeros(left.gens(), right.gens()) }
    }

    pub fn left(&self) -> &FiniteModule {
        &self.left
    }
    pub fn right(&self) -> &FiniteModule {
        &self.right
    }
    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }
    pub fn numerators(&self) -> &Mat {
        &self.num
    }

    /// ⟨x, y⟩ in [0, 1).
    pub fn value(&self, x: &[i128], y: &[i128]) -> Ratio<i128> {
        let q = pow_i128(self.left.p(), self.den_exp);
        let mut s = 0i128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s = modp(s + modp(xi, q) * self.num[i][j] % q * modp(yj, q), q);
            }
        }
        Ratio::new(s, q)
    }

    /// Induced map left → right^∨ on dual bases.
    pub fn left_adjoint(&self, right_dual: &FiniteModule) -> Result<ModuleMap> {
        let p = self.left.p();
        let b = self.right.exps();
        let mut m = zeros(self.right.gens(), self.left.gens());
        for i in 0..self.left.gens() {
            for j in 0..self.right.gens() {
                // c/p^{b_j} = num/p^E
                let c = Ratio::new(self.num[i][j], pow_i128(p, self.den_exp)) * Ratio::from_integer(pow_i128(p, b[j]));
                m[j][i] = *c.numer() / *c.denom();
            }
        }
        ModuleMap::new(self.left.clone(), right_dual.clone(), m)
    }

    /// Induced maps left → right^∨ and right → left^∨ are isomorphisms.
    pub fn is_perfect(&self) -> bool {
        if self.left.order_exp() != self.right.order_exp() {
            return false;
        }
        let dual = FiniteModule::new_lenient(self.left.p(), self.left.level(), self.right.exps().to_vec(), vec![]).expect("dual shell");
        match self.left_adjoint(&dual) {
            Ok(f) => f.is_injective(),
            Err(_) => false,
        }
    }

    /// A left element pairing trivially with everything, if not perfect.
    pub fn left_radical_witness(&self) -> Option<Vec<i128>> {
        let dual = FiniteModule::new_lenient(self.left.p(), self.left.level(), self.right.exps().to_vec(), vec![]).ok()?;
        self.left_adjoint(&dual).ok()?.kernel_generators().into_iter().next()
    }

    pub fn transpose(&self) -> PairingMatrix {
        PairingMatrix {
            left: self.right.clone(),
            right: self.left.clone(),
            den_exp: self.den_exp,
            num: crate::linalg::transpose(&self.num, self.right.gens()),
        }
    }

    /// ⟨F x, G y⟩ pulled back along maps into left and right.
    pub fn pullback(&self, f: &ModuleMap, g: &ModuleMap) -> Result<PairingMatrix> {
        let (src_l, src_r) = (f.source(), g.source());
        let mut num = zeros(src_l.gens(), src_r.gens());
        let e = self.den_exp.max(src_l.exponent()).max(src_r.exponent());
        let q = pow_i128(self.left.p(), e);
        for i in 0..src_l.gens() {
            let x = f.apply(&src_l.basis(i));
            for j in 0..src_r.gens() {
                let y = g.apply(&src_r.basis(j));
                let v = self.value(&x, &y) * Ratio::from_integer(q);
                num[i][j] = *v.numer() / *v.denom();
            }
        }
        PairingMatrix::new(src_l.clone(), src_r.clone(), e, num)
    }

    /// Generators γ_k and indices (i, j) where ⟨γa, γb⟩ ≠ ⟨a, b⟩.
    pub fn invariance_defect(&self) -> Option<(usize, usize, usize)> {
        for k in 0..self.left.d().min(self.right.d()) {
            for i in 0..self.left.gens() {
                let a = self.left.basis(i);
                let ga = self.left.gamma_act(k, &a);
                for j in 0..self.right.gens() {
                    let b = self.right.basis(j);
                    let gb = self.right.gamma_act(k, &b);
                    if self.value(&ga, &gb) != self.value(&a, &b) {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    pub fn with_modules(&self, left: FiniteModule, right: FiniteModule) -> Result<PairingMatrix> {
        PairingMatrix::new(left, right, self.den_exp, self.num.clone())
    }
}
