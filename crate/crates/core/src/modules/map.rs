use super::module::{kernel_vectors, solve_into, well_defined, FiniteModule};
use crate::error::{input, Result};
use crate::linalg::{mul_mod, zeros, Mat};
use serde::{Deserialize, Serialize};

/// A homomorphism given by the images of the source generators (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleMap {
    source: FiniteModule,
    target: FiniteModule,
    matrix: Mat,
}

impl ModuleMap {
    /// Rejects matrices that do not respect the relations.
    pub fn new(source: FiniteModule, target: FiniteModule, matrix: Mat) -> Result<Self> {
        if source.p() != target.p() {
            return input("source and target over different primes");
        }
        let matrix = if target.gens() == 0 { vec![] } else { target.reduce_matrix(&matrix) };
        let shape_ok = matrix.len() == target.gens() && matrix.iter().all(|r| r.len() == source.gens());
        if !shape_ok {
            return input(format!("map matrix must be {}×{}", target.gens(), source.gens()));
        }
        if !well_defined(source.exps(), target.exps(), &matrix, source.p()) {
            return input("map does not carry relations into relations");
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &FiniteModule) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: m.one_mat() }
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), matrix: zeros(target.gens(), source.gens()) }
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }
    pub fn target(&self) -> &FiniteModule {
        &self.target
    }
    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, x: &[i128]) -> Vec<i128> {
        if self.target.gens() == 0 {
            return vec![];
        }
        let q = self.source.zmod().q.max(self.target.zmod().q);
        self.target.reduce(&crate::linalg::mul_vec_mod(&self.matrix, x, q))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target.exps() != self.source.exps() {
            return input("composition of incompatible maps");
        }
        let q = [&self.source, &self.target, &other.source].iter().map(|m| m.zmod().q).max().unwrap();
        let m = if self.target.gens() == 0 || other.source.gens() == 0 || self.source.gens() == 0 {
            zeros(self.target.gens(), other.source.gens())
        } else {
            mul_mod(&self.matrix, &other.matrix, self.source.gens(), q)
        };
        ModuleMap::new(other.source.clone(), self.target.clone(), m)
    }

    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.first_difference(other).is_none()
    }

    /// Index of a source generator on which the two maps differ.
    pub fn first_difference(&self, other: &ModuleMap) -> Option<usize> {
        (0..self.source.gens()).find(|&j| {
            let e = self.source.basis(j);
            let (x, y) = (self.apply(&e), other.apply(&e));
            !self.target.is_zero(&x.iter().zip(&y).map(|(a, b)| a - b).collect::<Vec<_>>())
        })
    }

    /// Generator index and γ index where F∘γ ≠ γ∘F.
    pub fn equivariance_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.source.d().min(self.target.d()) {
            for j in 0..self.source.gens() {
                let e = self.source.basis(j);
                let lhs = self.apply(&self.source.gamma_act(i, &e));
                let rhs = self.target.gamma_act(i, &self.apply(&e));
                if !self.target.is_zero(&lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect::<Vec<_>>()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariance_defect().is_none()
    }

    pub fn kernel_generators(&self) -> Vec<Vec<i128>> {
        kernel_vectors(&self.source, &self.target, &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    pub fn preimage(&self, y: &[i128]) -> Option<Vec<i128>> {
        solve_into(&self.source, &self.target, &self.matrix, y)
    }

    /// Surjective iff every target generator has a preimage.
    pub fn is_surjective(&self) -> bool {
        (0..self.target.gens()).all(|j| self.preimage(&self.target.basis(j)).is_some())
    }

    /// A target generator with no preimage.
    pub fn cokernel_witness(&self) -> Option<usize> {
        (0..self.target.gens()).find(|&j| self.preimage(&self.target.basis(j)).is_none())
    }

    pub fn with_modules(&self, source: FiniteModule, target: FiniteModule) -> Result<ModuleMap> {
        ModuleMap::new(source, target, self.matrix.clone())
    }

    /// The Pontryagin dual map: (F^∨)_{ji} = F_ij p^{a_j - b_i}, on the dual bases.
    pub fn dual_matrix(&self) -> Mat {
        let (a, b) = (self.source.exps(), self.target.exps());
        let p = self.source.p();
        let mut out = zeros(a.len(), b.len());
        for i in 0..b.len() {
            for j in 0..a.len() {
                let x = self.matrix[i][j];
                out[j][i] = if a[j] >= b[i] {
                    x * crate::arith::pow_i128(p, a[j] - b[i])
                } else {
                    x / crate::arith::pow_i128(p, b[i] - a[j])
                };
            }
        }
        out
    }
}
