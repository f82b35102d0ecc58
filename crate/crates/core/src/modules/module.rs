//! Finite abelian p-groups with a Γ_n-action, kept in Smith coordinates:
//! M = ⊕ Z/p^{a_i} with a_1 ≤ a_2 ≤ .., and γ_i acting by integer matrices
//! whose column j is the image of the j-th generator.

use crate::algebra::{AlgebraElement, Coeff, CoeffRing};
use crate::arith::{modp, pow_i128};
use crate::error::{input, Result};
use crate::linalg::{identity, zeros, Mat, ZMod};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteModule {
    p: u64,
    level: u32,
    exps: Vec<u32>,
    actions: Vec<Mat>,
}

/// A presentation after normalization, with coordinate changes to and from
/// the original generators.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub module: FiniteModule,
    /// Old coordinates to new (rows = new generators).
    pub to_new: Mat,
    /// New generators written in old coordinates.
    pub from_new: Mat,
}

/// Γ-1 style defects that a structurally valid module can still have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ActionDefect {
    NotInvertible { gamma: usize, kernel_element: Vec<i128> },
    NotCommuting { gammas: (usize, usize), generator: usize },
    WrongOrder { gamma: usize, generator: usize, image: Vec<i128> },
}

impl FiniteModule {
    /// Strict constructor: well-defined, invertible, commuting actions of exponent p^level.
    pub fn new(p: u64, level: u32, exps: Vec<u32>, actions: Vec<Mat>) -> Result<Self> {
        let m = Self::new_lenient(p, level, exps, actions)?;
        if let Some(defect) = m.action_defects().into_iter().next() {
            return input(format!("action does not factor through Γ_{level}: {defect:?}"));
        }
        Ok(m)
    }

    /// Structural constructor: only the well-definedness of the action is checked.
    pub fn new_lenient(p: u64, level: u32, exps: Vec<u32>, actions: Vec<Mat>) -> Result<Self> {
        crate::arith::check_prime(p)?;
        if exps.iter().any(|&a| a == 0) || exps.windows(2).any(|w| w[0] > w[1]) {
            return input("exponents must be positive and ascending");
        }
        let g = exps.len();
        if let Some(&top) = exps.last() {
            crate::arith::checked_pow(p, top)?;
        }
        let mut m = FiniteModule { p, level, exps, actions: Vec::new() };
        for (idx, a) in actions.into_iter().enumerate() {
            if a.len() != g || a.iter().any(|r| r.len() != g) {
                return input(format!("action {idx} is not {g}×{g}"));
            }
            let a = m.reduce_matrix(&a);
            if !m.well_defined_endo(&a) {
                return input(format!("action {idx} does not respect the relations"));
            }
            m.actions.push(a);
        }
        Ok(m)
    }

    pub fn trivial(p: u64, level: u32, d: usize) -> Self {
        FiniteModule { p, level, exps: vec![], actions: vec![vec![]; d] }
    }

    /// Z/p^k with γ_i acting by the given scalars.
    pub fn cyclic(p: u64, level: u32, k: u32, scalars: &[i128]) -> Result<Self> {
        if k == 0 {
            return Ok(Self::trivial(p, level, scalars.len()));
        }
        Self::new(p, level, vec![k], scalars.iter().map(|&s| vec![vec![s]]).collect())
    }

    /// From integer relations (each a vector of length `rank`) and actions
    /// in the original coordinates.
    pub fn from_presentation(p: u64, level: u32, rank: usize, relations: &[Vec<BigInt>], actions: &[Mat]) -> Result<Normalized> {
        crate::arith::check_prime(p)?;
        for (i, r) in relations.iter().enumerate() {
            if r.len() != rank {
                return input(format!("relation {i} has length {}, expected {rank}", r.len()));
            }
        }
        // Z^rank / relations must be a finite p-group.
        let cols: Vec<Vec<BigInt>> = (0..rank).map(|i| relations.iter().map(|r| r[i].clone()).collect()).collect();
        let snf = crate::linalg::smith_form(&cols, relations.len());
        if snf.diagonal.len() < rank || snf.diagonal.iter().any(|x| x.is_zero()) {
            return input("relations do not present a finite group");
        }
        let mut top = 0;
        for x in &snf.diagonal {
            let v = crate::arith::val_big(x, p).unwrap();
            if num_traits::Pow::pow(BigInt::from(p), v) != *x {
                return input(format!("elementary divisor {x} is not a power of {p}"));
            }
            top = top.max(v);
        }
        let e = top.max(1);
        let z = ZMod::new(p, e)?;
        let rel: Vec<Vec<i128>> = relations
            .iter()
            .map(|r| r.iter().map(|x| crate::arith::big_mod_i128(x, z.q)).collect())
            .collect();
        for (idx, a) in actions.iter().enumerate() {
            if a.len() != rank || a.iter().any(|r| r.len() != rank) {
                return input(format!("action {idx} is not {rank}×{rank}"));
            }
        }
        normalize(p, level, e, rank, &rel, actions)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    pub fn gens(&self) -> usize {
        self.exps.len()
    }
    pub fn d(&self) -> usize {
        self.actions.len()
    }
    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }
    pub fn action(&self, i: usize) -> &Mat {
        &self.actions[i]
    }

    pub fn with_level(&self, level: u32) -> Self {
        FiniteModule { level, ..self.clone() }
    }

    pub fn with_actions(&self, actions: Vec<Mat>) -> Result<Self> {
        Self::new_lenient(self.p, self.level, self.exps.clone(), actions)
    }

    /// log_p |M|.
    pub fn order_exp(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn order(&self) -> BigInt {
        num_traits::Pow::pow(BigInt::from(self.p), self.order_exp())
    }

    /// Exponent e with p^e = exponent of M (0 for the zero module).
    pub fn exponent(&self) -> u32 {
        self.exps.last().copied().unwrap_or(0)
    }

    pub fn is_zero_module(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn modulus(&self, i: usize) -> i128 {
        pow_i128(self.p, self.exps[i])
    }

    /// Engine large enough for every coordinate.
    pub fn zmod(&self) -> ZMod {
        ZMod::new(self.p, self.exponent().max(1)).expect("exponent checked at construction")
    }

    pub fn reduce(&self, x: &[i128]) -> Vec<i128> {
        x.iter().enumerate().map(|(i, &v)| modp(v, self.modulus(i))).collect()
    }

    pub fn reduce_matrix(&self, a: &Mat) -> Mat {
        a.iter().enumerate().map(|(i, r)| r.iter().map(|&v| modp(v, self.modulus(i))).collect()).collect()
    }

    pub fn is_zero(&self, x: &[i128]) -> bool {
        self.reduce(x).iter().all(|&v| v == 0)
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.gens()]
    }

    pub fn basis(&self, j: usize) -> Vec<i128> {
        let mut e = self.zero();
        e[j] = 1;
        e
    }

    pub fn add(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        self.reduce(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn scale(&self, c: i128, x: &[i128]) -> Vec<i128> {
        let q = self.zmod().q;
        self.reduce(&x.iter().map(|a| modp(c, q) * a % q).collect::<Vec<_>>())
    }

    /// Additive order exponent of an element.
    pub fn element_order_exp(&self, x: &[i128]) -> u32 {
        let x = self.reduce(x);
        let mut e = 0;
        for (i, &v) in x.iter().enumerate() {
            if v != 0 {
                let vv = crate::arith::val_i128(v, self.p).unwrap();
                e = e.max(self.exps[i] - vv);
            }
        }
        e
    }

    /// Apply an endomorphism matrix (target = self).
    pub fn apply(&self, a: &Mat, x: &[i128]) -> Vec<i128> {
        let q = self.zmod().q;
        self.reduce(&crate::linalg::mul_vec_mod(a, x, q))
    }

    pub fn gamma_act(&self, i: usize, x: &[i128]) -> Vec<i128> {
        self.apply(&self.actions[i], x)
    }

    pub fn compose(&self, a: &Mat, b: &Mat) -> Mat {
        let g = self.gens();
        self.reduce_matrix(&crate::linalg::mul_mod(a, b, g, self.zmod().q))
    }

    pub fn mat_pow(&self, a: &Mat, mut e: u128) -> Mat {
        let mut base = a.clone();
        let mut acc = identity(self.gens());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            base = self.compose(&base, &base);
            e >>= 1;
        }
        self.reduce_matrix(&acc)
    }

    /// True iff the matrix carries every relation p^{a_j} e_j into the relations.
    pub fn well_defined_endo(&self, a: &Mat) -> bool {
        well_defined(self.exps(), self.exps(), a, self.p)
    }

    /// Matrix of γ^v for exponents reduced to [0, p^level).
    pub fn group_element_matrix(&self, v: &[i64]) -> Mat {
        let q = (self.p as i64).pow(self.level);
        let mut acc = identity(self.gens());
        for (i, &a) in v.iter().enumerate() {
            let e = a.rem_euclid(q.max(1)) as u128;
            if e != 0 {
                acc = self.compose(&self.mat_pow(&self.actions[i], e), &acc);
            }
        }
        acc
    }

    /// Matrix of λ acting at this level.
    pub fn algebra_matrix(&self, lambda: &AlgebraElement) -> Result<Mat> {
        if lambda.rank() != self.d() {
            return input(format!("element of rank {} acting on a module with {} generators of Γ", lambda.rank(), self.d()));
        }
        let zm = self.zmod();
        let g = self.gens();
        let mut acc = zeros(g, g);
        for (v, c) in lambda.terms() {
            let c = match (lambda.ring(), c) {
                (CoeffRing::Integer, Coeff::Int(x)) => crate::arith::big_mod_i128(x, zm.q),
                (CoeffRing::Modular { p, m }, Coeff::Int(x)) => {
                    if p != self.p || m < self.exponent() {
                        return input("modular coefficients too coarse for this module");
                    }
                    crate::arith::big_mod_i128(x, zm.q)
                }
                _ => return input("cyclotomic coefficients do not act on a Z_p-module"),
            };
            let m = self.group_element_matrix(v);
            for i in 0..g {
                for j in 0..g {
                    acc[i][j] = (acc[i][j] + c * m[i][j]) % zm.q;
                }
            }
        }
        Ok(self.reduce_matrix(&acc))
    }

    /// λ·x.
    pub fn act(&self, lambda: &AlgebraElement, x: &[i128]) -> Result<Vec<i128>> {
        if x.len() != self.gens() {
            return input("element length differs from the number of generators");
        }
        Ok(self.apply(&self.algebra_matrix(lambda)?, x))
    }

    /// x with a x = y, if any.
    pub fn solve_endo(&self, a: &Mat, y: &[i128]) -> Option<Vec<i128>> {
        solve_into(self, self, a, y)
    }

    /// Inverse of an invertible endomorphism.
    pub fn invert(&self, a: &Mat) -> Option<Mat> {
        let g = self.gens();
        let mut inv = zeros(g, g);
        for j in 0..g {
            let x = self.solve_endo(a, &self.basis(j))?;
            for i in 0..g {
                inv[i][j] = x[i];
            }
        }
        let inv = self.reduce_matrix(&inv);
        if (0..g).all(|j| self.is_zero(&self.apply(a, &self.apply(&inv, &self.basis(j))).iter().zip(self.basis(j)).map(|(u, v)| u - v).collect::<Vec<_>>())) {
            Some(inv)
        } else {
            None
        }
    }

    pub fn action_defects(&self) -> Vec<ActionDefect> {
        let mut out = Vec::new();
        let g = self.gens();
        for (i, a) in self.actions.iter().enumerate() {
            let ker = kernel_vectors(self, self, a);
            if let Some(k) = ker.into_iter().next() {
                out.push(ActionDefect::NotInvertible { gamma: i, kernel_element: k });
            }
            let order = (self.p as u128).pow(self.level);
            let pw = self.mat_pow(a, order);
            for j in 0..g {
                let img: Vec<i128> = (0..g).map(|r| pw[r][j]).collect();
                if !self.is_zero(&img.iter().zip(self.basis(j)).map(|(u, v)| u - v).collect::<Vec<_>>()) {
                    out.push(ActionDefect::WrongOrder { gamma: i, generator: j, image: img });
                    break;
                }
            }
        }
        for i in 0..self.d() {
            for k in i + 1..self.d() {
                let ab = self.compose(&self.actions[i], &self.actions[k]);
                let ba = self.compose(&self.actions[k], &self.actions[i]);
                if let Some(j) = (0..g).find(|&j| (0..g).any(|r| ab[r][j] != ba[r][j])) {
                    out.push(ActionDefect::NotCommuting { gammas: (i, k), generator: j });
                }
            }
        }
        out
    }

    /// Every element, for modules of order at most `cap`; test oracle only.
    pub fn enumerate(&self, cap: u64) -> Option<Vec<Vec<i128>>> {
        let order = self.order().to_u64()?;
        if order > cap {
            return None;
        }
        let mut out = vec![vec![]];
        for i in 0..self.gens() {
            let m = self.modulus(i);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i128>| {
                    (0..m).map(move |v| {
                        let mut x = prefix.clone();
                        x.push(v);
                        x
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// The canonical isomorphism class data: exponents and d.
    pub fn same_group(&self, other: &Self) -> bool {
        self.exps == other.exps
    }

    pub fn one_mat(&self) -> Mat {
        identity(self.gens())
    }
}

/// F: src → dst is well-defined iff F_ij p^{a_j} ≡ 0 mod p^{b_i}.
pub fn well_defined(src: &[u32], dst: &[u32], f: &Mat, p: u64) -> bool {
    if f.len() != dst.len() || f.iter().any(|r| r.len() != src.len()) {
        return false;
    }
    for (i, row) in f.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if dst[i] > src[j] {
                let need = pow_i128(p, dst[i] - src[j]);
                if modp(x, need) != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Block matrix [F | diag(p^{b_i})] over the engine of both modules.
fn lifted_system(src: &FiniteModule, dst: &FiniteModule, f: &Mat) -> (ZMod, Mat) {
    let e = src.exponent().max(dst.exponent()).max(1);
    let z = ZMod::new(src.p, e).expect("exponent fits");
    let (gs, gd) = (src.gens(), dst.gens());
    let mut m = zeros(gd, gs + gd);
    for i in 0..gd {
        for j in 0..gs {
            m[i][j] = z.red(f[i][j]);
        }
        m[i][gs + i] = z.red(dst.modulus(i));
    }
    (z, m)
}

/// Generators of Ker(F) as elements of `src`.
pub fn kernel_vectors(src: &FiniteModule, dst: &FiniteModule, f: &Mat) -> Vec<Vec<i128>> {
    if src.gens() == 0 {
        return vec![];
    }
    let (z, m) = lifted_system(src, dst, f);
    let gs = src.gens();
    z.kernel(&m, gs + dst.gens())
        .into_iter()
        .map(|v| src.reduce(&v[..gs]))
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// Some x ∈ src with F x = y in dst.
pub fn solve_into(src: &FiniteModule, dst: &FiniteModule, f: &Mat, y: &[i128]) -> Option<Vec<i128>> {
    if dst.gens() == 0 {
        return Some(src.zero());
    }
    if src.gens() == 0 {
        return if dst.is_zero(y) { Some(vec![]) } else { None };
    }
    let (z, m) = lifted_system(src, dst, f);
    let sol = z.solve(&m, src.gens() + dst.gens(), y)?;
    Some(src.reduce(&sol[..src.gens()]))
}

/// Normalize (Z/p^e)^gens / relations with actions given in the old coordinates.
pub fn normalize(p: u64, level: u32, e: u32, gens: usize, relations: &[Vec<i128>], actions: &[Mat]) -> Result<Normalized> {
    let z = ZMod::new(p, e)?;
    let nrel = relations.len();
    let mut r = zeros(gens, nrel);
    for (j, rel) in relations.iter().enumerate() {
        for i in 0..gens {
            r[i][j] = z.red(rel[i]);
        }
    }
    let s = z.snf(&r, nrel);
    let mut keep = Vec::new();
    let mut exps = Vec::new();
    for i in 0..gens {
        let v = if i < s.vals.len() { s.vals[i] } else { e };
        if v > 0 {
            keep.push(i);
            exps.push(v);
        }
    }
    let to_new: Mat = keep.iter().map(|&i| s.u[i].clone()).collect();
    let from_new: Mat = (0..gens).map(|r| keep.iter().map(|&i| s.u_inv[r][i]).collect()).collect();
    let shell = FiniteModule { p, level, exps: exps.clone(), actions: vec![] };
    let to_new = shell.reduce_matrix(&to_new);
    let g = keep.len();
    let mut new_actions = Vec::new();
    for (idx, a) in actions.iter().enumerate() {
        // relations must map into relations
        for (j, rel) in relations.iter().enumerate() {
            let img = crate::linalg::mul_vec_mod(a, rel, z.q);
            let img = crate::linalg::mul_vec_mod(&to_new, &img, z.q);
            if !shell.is_zero(&img) {
                return input(format!("action {idx} does not preserve relation {j}"));
            }
        }
        let a_new = if g == 0 {
            vec![]
        } else {
            let t = crate::linalg::mul_mod(a, &from_new, gens, z.q);
            crate::linalg::mul_mod(&to_new, &t, gens, z.q)
        };
        new_actions.push(shell.reduce_matrix(&a_new));
    }
    let module = FiniteModule { p, level, exps, actions: new_actions };
    Ok(Normalized { module, to_new, from_new })
}

/// The zero-level helper used by tests: one-generator module whose γ acts by scalars.
pub fn scalar_matrix(g: usize, s: i128) -> Mat {
    let mut m = zeros(g, g);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = s;
    }
    m
}
