use super::map::ModuleMap;
use super::module::{kernel_vectors, normalize, solve_into, FiniteModule};
use super::pairing::PairingMatrix;
use crate::algebra::Character;
use crate::error::{input, Result};
use crate::linalg::{zeros, Mat};

/// A submodule or quotient together with its structure map.
#[derive(Debug, Clone)]
pub struct Sub {
    pub module: FiniteModule,
    /// Inclusion into the ambient module.
    pub inclusion: ModuleMap,
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: FiniteModule,
    pub projection: ModuleMap,
    /// Lifts of the quotient generators to the ambient module.
    pub section: Mat,
}

fn column_matrix(m: &FiniteModule, gens: &[Vec<i128>]) -> Mat {
    let mut s = zeros(m.gens(), gens.len());
    for (j, v) in gens.iter().enumerate() {
        let v = m.reduce(v);
        for i in 0..m.gens() {
            s[i][j] = v[i];
        }
    }
    s
}

/// Submodule generated by `gens`; these must span a Γ-stable subgroup.
pub fn submodule(m: &FiniteModule, gens: &[Vec<i128>]) -> Result<Sub> {
    let gens: Vec<Vec<i128>> = gens.iter().map(|g| m.reduce(g)).filter(|g| g.iter().any(|&x| x != 0)).collect();
    let k = gens.len();
    if k == 0 || m.gens() == 0 {
        let t = FiniteModule::trivial(m.p(), m.level(), m.d());
        return Ok(Sub { inclusion: ModuleMap::zero(&t, m), module: t });
    }
    for g in &gens {
        if g.len() != m.gens() {
            return input("generator length differs from the module rank");
        }
    }
    let s = column_matrix(m, &gens);
    let free = FiniteModule::new_lenient(m.p(), m.level(), vec![m.exponent(); k], vec![]).expect("free shell");
    let relations = kernel_vectors(&free, m, &s);
    let mut actions = Vec::new();
    for i in 0..m.d() {
        let mut a = zeros(k, k);
        for (j, g) in gens.iter().enumerate() {
            let img = m.gamma_act(i, g);
            let Some(c) = solve_into(&free, m, &s, &img) else {
                return input(format!("subgroup is not stable under γ{}", i + 1));
            };
            for r in 0..k {
                a[r][j] = c[r];
            }
        }
        actions.push(a);
    }
    let nz = normalize(m.p(), m.level(), m.exponent(), k, &relations, &actions)?;
    let incl = crate::linalg::mul_mod(&s, &nz.from_new, k, m.zmod().q);
    let inclusion = ModuleMap::new(nz.module.clone(), m.clone(), if m.gens() == 0 { vec![] } else { incl })?;
    Ok(Sub { module: nz.module, inclusion })
}

/// M / ⟨gens⟩; `gens` must span a Γ-stable subgroup.
pub fn quotient(m: &FiniteModule, gens: &[Vec<i128>]) -> Result<Quotient> {
    let g = m.gens();
    let mut relations: Vec<Vec<i128>> = (0..g).map(|i| m.scale(0, &m.basis(i))).collect();
    for (i, r) in relations.iter_mut().enumerate() {
        r[i] = m.modulus(i);
    }
    for v in gens {
        if v.len() != g {
            return input("generator length differs from the module rank");
        }
        relations.push(m.reduce(v));
    }
    let e = m.exponent().max(1);
    let nz = normalize(m.p(), m.level(), e, g, &relations, m.actions())?;
    let projection = ModuleMap::new(m.clone(), nz.module.clone(), nz.to_new.clone())?;
    let section = nz.from_new.clone();
    Ok(Quotient { module: nz.module, projection, section })
}

pub fn kernel(f: &ModuleMap) -> Result<Sub> {
    submodule(f.source(), &f.kernel_generators())
}

pub fn image(f: &ModuleMap) -> Result<Sub> {
    let cols: Vec<Vec<i128>> = (0..f.source().gens()).map(|j| f.apply(&f.source().basis(j))).collect();
    submodule(f.target(), &cols)
}

pub fn cokernel(f: &ModuleMap) -> Result<Quotient> {
    let cols: Vec<Vec<i128>> = (0..f.source().gens()).map(|j| f.apply(&f.source().basis(j))).collect();
    quotient(f.target(), &cols)
}

/// Pontryagin dual with (γf)(x) = f(γ^{-1}x), on the dual basis.
pub fn dual(m: &FiniteModule) -> Result<FiniteModule> {
    let shell = FiniteModule::new_lenient(m.p(), m.level(), m.exps().to_vec(), vec![])?;
    let mut actions = Vec::new();
    for (i, a) in m.actions().iter().enumerate() {
        let inv = m.invert(a).ok_or_else(|| crate::Error::Input(format!("γ{} is not invertible", i + 1)))?;
        let f = ModuleMap::new(shell.clone(), shell.clone(), inv)?;
        actions.push(f.dual_matrix());
    }
    FiniteModule::new_lenient(m.p(), m.level(), m.exps().to_vec(), actions)
}

/// The dual of F: M → N as N^∨ → M^∨.
pub fn dual_map(f: &ModuleMap, source_dual: &FiniteModule, target_dual: &FiniteModule) -> Result<ModuleMap> {
    ModuleMap::new(target_dual.clone(), source_dual.clone(), f.dual_matrix())
}

/// Common kernel of endomorphisms of `m`.
fn stacked_kernel(m: &FiniteModule, mats: &[Mat]) -> Result<Vec<Vec<i128>>> {
    let g = m.gens();
    if g == 0 || mats.is_empty() {
        return Ok((0..g).map(|j| m.basis(j)).collect());
    }
    let mut rows: Vec<(u32, Vec<i128>)> = Vec::new();
    for a in mats {
        for r in 0..g {
            rows.push((m.exps()[r], a[r].clone()));
        }
    }
    rows.sort_by_key(|(e, _)| *e);
    let exps: Vec<u32> = rows.iter().map(|(e, _)| *e).collect();
    let mat: Mat = rows.into_iter().map(|(_, r)| r).collect();
    let stacked = FiniteModule::new_lenient(m.p(), m.level(), exps, vec![])?;
    Ok(kernel_vectors(m, &stacked, &mat))
}

/// {x : γ_i x = s_i x}.
pub fn eigenspace_scalars(m: &FiniteModule, scalars: &[i128]) -> Result<Sub> {
    if scalars.len() != m.d() {
        return input("one scalar per generator of Γ is required");
    }
    let mats: Vec<Mat> = scalars
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut a = m.action(i).clone();
            for (r, row) in a.iter_mut().enumerate() {
                row[r] -= s;
            }
            a
        })
        .collect();
    let gens = stacked_kernel(m, &mats)?;
    submodule(m, &gens)
}

/// ψ-part; values of ψ must be realizable in Z_p (ψ = 1, or ψ = ±1 for p = 2).
pub fn eigenspace(m: &FiniteModule, psi: &Character) -> Result<Sub> {
    let l = psi.order_exp();
    if l == 0 {
        return eigenspace_scalars(m, &vec![1; m.d()]);
    }
    if psi.p == 2 && l == 1 {
        let (_, c) = psi.reduced_exponents();
        let s: Vec<i128> = c.iter().map(|&x| if x == 0 { 1 } else { -1 }).collect();
        return eigenspace_scalars(m, &s);
    }
    input(format!(
        "character of order {}^{l} takes values outside Z_{}; use eigenspace_extended",
        psi.p, psi.p
    ))
}

/// ψ-part of M ⊗ Z_p[ζ_{p^l}], written over the power basis of Z_p[ζ].
pub fn eigenspace_extended(m: &FiniteModule, psi: &Character) -> Result<Sub> {
    let (l, c) = psi.reduced_exponents();
    let p = m.p();
    let phi = crate::arith::phi_pl(p, l);
    let ext = extend_scalars(m, l)?;
    // multiplication by ζ on the power basis
    let mut zeta = zeros(phi, phi);
    let z = crate::algebra::Cyclotomic::zeta_pow(p, l, 1);
    for j in 0..phi {
        let mut e = vec![num_bigint::BigInt::from(0); phi];
        e[j] = 1.into();
        let col = crate::algebra::Cyclotomic::from_int_coeffs(p, l, &e).mul(&z);
        for i in 0..phi {
            zeta[i][j] = col.coeffs[i].to_integer().try_into().expect("small");
        }
    }
    let g = m.gens();
    let mut rows: Mat = Vec::new();
    let mut exps = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        let zc = mat_pow_int(&zeta, ci as u32);
        let a = ext.action(i);
        for r in 0..g * phi {
            let (gr, kr) = (r / phi, r % phi);
            let mut row = a[r].clone();
            for cc in 0..g * phi {
                let (gc, kc) = (cc / phi, cc % phi);
                if gc == gr {
                    row[cc] -= zc[kr][kc];
                }
            }
            rows.push(row);
            exps.push(ext.exps()[r]);
        }
    }
    let mut order: Vec<usize> = (0..exps.len()).collect();
    order.sort_by_key(|&i| exps[i]);
    let rows: Mat = order.iter().map(|&i| rows[i].clone()).collect();
    let exps: Vec<u32> = order.iter().map(|&i| exps[i]).collect();
    if g == 0 {
        return submodule(&ext, &[]);
    }
    let stacked = FiniteModule::new_lenient(p, m.level(), exps, vec![])?;
    let gens = kernel_vectors(&ext, &stacked, &rows);
    submodule(&ext, &gens)
}

fn mat_pow_int(a: &Mat, e: u32) -> Mat {
    let n = a.len();
    let mut acc = crate::linalg::identity(n);
    for _ in 0..e {
        let mut next = zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    next[i][j] += acc[i][k] * a[k][j];
                }
            }
        }
        acc = next;
    }
    acc
}

/// M ⊗ Z_p[ζ_{p^l}] ≅ M^{φ(p^l)} with coordinates (generator, power of ζ).
fn extend_scalars(m: &FiniteModule, l: u32) -> Result<FiniteModule> {
    let phi = crate::arith::phi_pl(m.p(), l);
    let g = m.gens();
    let mut exps = Vec::new();
    for i in 0..g {
        for _ in 0..phi {
            exps.push(m.exps()[i]);
        }
    }
    let actions = m
        .actions()
        .iter()
        .map(|a| {
            let mut big = zeros(g * phi, g * phi);
            for i in 0..g {
                for j in 0..g {
                    for k in 0..phi {
                        big[i * phi + k][j * phi + k] = a[i][j];
                    }
                }
            }
            big
        })
        .collect();
    FiniteModule::new_lenient(m.p(), m.level(), exps, actions)
}

fn power_minus_one(m: &FiniteModule, sublevel: u32) -> Vec<Mat> {
    let e = (m.p() as u128).pow(sublevel);
    m.actions()
        .iter()
        .map(|a| {
            let mut b = m.mat_pow(a, e);
            for (i, row) in b.iter_mut().enumerate() {
                row[i] -= 1;
            }
            m.reduce_matrix(&b)
        })
        .collect()
}

/// M^{Γ^{p^s}}.
pub fn invariants(m: &FiniteModule, sublevel: u32) -> Result<Sub> {
    let gens = stacked_kernel(m, &power_minus_one(m, sublevel))?;
    submodule(m, &gens)
}

/// M_{Γ^{p^s}}.
pub fn coinvariants(m: &FiniteModule, sublevel: u32) -> Result<Quotient> {
    let mut gens = Vec::new();
    for b in power_minus_one(m, sublevel) {
        for j in 0..m.gens() {
            gens.push((0..m.gens()).map(|i| b[i][j]).collect());
        }
    }
    quotient(m, &gens)
}

/// M ⊕ N with generators re-sorted by exponent.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: FiniteModule,
    pub inj: [ModuleMap; 2],
    pub proj: [ModuleMap; 2],
}

pub fn direct_sum(m: &FiniteModule, n: &FiniteModule) -> Result<DirectSum> {
    if m.p() != n.p() || m.d() != n.d() {
        return input("direct sum of modules over different Γ");
    }
    let (gm, gn) = (m.gens(), n.gens());
    let all: Vec<(u32, usize)> = m.exps().iter().copied().chain(n.exps().iter().copied()).zip(0..).collect();
    let mut order: Vec<usize> = (0..gm + gn).collect();
    order.sort_by_key(|&i| (all[i].0, i));
    // position of old index i in the new ordering
    let mut pos = vec![0; gm + gn];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let exps: Vec<u32> = order.iter().map(|&i| all[i].0).collect();
    let g = gm + gn;
    let mut actions = Vec::new();
    for k in 0..m.d() {
        let mut a = zeros(g, g);
        for i in 0..gm {
            for j in 0..gm {
                a[pos[i]][pos[j]] = m.action(k)[i][j];
            }
        }
        for i in 0..gn {
            for j in 0..gn {
                a[pos[gm + i]][pos[gm + j]] = n.action(k)[i][j];
            }
        }
        actions.push(a);
    }
    let level = m.level().max(n.level());
    let s = FiniteModule::new_lenient(m.p(), level, exps, actions)?;
    let mut i1 = zeros(g, gm);
    let mut p1 = zeros(gm, g);
    for i in 0..gm {
        i1[pos[i]][i] = 1;
        p1[i][pos[i]] = 1;
    }
    let mut i2 = zeros(g, gn);
    let mut p2 = zeros(gn, g);
    for i in 0..gn {
        i2[pos[gm + i]][i] = 1;
        p2[i][pos[gm + i]] = 1;
    }
    Ok(DirectSum {
        inj: [ModuleMap::new(m.clone(), s.clone(), i1)?, ModuleMap::new(n.clone(), s.clone(), i2)?],
        proj: [ModuleMap::new(s.clone(), m.clone(), p1)?, ModuleMap::new(s.clone(), n.clone(), p2)?],
        module: s,
    })
}

/// {y ∈ right : ⟨c, y⟩ = 0 for all c in `left_gens`}.
pub fn annihilator_right(pairing: &PairingMatrix, left_gens: &[Vec<i128>]) -> Result<Sub> {
    let b = pairing.right();
    if left_gens.is_empty() || b.gens() == 0 {
        let all: Vec<Vec<i128>> = (0..b.gens()).map(|j| b.basis(j)).collect();
        return submodule(b, &all);
    }
    let p = b.p();
    let e = pairing.den_exp().max(b.exponent()).max(1);
    let q = crate::arith::pow_i128(p, e);
    let scale = crate::arith::pow_i128(p, e - pairing.den_exp());
    let mut rows = Vec::new();
    for c in left_gens {
        let row: Vec<i128> = (0..b.gens())
            .map(|j| {
                let mut s = 0i128;
                for (i, &ci) in c.iter().enumerate() {
                    s = (s + crate::arith::modp(ci, q) * pairing.numerators()[i][j]) % q;
                }
                s * scale % q
            })
            .collect();
        rows.push(row);
    }
    let z = crate::linalg::ZMod::new(p, e)?;
    let gens: Vec<Vec<i128>> = z.kernel(&rows, b.gens()).into_iter().map(|v| b.reduce(&v)).collect();
    submodule(b, &gens)
}

pub fn annihilator_left(pairing: &PairingMatrix, right_gens: &[Vec<i128>]) -> Result<Sub> {
    annihilator_right(&pairing.transpose(), right_gens)
}

/// Images of the generators of a submodule in the ambient module.
pub fn ambient_generators(sub: &Sub) -> Vec<Vec<i128>> {
    (0..sub.module.gens()).map(|j| sub.inclusion.apply(&sub.module.basis(j))).collect()
}
