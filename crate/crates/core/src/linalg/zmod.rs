//! Smith normal form over Z/p^e. Every nonzero element is a unit times a
//! power of p, so pivoting on an entry of minimal valuation never needs gcds.

use super::{identity, zeros, Mat};
use crate::arith::{checked_pow, inv_mod, modp, split_val};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZMod {
    pub p: u64,
    pub e: u32,
    pub q: i128,
}

/// `u * a * v = diag(p^vals)` with `u_inv * u = 1`; a valuation equal to `e`
/// stands for a zero diagonal entry.
#[derive(Debug, Clone)]
pub struct ChainSnf {
    pub vals: Vec<u32>,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub rows: usize,
    pub cols: usize,
}

impl ZMod {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Ok(ZMod { p, e, q: checked_pow(p, e)? })
    }

    pub fn red(&self, x: i128) -> i128 {
        modp(x, self.q)
    }

    pub fn val(&self, x: i128) -> u32 {
        let x = self.red(x);
        if x == 0 {
            self.e
        } else {
            split_val(x, self.p).0
        }
    }

    pub fn snf(&self, a: &Mat, cols: usize) -> ChainSnf {
        let q = self.q;
        let rows = a.len();
        let mut m: Mat = a.iter().map(|r| r.iter().map(|&x| self.red(x)).collect()).collect();
        let mut u = identity(rows);
        let mut u_inv = identity(rows);
        let mut v = identity(cols);
        let mut vals = Vec::new();
        let steps = rows.min(cols);
        for t in 0..steps {
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 {
                        let vv = split_val(m[i][j], self.p).0;
                        if best.is_none_or(|b| vv < b.0) {
                            best = Some((vv, i, j));
                            if vv == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((pv, bi, bj)) = best else {
                vals.extend(std::iter::repeat_n(self.e, steps - t));
                break;
            };
            if bi != t {
                m.swap(bi, t);
                u.swap(bi, t);
                for row in u_inv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in m.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let unit = split_val(m[t][t], self.p).1;
            let s = inv_mod(unit, q).expect("unit part is invertible");
            for x in m[t].iter_mut() {
                *x = *x * s % q;
            }
            for x in u[t].iter_mut() {
                *x = *x * s % q;
            }
            for row in u_inv.iter_mut() {
                row[t] = modp(row[t] * unit, q);
            }
            let pp = crate::arith::pow_i128(self.p, pv);
            for i in 0..rows {
                if i == t || m[i][t] == 0 {
                    continue;
                }
                let f = m[i][t] / pp;
                for j in 0..cols {
                    m[i][j] = modp(m[i][j] - f * m[t][j], q);
                }
                for j in 0..rows {
                    u[i][j] = modp(u[i][j] - f * u[t][j], q);
                }
                for row in u_inv.iter_mut() {
                    row[t] = modp(row[t] + f * row[i], q);
                }
            }
            for j in 0..cols {
                if j == t || m[t][j] == 0 {
                    continue;
                }
                let f = m[t][j] / pp;
                m[t][j] = 0;
                for row in v.iter_mut() {
                    row[j] = modp(row[j] - f * row[t], q);
                }
            }
            vals.push(pv);
        }
        ChainSnf { vals, u, u_inv, v, rows, cols }
    }

    /// Generators of `{x : a x = 0}` in `(Z/p^e)^cols`.
    pub fn kernel(&self, a: &Mat, cols: usize) -> Vec<Vec<i128>> {
        let s = self.snf(a, cols);
        let mut gens = Vec::new();
        for j in 0..cols {
            let vj = s.vals.get(j).copied().unwrap_or(self.e);
            if vj == 0 {
                continue;
            }
            let scale = crate::arith::pow_i128(self.p, self.e - vj);
            let g: Vec<i128> = (0..cols).map(|i| modp(s.v[i][j] * scale, self.q)).collect();
            if g.iter().any(|&x| x != 0) {
                gens.push(g);
            }
        }
        gens
    }

    /// Some `x` with `a x = y`, if one exists.
    pub fn solve(&self, a: &Mat, cols: usize, y: &[i128]) -> Option<Vec<i128>> {
        let s = self.snf(a, cols);
        self.solve_with(&s, y)
    }

    pub fn solve_with(&self, s: &ChainSnf, y: &[i128]) -> Option<Vec<i128>> {
        let z = super::mul_vec_mod(&s.u, y, self.q);
        let mut w = vec![0i128; s.cols];
        for (i, &zi) in z.iter().enumerate() {
            let vi = if i < s.vals.len() { s.vals[i] } else { self.e };
            if vi >= self.e {
                if zi != 0 {
                    return None;
                }
                continue;
            }
            let pp = crate::arith::pow_i128(self.p, vi);
            if zi % pp != 0 {
                return None;
            }
            w[i] = zi / pp;
        }
        Some(super::mul_vec_mod(&s.v, &w, self.q))
    }

    pub fn zero_mat(&self, r: usize, c: usize) -> Mat {
        zeros(r, c)
    }
}
