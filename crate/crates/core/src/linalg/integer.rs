//! Exact integer linear algebra on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type BigMat = Vec<Vec<BigInt>>;

/// `u * a * v = d`, `d` diagonal with nonnegative entries, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: BigMat,
    pub u: BigMat,
    pub v: BigMat,
    pub diagonal: Vec<BigInt>,
}

fn ident(n: usize) -> BigMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &BigMat, b: &BigMat, inner: usize) -> BigMat {
    let nc = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); nc]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..nc {
                out[i][j] += &row[k] * &b[k][j];
            }
        }
    }
    out
}

pub fn smith_form(a: &BigMat, cols: usize) -> SmithForm {
    let rows = a.len();
    let mut m = a.clone();
    let mut u = ident(rows);
    let mut v = ident(cols);
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        // entry of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(bi, t);
        u.swap(bi, t);
        for row in m.iter_mut() {
            row.swap(bj, t);
        }
        for row in v.iter_mut() {
            row.swap(bj, t);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let f = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let x = &f * &m[t][j];
                m[i][j] -= x;
            }
            for j in 0..rows {
                let x = &f * &u[t][j];
                u[i][j] -= x;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let f = m[t][j].div_floor(&m[t][t]);
            for i in t..rows {
                let x = &f * &m[i][t];
                m[i][j] -= x;
            }
            for i in 0..cols {
                let x = &f * &v[i][t];
                v[i][j] -= x;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into the pivot row
        let mut bad = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            for j in 0..cols {
                let x = m[i][j].clone();
                m[t][j] += x;
            }
            for j in 0..rows {
                let x = u[i][j].clone();
                u[t][j] += x;
            }
            continue;
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..steps).map(|i| m[i][i].clone()).collect();
    SmithForm { d: m, u, v, diagonal }
}

/// Rank over Q by fraction-free elimination.
pub fn bareiss_rank(a: &BigMat, cols: usize) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(piv, rank);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let x = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = x / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix.
pub fn bareiss_det(a: &BigMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(s, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[&[i64]]) -> BigMat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_diag() {
        let a = b(&[&[4, 0], &[0, 2]]);
        let s = smith_form(&a, 2);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a, 2), &s.v, 2), s.d);
    }

    #[test]
    fn det_rank() {
        let a = b(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(bareiss_det(&a), BigInt::from(18));
        let c = b(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(bareiss_rank(&c, 3), 2);
        assert_eq!(bareiss_det(&c), BigInt::zero());
    }
}
