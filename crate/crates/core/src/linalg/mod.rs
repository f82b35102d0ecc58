//! Matrix engines: Smith form over the chain ring Z/p^e, over Z, and exact
//! fraction-free elimination for ranks and determinants.

pub mod integer;
pub mod zmod;

pub use integer::{bareiss_det, bareiss_rank, smith_form, SmithForm};
pub use zmod::{ChainSnf, ZMod};

/// Row-major dense matrix over machine integers.
pub type Mat = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn cols(m: &Mat, fallback: usize) -> usize {
    m.first().map_or(fallback, |r| r.len())
}

pub fn transpose(m: &Mat, ncols: usize) -> Mat {
    let mut t = zeros(ncols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            t[j][i] = x;
        }
    }
    t
}

/// Product reduced modulo `q`; `inner` is the shared dimension.
pub fn mul_mod(a: &Mat, b: &Mat, inner: usize, q: i128) -> Mat {
    let nc = cols(b, 0);
    let mut out = zeros(a.len(), nc);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let x = row[k];
            if x == 0 {
                continue;
            }
            for j in 0..nc {
                out[i][j] = (out[i][j] + x * b[k][j]) % q;
            }
        }
    }
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x = crate::arith::modp(*x, q);
        }
    }
    out
}

pub fn mul_vec_mod(a: &Mat, v: &[i128], q: i128) -> Vec<i128> {
    a.iter()
        .map(|row| {
            let mut s = 0i128;
            for (x, y) in row.iter().zip(v) {
                s = (s + x * y) % q;
            }
            crate::arith::modp(s, q)
        })
        .collect()
}
