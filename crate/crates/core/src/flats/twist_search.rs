//! Search for φ with φ*(ξ) and (φ^{-1})*(ξ) free of character zeros, for ξ
//! supported on a single line a + Z·v.

use crate::algebra::{AlgebraElement, Character, Coeff, CoeffRing, UnitCharacter};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// ξ = γ^a · Σ_{k=0}^{D} c_k γ^{k v} with v primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineForm {
    pub offset: Vec<i64>,
    pub direction: Vec<i64>,
    pub coeffs: Vec<BigInt>,
}

impl LineForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `None` unless the support of ξ is collinear; a single monomial has D = 0.
pub fn line_form(xi: &AlgebraElement) -> Option<LineForm> {
    let xi = xi.to_integer_lift(true).ok()?;
    let supp = xi.support();
    let d = xi.rank();
    let base = supp.first()?.clone();
    let coef = |v: &Vec<i64>| xi.coeff(v).and_then(Coeff::as_int).cloned().unwrap();
    if supp.len() == 1 {
        let mut dir = vec![0; d];
        if d > 0 {
            dir[0] = 1;
        }
        return Some(LineForm { offset: base.clone(), direction: dir, coeffs: vec![coef(&base)] });
    }
    let w: Vec<i64> = supp[1].iter().zip(&base).map(|(a, b)| a - b).collect();
    let g = w.iter().fold(0i64, |g, x| g.gcd(x));
    let mut v: Vec<i64> = w.iter().map(|x| x / g).collect();
    // orient v so the leading nonzero entry is positive
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let i0 = v.iter().position(|&x| x != 0)?;
    let mut ks = Vec::with_capacity(supp.len());
    for s in &supp {
        let diff: Vec<i64> = s.iter().zip(&base).map(|(a, b)| a - b).collect();
        if diff[i0] % v[i0] != 0 {
            return None;
        }
        let k = diff[i0] / v[i0];
        if diff.iter().zip(&v).any(|(x, y)| *x != k * y) {
            return None;
        }
        ks.push(k);
    }
    let kmin = *ks.iter().min().unwrap();
    let kmax = *ks.iter().max().unwrap();
    let mut coeffs = vec![BigInt::zero(); (kmax - kmin + 1) as usize];
    for (s, k) in supp.iter().zip(&ks) {
        coeffs[(k - kmin) as usize] = coef(s);
    }
    let offset = base.iter().zip(&v).map(|(b, x)| b + kmin * x).collect();
    Some(LineForm { offset, direction: v, coeffs })
}

/// U^{den}-cleared evaluation of Σ c_k (U^{±1} y)^k at a primitive p^t-th root.
fn vanishes_at_level(coeffs: &[BigInt], num: &BigInt, den: &BigInt, p: u64, t: u32) -> Result<bool> {
    let dd = coeffs.len() - 1;
    let terms: Vec<(Vec<i64>, Coeff)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (vec![k as i64], Coeff::Int(c * num.pow(k as u32) * den.pow((dd - k) as u32))))
        .collect();
    let x = AlgebraElement::from_terms(CoeffRing::Integer, 1, terms)?;
    let w = Character { p, n: t, c: vec![if t == 0 { 0 } else { 1 }] };
    w.evaluate(&x)?.is_zero()
}

fn phi_of_line(u: &[BigInt], v: &[i64]) -> (BigInt, BigInt) {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for (ui, &a) in u.iter().zip(v) {
        if a >= 0 {
            num *= ui.pow(a as u32);
        } else {
            den *= ui.pow(a.unsigned_abs() as u32);
        }
    }
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    (num, den)
}

/// True when neither φ*(ξ) nor (φ^{-1})*(ξ) vanishes at any character.
fn admissible(form: &LineForm, u: &[BigInt], p: u64) -> Result<bool> {
    let dd = form.degree();
    if dd == 0 {
        return Ok(true);
    }
    let (num, den) = phi_of_line(u, &form.direction);
    // a primitive p^t-th root has degree φ(p^t); only degrees ≤ D can be roots
    let mut t = 0u32;
    loop {
        if t > 0 && crate::arith::phi_pl(p, t) > dd {
            break;
        }
        // φ*(ξ): zero iff Σ c_k (ζ/U)^k = 0; (φ^{-1})*(ξ): Σ c_k (Uζ)^k = 0
        if vanishes_at_level(&form.coeffs, &den, &num, p, t)? || vanishes_at_level(&form.coeffs, &num, &den, p, t)? {
            return Ok(false);
        }
        t += 1;
    }
    Ok(true)
}

/// φ(γ_i) = 1 + p^{k'} t_i (k' = max(k, 1), or max(k, 2) for p = 2), the first
/// admissible tuple in order of max |t_i| then lexicographic, t_i ≥ 0.
pub fn find_nonsimple_twist(xi: &AlgebraElement, p: u64, k: u32, precision: u32, max_tries: usize) -> Result<UnitCharacter> {
    crate::arith::check_prime(p)?;
    if xi.is_zero() {
        return crate::error::input("ξ must be nonzero");
    }
    let form = line_form(xi).ok_or_else(|| {
        Error::Precondition("unknown: support of ξ is not on one line, simploid factors are not detectable".into())
    })?;
    let d = xi.rank();
    let keff = if p == 2 { k.max(2) } else { k.max(1) };
    if keff > precision {
        return crate::error::input(format!("precision {precision} is below the congruence level {keff}"));
    }
    let step = BigInt::from(p).pow(keff);
    let mut tries = 0usize;
    for radius in 0u64.. {
        for t in tuples_with_max(d, radius) {
            tries += 1;
            if tries > max_tries {
                return Err(Error::Search(format!("no admissible φ among the first {max_tries} candidates")));
            }
            let u: Vec<BigInt> = t.iter().map(|&x| BigInt::one() + &step * BigInt::from(x)).collect();
            if admissible(&form, &u, p)? {
                return UnitCharacter::from_bigints(p, precision, &u);
            }
        }
        if d == 0 {
            break;
        }
    }
    Err(Error::Search("no admissible φ".into()))
}

fn tuples_with_max(d: usize, r: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().copied().max().unwrap_or(0) == r);
    out
}

/// Integer multiples of φ*(ξ) (or (φ^{-1})*(ξ) when `inverse`) by a power of
/// ∏ u_i, for φ(γ_i) = u_i given exactly.
pub fn integral_twist(xi: &AlgebraElement, u: &[BigInt], inverse: bool) -> Result<AlgebraElement> {
    let xi = xi.to_integer_lift(true)?;
    if u.len() != xi.rank() {
        return crate::error::input("character rank differs from element rank");
    }
    let supp = xi.support();
    let d = xi.rank();
    // φ*(γ^w) = u^{-w} γ^w; multiply through by u^{max w}
    let sign: i64 = if inverse { -1 } else { 1 };
    let mut top = vec![i64::MIN; d];
    for w in &supp {
        for i in 0..d {
            top[i] = top[i].max(sign * w[i]);
        }
    }
    let terms = supp
        .iter()
        .map(|w| {
            let mut c = xi.coeff(w).and_then(Coeff::as_int).unwrap().clone();
            for i in 0..d {
                c *= u[i].pow((top[i] - sign * w[i]) as u32);
            }
            (w.clone(), Coeff::Int(c))
        })
        .collect();
    AlgebraElement::from_terms(CoeffRing::Integer, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_form_of_quadratic() {
        let xi = AlgebraElement::from_int_terms(2, &[(1, vec![2, 0]), (-3, vec![1, 1]), (2, vec![0, 2])]);
        let f = line_form(&xi).unwrap();
        assert_eq!(f.direction, vec![1, -1]);
        assert_eq!(f.offset, vec![0, 2]);
        assert_eq!(f.coeffs, vec![2.into(), (-3).into(), 1.into()]);
        let off = AlgebraElement::from_int_terms(2, &[(1, vec![1, 0]), (1, vec![0, 1]), (1, vec![0, 0])]);
        assert!(line_form(&off).is_none());
    }

    #[test]
    fn gamma_minus_one_twists_by_four() {
        let xi = AlgebraElement::from_int_terms(1, &[(1, vec![1]), (-1, vec![0])]);
        let phi = find_nonsimple_twist(&xi, 3, 1, 9, 100).unwrap();
        assert_eq!(phi.u, vec![4]);
    }
}
