//! Recognition of simple elements f_{γ,ζ} = Φ_{p^l}(γ^v) up to unit monomials,
//! and the coprimality fragment used by the decompositions.

use super::{has_unit_coefficient, is_p_monomial, ElementaryModule, Factor};
use crate::algebra::{AlgebraElement, Character, Coeff, CoeffRing};
use crate::flats::line_form;
use crate::linalg::bareiss_det;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// (f_{γ^v,ζ}) with ζ of order p^l; `direction` is reduced to a canonical
/// representative of its Z_p-line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleDescriptor {
    pub direction: Vec<i64>,
    pub l: u32,
}

impl SimpleDescriptor {
    pub fn new(p: u64, v: &[i64], l: u32) -> Option<Self> {
        if v.iter().all(|&x| x.rem_euclid(p as i64) == 0) {
            return None;
        }
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        let mut dir: Vec<i64> = v.iter().map(|x| x / g).collect();
        if dir.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            dir.iter_mut().for_each(|x| *x = -*x);
        }
        Some(SimpleDescriptor { direction: dir, l })
    }

    pub fn element(&self, p: u64) -> AlgebraElement {
        crate::algebra::simple_element(p, &self.direction, self.l).expect("direction outside Γ^p")
    }
}

fn coeff_residues(x: &AlgebraElement) -> Option<(Vec<Vec<i64>>, Vec<BigInt>, Option<BigInt>)> {
    let q = x.ring().modulus();
    let supp = x.support();
    let cs = supp.iter().map(|v| x.coeff(v).and_then(Coeff::as_int).cloned()).collect::<Option<Vec<_>>>()?;
    Some((supp, cs, q))
}

/// Canonical form of ξ when ξ = unit·γ^w·Φ_{p^l}(γ^v) with v ∉ Γ^p.
pub fn simple_descriptor(xi: &AlgebraElement, p: u64) -> Option<SimpleDescriptor> {
    if matches!(xi.ring(), CoeffRing::Cyclotomic { .. }) {
        return None;
    }
    let (supp, cs, q) = coeff_residues(xi)?;
    let pb = BigInt::from(p);
    let same = |a: &BigInt, b: &BigInt| match &q {
        Some(q) => (a - b).mod_floor(q).is_zero(),
        None => a == b,
    };
    if cs[0].is_multiple_of(&pb) {
        return None;
    }
    let step = |k: usize| -> Vec<i64> { supp[k].iter().zip(&supp[0]).map(|(a, b)| a - b).collect() };
    if supp.len() == 2 && same(&cs[1], &(-&cs[0])) {
        return SimpleDescriptor::new(p, &step(1), 0);
    }
    if supp.len() != p as usize || !cs.iter().all(|c| same(c, &cs[0])) {
        return None;
    }
    let s = step(1);
    for (k, e) in supp.iter().enumerate() {
        if e.iter().zip(&supp[0]).zip(&s).any(|((a, b), st)| *a != b + k as i64 * st) {
            return None;
        }
    }
    let vmin = s.iter().filter(|&&x| x != 0).map(|&x| crate::arith::val_i128(x as i128, p).unwrap()).min()?;
    let scale = (p as i64).pow(vmin);
    let v: Vec<i64> = s.iter().map(|x| x / scale).collect();
    SimpleDescriptor::new(p, &v, vmin + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FactorVerdict {
    Simple(SimpleDescriptor),
    /// Certified not divisible by a simple element.
    NotSimple,
    /// Neither recognised as simple nor certified free of simple divisors.
    Unknown(String),
}

/// For d = 1 a polynomial in γ without zeros at the characters of order p^t,
/// φ(p^t) ≤ degree, has no simple divisor; monomials never have one.
pub fn classify_factor(xi: &AlgebraElement, p: u64) -> FactorVerdict {
    if let Some(s) = simple_descriptor(xi, p) {
        return FactorVerdict::Simple(s);
    }
    if xi.num_terms() == 1 {
        return FactorVerdict::NotSimple;
    }
    if xi.rank() == 1 && xi.ring() == CoeffRing::Integer {
        if let Some(form) = line_form(xi) {
            let poly: Vec<(Vec<i64>, Coeff)> =
                form.coeffs.iter().enumerate().map(|(k, c)| (vec![k as i64], Coeff::Int(c.clone()))).collect();
            let poly = AlgebraElement::from_terms(CoeffRing::Integer, 1, poly).expect("integer terms");
            let dd = form.degree();
            let mut t = 0;
            loop {
                if t > 0 && crate::arith::phi_pl(p, t) > dd {
                    return FactorVerdict::NotSimple;
                }
                let w = Character { p, n: t, c: vec![if t == 0 { 0 } else { 1 }] };
                if w.evaluate(&poly).and_then(|v| v.is_zero()).unwrap_or(true) {
                    return FactorVerdict::Unknown(format!("{xi} vanishes at a character of order {p}^{t}"));
                }
                t += 1;
            }
        }
    }
    FactorVerdict::Unknown(format!("{xi} is not of simple shape and its simple divisors are not decidable here"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub first: ElementaryModule,
    pub second: ElementaryModule,
    pub verdicts: Vec<FactorVerdict>,
    pub warnings: Vec<String>,
}

/// (simple part, the rest); unknown factors go to the second part with a warning.
pub fn split_simple(m: &ElementaryModule) -> SplitReport {
    let (mut si, mut ns) = (Vec::new(), Vec::new());
    let mut verdicts = Vec::new();
    let mut warnings = Vec::new();
    for (i, f) in m.factors.iter().enumerate() {
        let v = classify_factor(&f.xi, m.p);
        match &v {
            FactorVerdict::Simple(_) => si.push(f.clone()),
            FactorVerdict::NotSimple => ns.push(f.clone()),
            FactorVerdict::Unknown(why) => {
                warnings.push(format!("factors[{i}]: unknown, routed to the non-simple part ({why})"));
                ns.push(f.clone());
            }
        }
        verdicts.push(v);
    }
    SplitReport { first: m.with_factors(si), second: m.with_factors(ns), verdicts, warnings }
}

/// (p-part, the rest): factors c·γ^w with v_p(c) ≥ 1 form the p-part.
pub fn split_p(m: &ElementaryModule) -> SplitReport {
    let (mut pp, mut np): (Vec<Factor>, Vec<Factor>) = (Vec::new(), Vec::new());
    for f in &m.factors {
        if is_p_monomial(&f.xi, m.p).is_some() {
            pp.push(f.clone());
        } else {
            np.push(f.clone());
        }
    }
    SplitReport { first: m.with_factors(pp), second: m.with_factors(np), verdicts: Vec::new(), warnings: Vec::new() }
}

/// Simple ideals coincide iff their Z_p-lines and root orders agree.
pub fn coprime_simple(f: &SimpleDescriptor, g: &SimpleDescriptor) -> bool {
    f != g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Coprimality {
    DistinctSimple,
    PAgainstUnitCoefficient,
    UnitResultant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PseudoNullVerdict {
    Certified { pair: (usize, usize), reason: Coprimality },
    Unknown,
}

fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    // coefficient lists are ascending; Sylvester rows use descending order
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(&s)
}

fn coprime_pair(a: &AlgebraElement, b: &AlgebraElement, p: u64) -> Option<Coprimality> {
    if let (Some(x), Some(y)) = (simple_descriptor(a, p), simple_descriptor(b, p)) {
        return coprime_simple(&x, &y).then_some(Coprimality::DistinctSimple);
    }
    for (x, y) in [(a, b), (b, a)] {
        if is_p_monomial(x, p).is_some() && has_unit_coefficient(y, p) {
            return Some(Coprimality::PAgainstUnitCoefficient);
        }
    }
    if a.ring() != CoeffRing::Integer || b.ring() != CoeffRing::Integer {
        return None;
    }
    let (fa, fb) = (line_form(a)?, line_form(b)?);
    if fa.degree() == 0 || fb.degree() == 0 {
        return None;
    }
    let cb = if fa.direction == fb.direction {
        fb.coeffs.clone()
    } else if fa.direction.iter().zip(&fb.direction).all(|(x, y)| *x == -y) {
        fb.coeffs.iter().rev().cloned().collect()
    } else {
        return None;
    };
    let r = resultant(&fa.coeffs, &cb);
    (!r.is_zero() && !r.abs().is_multiple_of(&BigInt::from(p))).then_some(Coprimality::UnitResultant)
}

/// Certified once two of the annihilators are coprime in the decidable fragment.
pub fn pseudo_null_certificate(anns: &[AlgebraElement], p: u64) -> crate::Result<PseudoNullVerdict> {
    if anns.len() < 2 {
        return crate::error::input("at least two annihilators are needed");
    }
    for i in 0..anns.len() {
        for j in i + 1..anns.len() {
            if let Some(reason) = coprime_pair(&anns[i], &anns[j], p) {
                return Ok(PseudoNullVerdict::Certified { pair: (i, j), reason });
            }
        }
    }
    Ok(PseudoNullVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 1, x - 4) = -3 up to sign
        let r = resultant(&[(-1).into(), 1.into()], &[(-4).into(), 1.into()]);
        assert_eq!(r.abs(), BigInt::from(3));
    }
}
