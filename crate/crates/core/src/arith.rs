//! Scalar helpers for p-adic bookkeeping on machine integers.

use crate::error::{input, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// `p^e`, or an error when it does not fit below 2^62.
pub fn checked_pow(p: u64, e: u32) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc *= p as i128;
        if acc >= 1i128 << 62 {
            return Err(crate::Error::Precision(format!("{p}^{e} exceeds the machine modulus")));
        }
    }
    Ok(acc)
}

pub fn pow_i128(p: u64, e: u32) -> i128 {
    (p as i128).pow(e)
}

/// Valuation of a nonzero integer; `None` for zero.
pub fn val_i128(x: i128, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let p = p as i128;
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

pub fn val_big(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

pub fn modp(x: i128, q: i128) -> i128 {
    let r = x % q;
    if r < 0 {
        r + q
    } else {
        r
    }
}

pub fn big_mod_i128(x: &BigInt, q: i128) -> i128 {
    let r = x.mod_floor(&BigInt::from(q));
    r.to_i128().expect("reduced residue fits")
}

/// Inverse of a unit modulo `q` (extended Euclid).
pub fn inv_mod(a: i128, q: i128) -> Option<i128> {
    let (mut r0, mut r1) = (modp(a, q), q);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    if r0 == 1 || (q == 1) {
        Some(modp(s0, q))
    } else {
        None
    }
}

pub fn pow_mod(base: i128, mut e: u128, q: i128) -> i128 {
    let mut b = modp(base, q);
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Euler phi of p^l.
pub fn phi_pl(p: u64, l: u32) -> usize {
    if l == 0 {
        1
    } else {
        ((p - 1) * p.pow(l - 1)) as usize
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        input(format!("{p} is not prime"))
    }
}

/// Unit part of `x` away from `p`, and its valuation.
pub fn split_val(x: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut x = x;
    let mut v = 0;
    while x != 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for q in [2i128, 4, 9, 27, 125] {
            for a in 1..q {
                if let Some(b) = inv_mod(a, q) {
                    assert_eq!(a * b % q, 1 % q);
                }
            }
        }
        assert_eq!(inv_mod(3, 9), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(val_i128(18, 3), Some(2));
        assert_eq!(val_big(&BigInt::from(-16), 2), Some(4));
        assert_eq!(val_i128(0, 5), None);
    }
}
