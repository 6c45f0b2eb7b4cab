//! Integer factoring by trial division and Hilbert symbols over ℚ.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
// Below TRIAL_LIMIT² a cofactor with no small factor is prime.
const TRIAL_SQUARE: u128 = (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128);

pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

fn miller_rabin(n: &BigUint) -> bool {
    // Deterministic for n < 3.3e24 with the first 13 primes as bases.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        if a >= *n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation of `|n|` (n ≠ 0). Fails rather than guess when a large
/// cofactor cannot be certified prime.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::BadParameters("cannot factor zero".into()));
    }
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigUint::one() {
        let small = m.to_u128().map(|v| v < TRIAL_SQUARE).unwrap_or(false);
        let certified = small || (m.bits() < 81 && miller_rabin(&m));
        if !certified {
            return Err(Error::Indeterminate(format!("cannot certify factorisation of {n}")));
        }
        out.push((m, 1));
    }
    Ok(out)
}

/// Square-free part of a nonzero integer, sign kept.
pub fn square_free_part(n: &BigInt) -> Result<BigInt> {
    let mut acc = BigUint::one();
    for (p, e) in factor_integer(n)? {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(BigInt::from_biguint(if n.is_negative() { Sign::Minus } else { Sign::Plus }, acc))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(BigUint),
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = n.clone();
    let mut v = 0;
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let r = u.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    let x = r.modpow(&e, p);
    if x.is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_v` of nonzero integers at the place `v`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    match place {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let p = BigInt::from(p.clone());
            let (alpha, u) = valuation(a, &p);
            let (beta, v) = valuation(b, &p);
            if p == BigInt::from(2) {
                let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
                let eps = |x: u32| ((x - 1) / 2) % 2;
                let omega = |x: u32| if x == 1 || x == 7 { 0 } else { 1 };
                let (u8_, v8) = (m8(&u), m8(&v));
                let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let half = ((&p - 1u32) / 2u32).is_odd();
                let mut s = if half && (alpha * beta) % 2 == 1 { -1 } else { 1 };
                if beta % 2 == 1 {
                    s *= legendre(&u, &p);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&v, &p);
                }
                s
            }
        }
    }
}
