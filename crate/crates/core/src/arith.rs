//! Small-integer number theory: primality, factorization, and the exact
//! sign of `u + v·√d`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n ≥ 1` as ascending `(prime, exponent)` pairs.
///
/// Trial division; inputs in this crate are small or already factored.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    let mut unchecked = true;
    while n > 1 {
        if p.saturating_mul(p) > n || (unchecked && is_prime(n)) {
            out.push((n, 1));
            break;
        }
        let before = n;
        push(p, &mut n);
        push(p + 2, &mut n);
        unchecked = n != before;
        p += 6;
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// The `k`-th prime, zero-based (`nth_prime(0) == 2`).
pub fn nth_prime(k: usize) -> u64 {
    let mut seen = 0;
    let mut n = 1u64;
    loop {
        n += 1;
        if is_prime(n) {
            if seen == k {
                return n;
            }
            seen += 1;
        }
    }
}

/// Sign of `u + v·√d` for a non-square `d > 1`.
pub fn sign_quadratic(u: &BigInt, v: &BigInt, d: u64) -> Ordering {
    let su = u.sign();
    let sv = v.sign();
    match (su, sv) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::Minus, Sign::Minus) | (Sign::Minus, Sign::NoSign) | (Sign::NoSign, Sign::Minus) => {
            Ordering::Less
        }
        (Sign::Plus, Sign::Plus) | (Sign::Plus, Sign::NoSign) | (Sign::NoSign, Sign::Plus) => {
            Ordering::Greater
        }
        // Mixed signs: compare u² with v²·d; equality is impossible for non-square d.
        (Sign::Plus, Sign::Minus) => (u * u).cmp(&(v * v * BigInt::from(d))),
        (Sign::Minus, Sign::Plus) => (v * v * BigInt::from(d)).cmp(&(u * u)),
    }
}

/// Sign of `a + b1·√d1 + b2·√d2` for distinct squarefree `d1, d2 > 1`.
pub fn sign_two_surds(a: &BigInt, b1: &BigInt, d1: u64, b2: &BigInt, d2: u64) -> Ordering {
    if d1 == d2 {
        return sign_quadratic(a, &(b1 + b2), d1);
    }
    let sx = sign_quadratic(a, b1, d1);
    let sy = if b2.is_zero() {
        Ordering::Equal
    } else if b2.sign() == Sign::Plus {
        Ordering::Greater
    } else {
        Ordering::Less
    };
    if sx == sy || sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal {
        return sy;
    }
    // X = a + b1√d1 and Y = b2√d2 have opposite signs: compare X² with Y².
    let d1b = BigInt::from(d1);
    let d2b = BigInt::from(d2);
    let rational = a * a + b1 * b1 * &d1b - b2 * b2 * &d2b;
    let irrational = BigInt::from(2) * a * b1;
    let squares = sign_quadratic(&rational, &irrational, d1);
    if sx == Ordering::Greater {
        squares
    } else {
        squares.reverse()
    }
}
