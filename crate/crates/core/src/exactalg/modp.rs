//! 64-bit modular helpers: Montgomery-free mulmod via u128, deterministic
//! Miller-Rabin, and seeded sampling of large primes.

use rand::Rng;

use super::field::{rank_over, Field, PrimeField};
use super::QMatrix;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic for all 64-bit inputs with these witnesses.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly random prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.random_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Rank of a rational matrix reduced modulo `p`; `None` when some
/// denominator vanishes mod `p`. Never exceeds the rank over Q.
pub fn rank_mod_p(m: &QMatrix, p: u64) -> Option<usize> {
    let f = PrimeField::new(p);
    let rows: Option<Vec<Vec<u64>>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| f.from_rational(c)).collect())
        .collect();
    Some(rank_over(&f, &rows?))
}
