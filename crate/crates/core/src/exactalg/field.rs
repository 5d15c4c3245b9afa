//! Minimal field abstraction so the elimination and root-finding routines can
//! run either exactly over Q or modulo a large prime.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modp::{mul_mod, pow_mod};
use super::Rational;

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of a rational number, `None` if its denominator is not
    /// invertible in the field.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a.clone()
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
}

/// Integers modulo a prime below 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 63), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().unwrap()
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero mod p");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.reduce_big(q.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_big(q.numer());
        Some(self.mul(&n, &self.inv(&d)))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_big(&BigInt::from(n))
    }
}

/// Rank of a dense matrix over any field by Gaussian elimination.
pub fn rank_over<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for i in r + 1..nr {
            if f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = f.mul(&m[i][c], &inv);
            for j in c..nc {
                let t = f.mul(&factor, &m[r][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

/// Right kernel over any field (reduced echelon back-substitution).
pub fn kernel_over<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let nr = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for j in c..ncols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..nr {
            if i == r || f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..ncols {
                let t = f.mul(&factor, &m[r][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&m[k][free]);
        }
        basis.push(v);
    }
    basis
}
