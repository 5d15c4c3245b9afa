//! Exact arithmetic layer: rationals, multihomogeneous polynomials over named
//! variable blocks, fraction-free linear algebra, and the small amount of
//! univariate / modular machinery used by the singular-locus checks.

mod det;
pub mod field;
mod matrix;
pub mod modp;
mod poly;
pub mod serial;
pub mod univariate;

pub use det::det3;
pub use field::{Field, PrimeField, RationalField};
pub use matrix::QMatrix;
pub use poly::{Block, MultiPoly, Var};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("variable block mismatch: {left} vs {right}")]
    BlockMismatch { left: String, right: String },
    #[error("unknown variable {block}[{index}]")]
    UnknownVar { block: usize, index: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("assignment for block {block} has {got} coordinates, expected {expected}")]
    Assignment {
        block: usize,
        got: usize,
        expected: usize,
    },
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Binomial coefficient C(n, k) for non-negative `n`, zero outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return int(0);
    }
    let mut acc = int(1);
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

/// `n (n-1) ... (n-k+1) / k!` for any integer `n`, the polynomial extension
/// of the binomial coefficient.
pub fn binomial_poly(n: i64, k: u32) -> Rational {
    (0..k as i64).fold(int(1), |acc, i| acc * int(n - i) / int(i + 1))
}
