//! Dense univariate polynomials over a [`Field`], coefficients stored from
//! the constant term upward. Always trimmed: no trailing zeros, the zero
//! polynomial is the empty vector.

use rand::Rng;

use super::field::{Field, PrimeField};

pub type UPoly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: UPoly<F::Elem>) -> UPoly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> UPoly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(f, a, &f.inv(l)),
    }
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> UPoly<F::Elem> {
    trim(
        f,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect(),
    )
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> UPoly<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = monic(f, &r);
    }
    monic(f, &x)
}

/// Resultant via the Euclidean remainder sequence:
/// `res(a, b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)` with `r = a mod b`.
pub fn resultant<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let (Some(mut m), Some(mut n)) = (degree(a), degree(b)) else {
        return f.zero();
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = f.one();
    loop {
        if n == 0 {
            return f.mul(&acc, &f.pow(&b[0], m as u64));
        }
        let (_, r) = divrem(f, &a, &b);
        let Some(dr) = degree(&r) else {
            return f.zero();
        };
        if (m * n) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[n], (m - dr) as u64));
        a = b;
        b = r;
        m = n;
        n = dr;
    }
}

/// Newton interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> UPoly<F::Elem> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.div(&num, &den);
        }
    }
    let mut out: UPoly<F::Elem> = Vec::new();
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let shifted = mul(f, &out, &[f.neg(&xs[i]), f.one()]);
        out = add(f, &shifted, &[coef[i].clone()]);
    }
    out
}

/// `base^e mod modulus` in `F[x]`.
pub fn powmod<F: Field>(
    f: &F,
    base: &[F::Elem],
    mut e: u64,
    modulus: &[F::Elem],
) -> UPoly<F::Elem> {
    let mut acc = divrem(f, &[f.one()], modulus).1;
    let mut b = divrem(f, base, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &b), modulus).1;
        }
        b = divrem(f, &mul(f, &b, &b), modulus).1;
        e >>= 1;
    }
    acc
}

/// All distinct roots in F_p of a nonzero polynomial, sorted. Uses
/// `gcd(a, x^p - x)` followed by Cantor-Zassenhaus equal-degree splitting.
pub fn roots_mod_p<R: Rng + ?Sized>(f: &PrimeField, a: &[u64], rng: &mut R) -> Vec<u64> {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = f.modulus();
    let xp = powmod(f, &[0, 1], p, &a);
    let split = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split_linear(f, split, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear<R: Rng + ?Sized>(f: &PrimeField, g: UPoly<u64>, rng: &mut R, out: &mut Vec<u64>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(&f.div(&g[0], &g[1]))),
        Some(_) => {
            let p = f.modulus();
            loop {
                let shift = rng.random_range(0..p);
                let h = powmod(f, &[shift, 1], (p - 1) / 2, &g);
                let d = gcd(f, &g, &sub(f, &h, &[1]));
                let dd = degree(&d).unwrap_or(0);
                if dd > 0 && dd < degree(&g).unwrap() {
                    let (q, _) = divrem(f, &g, &d);
                    split_linear(f, d, rng, out);
                    split_linear(f, monic(f, &q), rng, out);
                    return;
                }
            }
        }
    }
}
