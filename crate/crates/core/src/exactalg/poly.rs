use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgError, Rational};

/// A named group of variables, e.g. `x` with three coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub size: usize,
}

impl Block {
    pub fn new(name: &str, size: usize) -> Self {
        Block {
            name: name.to_string(),
            size,
        }
    }
}

/// A variable addressed by block position and index within the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var {
    pub block: usize,
    pub index: usize,
}

impl Var {
    pub fn new(block: usize, index: usize) -> Self {
        Var { block, index }
    }
}

/// Polynomial with exact rational coefficients over an ordered list of
/// variable blocks.
///
/// Exponent vectors are flattened across blocks in block order. Zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    blocks: Vec<Block>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(blocks: &[Block]) -> Self {
        MultiPoly {
            blocks: blocks.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(blocks: &[Block], c: Rational) -> Self {
        let mut p = Self::zero(blocks);
        let n = p.num_vars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(blocks: &[Block]) -> Self {
        Self::constant(blocks, Rational::one())
    }

    pub fn var(blocks: &[Block], v: Var) -> Result<Self, AlgError> {
        let offset = var_offset(blocks, v)?;
        let mut p = Self::zero(blocks);
        let mut e = vec![0; p.num_vars()];
        e[offset] = 1;
        p.add_term(e, Rational::one());
        Ok(p)
    }

    /// Single monomial `c * x^e`.
    pub fn monomial(blocks: &[Block], exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(blocks);
        assert_eq!(exps.len(), p.num_vars(), "exponent vector length");
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I>(blocks: &[Block], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(blocks);
        let n = p.num_vars();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * v_i` in one block.
    pub fn linear_form(blocks: &[Block], block: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(blocks);
        let off = block_offset(blocks, block);
        let n = p.num_vars();
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[off + i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn to_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        let off = block_offset(&self.blocks, b);
        off..off + self.blocks[b].size
    }

    /// Per-block degree vector when every term agrees; `None` for
    /// non-homogeneous or zero polynomials.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = self.term_multidegree(it.next()?);
        it.all(|e| self.term_multidegree(e) == first)
            .then_some(first)
    }

    fn term_multidegree(&self, e: &[u32]) -> Vec<u32> {
        (0..self.blocks.len())
            .map(|b| e[self.block_range(b)].iter().sum())
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgError> {
        if self.blocks != other.blocks {
            return Err(AlgError::BlockMismatch {
                left: describe_blocks(&self.blocks),
                right: describe_blocks(&other.blocks),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.blocks);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.blocks);
        }
        MultiPoly {
            blocks: self.blocks.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.blocks);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> Result<Self, AlgError> {
        let off = var_offset(&self.blocks, v)?;
        let mut out = Self::zero(&self.blocks);
        for (e, c) in &self.terms {
            if e[off] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[off] -= 1;
            out.add_term(ne, c * Rational::from_integer(e[off].into()));
        }
        Ok(out)
    }

    /// Substitutes rational coordinates for the blocks given as `Some`,
    /// returning a polynomial in the remaining blocks (in their original
    /// order). Substituting every block yields a constant over no blocks.
    pub fn evaluate(&self, assignment: &[Option<Vec<Rational>>]) -> Result<Self, AlgError> {
        if assignment.len() != self.blocks.len() {
            return Err(AlgError::Shape(format!(
                "assignment covers {} blocks, polynomial has {}",
                assignment.len(),
                self.blocks.len()
            )));
        }
        for (b, a) in assignment.iter().enumerate() {
            if let Some(pt) = a {
                if pt.len() != self.blocks[b].size {
                    return Err(AlgError::Assignment {
                        block: b,
                        got: pt.len(),
                        expected: self.blocks[b].size,
                    });
                }
            }
        }
        let kept: Vec<Block> = self
            .blocks
            .iter()
            .zip(assignment)
            .filter(|(_, a)| a.is_none())
            .map(|(b, _)| b.clone())
            .collect();
        let mut out = Self::zero(&kept);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = Vec::with_capacity(out.num_vars());
            for (b, a) in assignment.iter().enumerate() {
                let r = self.block_range(b);
                match a {
                    Some(pt) => {
                        for (k, &ex) in e[r].iter().enumerate() {
                            if ex > 0 {
                                coeff *= num_traits::pow(pt[k].clone(), ex as usize);
                            }
                        }
                    }
                    None => ne.extend_from_slice(&e[r]),
                }
                if coeff.is_zero() {
                    break;
                }
            }
            out.add_term(ne, coeff);
        }
        Ok(out)
    }

    /// Full evaluation at one point per block.
    pub fn eval_at(&self, point: &[Vec<Rational>]) -> Result<Rational, AlgError> {
        let a: Vec<Option<Vec<Rational>>> = point.iter().cloned().map(Some).collect();
        Ok(self.evaluate(&a)?.to_constant().expect("fully substituted"))
    }

    /// Replaces the variables of `block` by linear forms: `v_i -> sum_j m[i][j] v_j`.
    pub fn linear_substitute(&self, block: usize, m: &[Vec<Rational>]) -> Self {
        let size = self.blocks[block].size;
        assert_eq!(m.len(), size, "substitution matrix rows");
        let forms: Vec<Self> = m
            .iter()
            .map(|row| Self::linear_form(&self.blocks, block, row))
            .collect();
        let r = self.block_range(block);
        let mut out = Self::zero(&self.blocks);
        for (e, c) in &self.terms {
            let mut base = e.clone();
            for k in r.clone() {
                base[k] = 0;
            }
            let mut t = Self::monomial(&self.blocks, base, c.clone());
            for (i, &ex) in e[r.clone()].iter().enumerate() {
                if ex > 0 {
                    t = &t * &forms[i].pow(ex);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Multiplies through by the lcm of denominators and divides by the gcd
    /// of numerators, fixing the sign so the leading term is positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
        }
        let lead_neg = self.terms.values().next_back().unwrap() < &Rational::zero();
        let mut s = Rational::new(l, g);
        if lead_neg {
            s = -s;
        }
        self.scale(&s)
    }
}

fn describe_blocks(b: &[Block]) -> String {
    b.iter()
        .map(|b| format!("{}:{}", b.name, b.size))
        .collect::<Vec<_>>()
        .join(",")
}

fn block_offset(blocks: &[Block], b: usize) -> usize {
    blocks[..b].iter().map(|b| b.size).sum()
}

fn var_offset(blocks: &[Block], v: Var) -> Result<usize, AlgError> {
    if v.block >= blocks.len() || v.index >= blocks[v.block].size {
        return Err(AlgError::UnknownVar {
            block: v.block,
            index: v.index,
        });
    }
    Ok(block_offset(blocks, v.block) + v.index)
}

/// All exponent vectors with the given per-block degrees, in lexicographic
/// order of the flattened vector (largest first).
pub fn monomials_of_multidegree(blocks: &[Block], degrees: &[u32]) -> Vec<Vec<u32>> {
    assert_eq!(blocks.len(), degrees.len());
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for (b, &d) in blocks.iter().zip(degrees) {
        let parts = compositions(d, b.size);
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                parts.iter().map(move |p| {
                    let mut v = pre.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    acc
}

fn compositions(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl MultiPoly {
    pub fn monomials(blocks: &[Block], degrees: &[u32]) -> Vec<Vec<u32>> {
        monomials_of_multidegree(blocks, degrees)
    }
}

impl<'a> Add for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("block mismatch in add")
    }
}

impl<'a> Sub for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("block mismatch in sub")
    }
}

impl<'a> Mul for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("block mismatch in mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = self
            .blocks
            .iter()
            .flat_map(|b| (1..=b.size).map(move |i| format!("{}{}", b.name, i)))
            .collect();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", a, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn xy() -> Vec<Block> {
        vec![Block::new("x", 3), Block::new("y", 3)]
    }

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(&xy(), Var::new(0, i)).unwrap()
    }

    fn y(i: usize) -> MultiPoly {
        MultiPoly::var(&xy(), Var::new(1, i)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let expect = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn zero_annihilates() {
        let f = &(&x(0) * &y(2)) + &x(1).scale(&rat(3, 7));
        assert!((&MultiPoly::zero(&xy()) * &f).is_zero());
    }

    #[test]
    fn block_mismatch_is_an_error() {
        let other = MultiPoly::var(&[Block::new("t", 3)], Var::new(0, 0)).unwrap();
        assert!(matches!(
            x(0).try_mul(&other),
            Err(AlgError::BlockMismatch { .. })
        ));
    }

    #[test]
    fn partials_of_square() {
        let f = x(0).pow(2);
        assert_eq!(
            f.partial_derivative(Var::new(0, 0)).unwrap(),
            x(0).scale(&int(2))
        );
        assert!(f.partial_derivative(Var::new(0, 1)).unwrap().is_zero());
        assert!(f.partial_derivative(Var::new(2, 0)).is_err());
    }

    #[test]
    fn evaluation_full_and_partial() {
        let f = &x(0) * &x(1);
        let one = vec![int(1), int(1), int(1)];
        let v = f.eval_at(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(v, int(1));

        let q = &(&x(0).pow(2) * &y(0).pow(2)) + &(&(&x(1) * &x(2)) * &(&y(1) * &y(2)));
        let r = q
            .evaluate(&[None, Some(vec![int(1), int(2), int(3)])])
            .unwrap();
        assert_eq!(r.blocks(), &[Block::new("x", 3)]);
        assert_eq!(r.multidegree(), Some(vec![2]));
    }

    #[test]
    fn multidegree_detects_inhomogeneity() {
        let f = &x(0).pow(2) + &y(0);
        assert_eq!(f.multidegree(), None);
        let g = &x(0) * &y(1);
        assert_eq!(g.multidegree(), Some(vec![1, 1]));
    }

    #[test]
    fn monomial_count_of_bidegree_two_two() {
        assert_eq!(MultiPoly::monomials(&xy(), &[2, 2]).len(), 36);
        assert_eq!(MultiPoly::monomials(&xy(), &[1, 1]).len(), 9);
    }

    #[test]
    fn linear_substitution_identity_and_swap() {
        let f = &(&x(0).pow(2) * &y(1)) + &x(2);
        let id = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        assert_eq!(f.linear_substitute(0, &id), f);
        let swap = vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
        ];
        let g = f.linear_substitute(0, &swap);
        assert_eq!(g, &(&x(2).pow(2) * &y(1)) + &x(0));
    }

    #[test]
    fn display_is_readable() {
        let f = &x(0).pow(2).scale(&rat(1, 2)) - &y(2);
        assert_eq!(f.to_string(), "1/2*x1^2 - y3");
    }

    #[test]
    fn primitive_clears_denominators() {
        let f = &x(0).scale(&rat(2, 3)) + &x(1).scale(&rat(4, 9));
        let p = f.primitive();
        assert_eq!(p, &x(0).scale(&int(3)) + &x(1).scale(&int(2)));
    }
}
