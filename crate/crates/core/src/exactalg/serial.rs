//! JSON encoding of exact values. A rational is the pair of decimal strings
//! `["numerator", "denominator"]`; polynomials list their blocks and their
//! terms in exponent order, so encoding is canonical.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Block, MultiPoly, Rational};

type Pair = [String; 2];

pub fn encode(q: &Rational) -> Pair {
    [q.numer().to_string(), q.denom().to_string()]
}

pub fn decode(p: &Pair) -> Result<Rational, String> {
    let n = BigInt::from_str(&p[0]).map_err(|e| format!("numerator {:?}: {e}", p[0]))?;
    let d = BigInt::from_str(&p[1]).map_err(|e| format!("denominator {:?}: {e}", p[1]))?;
    if d <= BigInt::from(0) {
        return Err(format!("denominator {d} must be positive"));
    }
    let q = Rational::new(n.clone(), d.clone());
    if q.numer() != &n || q.denom() != &d {
        return Err(format!("{n}/{d} is not in lowest terms"));
    }
    Ok(q)
}

/// `#[serde(with = "rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        encode(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        decode(&Pair::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "rationals")]` for `Vec<Rational>`.
pub mod rationals {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(encode).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Pair>::deserialize(d)?
            .iter()
            .map(|p| decode(p).map_err(D::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "rational_rows")]` for `Vec<Vec<Rational>>`.
pub mod rational_rows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(encode).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<Pair>>::deserialize(d)?
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| decode(p).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    name: String,
    size: usize,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: Pair,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    blocks: Vec<BlockRepr>,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            blocks: self
                .blocks()
                .iter()
                .map(|b| BlockRepr {
                    name: b.name.clone(),
                    size: b.size,
                })
                .collect(),
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exps: e.clone(),
                    coeff: encode(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let blocks: Vec<Block> = repr
            .blocks
            .iter()
            .map(|b| Block::new(&b.name, b.size))
            .collect();
        let n: usize = blocks.iter().map(|b| b.size).sum();
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in &repr.terms {
            if t.exps.len() != n {
                return Err(D::Error::custom(format!(
                    "exponent vector of length {} for {n} variables",
                    t.exps.len()
                )));
            }
            terms.push((t.exps.clone(), decode(&t.coeff).map_err(D::Error::custom)?));
        }
        Ok(MultiPoly::from_terms(&blocks, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn rational_pairs() {
        assert_eq!(encode(&rat(-3, 6)), ["-1".to_string(), "2".to_string()]);
        assert_eq!(decode(&["-1".into(), "2".into()]).unwrap(), rat(-1, 2));
        assert!(decode(&["2".into(), "4".into()]).is_err());
        assert!(decode(&["1".into(), "-2".into()]).is_err());
        assert!(decode(&["x".into(), "1".into()]).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let b = [Block::new("x", 2), Block::new("y", 1)];
        let p = MultiPoly::from_terms(&b, [(vec![2, 0, 1], rat(1, 3)), (vec![0, 1, 1], rat(-7, 1))]);
        let s = serde_json::to_string(&p).unwrap();
        let q: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(serde_json::to_string(&q).unwrap(), s);
    }
}
