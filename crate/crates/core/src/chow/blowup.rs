//! Top intersection numbers on the blow-up of `S x P2` along the four curves
//! `D_i = E_i x {pt}`. Only the degree-4 table is modelled: a monomial
//! `N^a . g` with `g` pulled back from `S x P2` is
//!
//! * `a = 0`: the degree of `g` on `S x P2`;
//! * `a > 0`: `(-1)^(a-1) sum_i deg_{D_i}( p_*(xi^(a-1)) . g|_{D_i} )`,
//!
//! where `p` is the projectivized normal bundle of `D_i` with tautological
//! class `xi`, so `p_* xi^k = 0` for `k < 2`, `p_* xi^2 = 1` and
//! `p_* xi^3 = c1` of the conormal bundle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::ring::{del_pezzo_ring, product_projective_ring, ChowClass, ChowRing};
use super::ChowError;
use crate::exactalg::{int, Rational};

/// Divisor `a H + b H1 + c H2 + d N` on the blow-up, where `H`, `H1`, `H2`
/// are pulled back from `-K_S`, `L` and the plane factor, and `N` is the
/// exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupDivisor {
    pub h: Rational,
    pub h1: Rational,
    pub h2: Rational,
    pub n: Rational,
}

impl BlowupDivisor {
    pub fn new(h: Rational, h1: Rational, h2: Rational, n: Rational) -> Self {
        BlowupDivisor { h, h1, h2, n }
    }

    pub fn from_ints(h: i64, h1: i64, h2: i64, n: i64) -> Self {
        Self::new(int(h), int(h1), int(h2), int(n))
    }

    fn coeffs(&self) -> [&Rational; 4] {
        [&self.h, &self.h1, &self.h2, &self.n]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.h + &o.h, &self.h1 + &o.h1, &self.h2 + &o.h2, &self.n + &o.n)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.h * c, &self.h1 * c, &self.h2 * c, &self.n * c)
    }

    /// Rewrite `H` as `3 H1 - N`, the relation that holds after pushing
    /// forward to the conic-bundle threefold's parameter space.
    pub fn eliminate_h(&self) -> Self {
        Self::new(
            Rational::zero(),
            &self.h1 + &self.h * int(3),
            self.h2.clone(),
            &self.n - &self.h,
        )
    }
}

impl fmt::Display for BlowupDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .zip(["H", "H1", "H2", "N"])
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| format!("{c}*{name}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// All degree-4 monomials in `(H, H1, H2, N)`, keyed by exponent vector.
#[derive(Debug, Clone)]
pub struct BlowupTable {
    entries: BTreeMap<[u32; 4], Rational>,
}

impl BlowupTable {
    pub fn get(&self, exps: [u32; 4]) -> Option<&Rational> {
        self.entries.get(&exps)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32; 4], &Rational)> {
        self.entries.iter()
    }

    /// Multilinear intersection of four divisors.
    pub fn intersect(&self, ds: &[BlowupDivisor]) -> Result<Rational, ChowError> {
        if ds.len() != 4 {
            return Err(ChowError::Invalid(format!(
                "need four divisors on a 4-fold, got {}",
                ds.len()
            )));
        }
        let mut total = Rational::zero();
        for choice in 0..256u32 {
            let mut exps = [0u32; 4];
            let mut coeff = int(1);
            for (slot, d) in ds.iter().enumerate() {
                let k = ((choice >> (2 * slot)) & 3) as usize;
                exps[k] += 1;
                coeff *= d.coeffs()[k];
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                total += coeff * &self.entries[&exps];
            }
        }
        Ok(total)
    }

    pub fn power4(&self, d: &BlowupDivisor) -> Rational {
        self.intersect(&[d.clone(), d.clone(), d.clone(), d.clone()])
            .expect("four factors")
    }
}

/// Builds the table from the ring of `S x P2` and the normal-bundle data of
/// the four centers.
pub fn blowup_intersection_table() -> Result<BlowupTable, ChowError> {
    let s = del_pezzo_ring();
    let p2 = product_projective_ring(&[2])?;
    let x = ChowRing::tensor(&s, &p2, "S x P2");
    let lift_s = |name: &str| -> Result<ChowClass, ChowError> { x.pullback(&s.generator(name)?) };
    let hyper = -&lift_s("K")?;
    let line = lift_s("L")?;
    let plane = x.generator("h1")?;
    let pulled = [hyper, line, plane.clone()];
    let plane_pt = plane.pow(2);
    let unit = (0..x.rank()).find(|&i| x.codim(i) == 0).expect("unit");

    // center classes [D_i] and degrees of c1(conormal) on them
    let mut centers = Vec::new();
    for i in 1..=4 {
        let e = lift_s(&format!("E{i}"))?;
        let d = &e * &plane_pt;
        // N_{D_i} = N_{E_i/S} + trivial, so c1 = E_i|_{E_i}
        let conormal_deg = -(&e * &d).integrate();
        centers.push((d, conormal_deg));
    }

    let mut entries = BTreeMap::new();
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                let nexp = 4 - a - b - c;
                let g = &(&pulled[0].pow(a) * &pulled[1].pow(b)) * &pulled[2].pow(c);
                let val = if nexp == 0 {
                    g.integrate()
                } else {
                    let sign = if nexp % 2 == 1 { int(1) } else { int(-1) };
                    let mut acc = Rational::zero();
                    for (d, conormal) in &centers {
                        acc += match nexp - 1 {
                            2 => (&g * d).integrate(),
                            3 => conormal * &g.coeffs()[unit],
                            _ => Rational::zero(),
                        };
                    }
                    sign * acc
                };
                entries.insert([a, b, c, nexp], val);
            }
        }
    }
    Ok(BlowupTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> BlowupTable {
        blowup_intersection_table().unwrap()
    }

    #[test]
    fn exceptional_powers() {
        let t = t();
        assert_eq!(t.get([0, 0, 0, 4]), Some(&int(-4)));
        assert_eq!(t.get([1, 0, 0, 3]), Some(&int(4)));
        assert_eq!(t.get([0, 1, 0, 3]), Some(&int(0)));
        assert_eq!(t.get([0, 0, 1, 3]), Some(&int(0)));
        for e in [[2, 0, 0, 2], [0, 2, 0, 2], [0, 0, 2, 2], [1, 1, 0, 2], [0, 1, 1, 2]] {
            assert_eq!(t.get(e), Some(&int(0)), "{e:?}");
        }
    }

    #[test]
    fn degree_of_h_prime() {
        let t = t();
        let zeta = BlowupDivisor::from_ints(0, 1, 1, -1);
        assert_eq!(t.power4(&zeta), int(2));
        assert_eq!(t.power4(&BlowupDivisor::from_ints(0, 1, 1, 0)), int(6));
    }

    #[test]
    fn eliminate_h_on_canonical_class() {
        let k = BlowupDivisor::from_ints(-1, 0, -3, 2);
        assert_eq!(k.eliminate_h(), BlowupDivisor::from_ints(0, -3, -3, 3));
        assert_eq!(k.to_string(), "-1*H + -3*H2 + 2*N");
    }

    #[test]
    fn wrong_arity_rejected() {
        assert!(t().intersect(&[BlowupDivisor::from_ints(1, 0, 0, 0)]).is_err());
    }
}
