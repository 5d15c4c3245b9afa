//! The enumerative inputs of the slope computation: the family of Prym
//! curves cut out by a pencil of conic bundles, its double-line count, and
//! the psi-degrees of the sections along the sweeping curve.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    pullback_delta0, CurveClass, DivClassR6, ModuliError, DELTA0_DOUBLE_PRIME,
    DELTA0_RAM, LAMBDA, MARKED_POINTS,
};
use crate::chow::{euler_numbers, product_projective_ring, ChowClass, ChowRing};
use crate::exactalg::{binomial, int, serial, Rational};

pub const GENUS: i64 = 6;

/// Members of the net's discriminant cubic met by a general line of the
/// net: the sweeping curve crosses each pencil class this many times.
pub const NET_CUBIC_DEGREE: i64 = 3;

/// Number of fixed marked lines on the family surface.
const FIXED_LINES: i64 = 4;

fn sum(classes: impl IntoIterator<Item = ChowClass>, ring: &Arc<ChowRing>) -> ChowClass {
    classes.into_iter().fold(ring.zero(), |a, b| &a + &b)
}

fn hyperplanes(ring: &Arc<ChowRing>, n: usize) -> Result<Vec<ChowClass>, ModuliError> {
    Ok((1..=n)
        .map(|i| ring.generator(&format!("h{i}")))
        .collect::<Result<_, _>>()?)
}

fn divisor(hs: &[ChowClass], coords: &[i64]) -> ChowClass {
    let ring = hs[0].ring();
    sum(hs.iter().zip(coords).map(|(h, &c)| h.scale(&int(c))), ring)
}

/// Canonical class `-sum (n_i + 1) h_i`, read off the total Chern class of
/// the tangent bundle.
fn canonical_class(ring: &Arc<ChowRing>, dims: &[usize]) -> Result<ChowClass, ModuliError> {
    let hs = hyperplanes(ring, dims.len())?;
    let total = hs
        .iter()
        .zip(dims)
        .fold(ring.one(), |acc, (h, &n)| &acc * &(&ring.one() + h).pow(n as u32 + 1));
    Ok(-&total.component(1))
}

/// Coordinates of a divisor class on the `h_i` basis.
fn divisor_coordinates(ring: &Arc<ChowRing>, dims: &[usize], d: &ChowClass) -> Result<Vec<Rational>, ModuliError> {
    let hs = hyperplanes(ring, dims.len())?;
    Ok((0..dims.len())
        .map(|i| {
            let dual = hs.iter().zip(dims).enumerate().fold(ring.one(), |acc, (k, (h, &n))| {
                let e = if k == i { n - 1 } else { n };
                &acc * &h.pow(e as u32)
            });
            (d * &dual).integrate()
        })
        .collect())
}

/// Canonical-class chain on the surface of the family inside `P2 x P1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YChain {
    #[serde(with = "serial::rationals")]
    pub omega_y: Vec<Rational>,
    #[serde(with = "serial::rational")]
    pub h0_ambient: Rational,
    #[serde(with = "serial::rational")]
    pub fixed_line_sections: Rational,
    #[serde(with = "serial::rational")]
    pub geometric_genus: Rational,
    #[serde(with = "serial::rational")]
    pub irregularity: Rational,
    #[serde(with = "serial::rational")]
    pub chi: Rational,
}

/// Adjunction for a surface of class `6h1 + 3h2` in `P2 x P1`, sections of
/// its canonical bundle, and the holomorphic Euler characteristic of the
/// normalized family surface (canonical sections vanishing on the four
/// marked lines removed).
pub fn chi_of_y_chain() -> Result<YChain, ModuliError> {
    let dims = [2, 1];
    let ring = product_projective_ring(&dims)?;
    let hs = hyperplanes(&ring, 2)?;
    let omega = &canonical_class(&ring, &dims)? + &divisor(&hs, &[6, 3]);
    let omega_y = divisor_coordinates(&ring, &dims, &omega)?;
    let (a, b) = match omega_y.as_slice() {
        [a, b] if a.is_integer() && b.is_integer() && !a.is_negative() && !b.is_negative() => {
            (a.to_integer(), b.to_integer())
        }
        _ => return Err(ModuliError::Degenerate(format!("canonical class {omega_y:?} not effective"))),
    };
    let to_i64 = |n: num_bigint::BigInt| i64::try_from(n).map_err(|e| ModuliError::Degenerate(e.to_string()));
    let (a, b) = (to_i64(a)?, to_i64(b)?);
    let h0_ambient = binomial(a + 2, 2) * binomial(b + 1, 1);
    // O_L(1) on each marked line
    let fixed_line_sections = binomial(2, 1) * int(FIXED_LINES);
    let geometric_genus = &h0_ambient - &fixed_line_sections;
    let irregularity = int(0);
    let chi = int(1) - &irregularity + &geometric_genus;
    Ok(YChain {
        omega_y,
        h0_ambient,
        fixed_line_sections,
        geometric_genus,
        irregularity,
        chi,
    })
}

/// Hodge degree of a one-parameter family of genus-`g` curves from the
/// Euler characteristic of its total space.
pub fn lambda_degree_from_family(chi: &Rational, g: i64) -> Rational {
    chi + int(g - 1)
}

/// The pullback of the Gieseker-Petri divisor, `94 lambda - 12 pi^*(delta0)`.
fn petri_class() -> DivClassR6 {
    &DivClassR6::basis(LAMBDA).scale(&int(94)) - &pullback_delta0().scale(&int(12))
}

fn solve_against(class: &DivClassR6, lambda: &Rational, d0p: &Rational, d0pp: &Rational) -> Result<Rational, ModuliError> {
    if lambda.is_zero() {
        return Err(ModuliError::Degenerate("family with zero Hodge degree".into()));
    }
    let known = CurveClass::new(
        [lambda.clone(), d0p.clone(), d0pp.clone(), int(0), int(0), int(0), int(0), int(0), int(0)],
        "pencil without double lines",
    );
    let partial = class.pair(&known)?;
    let c = class.coeff(DELTA0_RAM);
    if c.is_zero() {
        return Err(ModuliError::Degenerate("relation does not involve delta0ram".into()));
    }
    Ok(-partial / c)
}

/// Number of members of the pencil with a double line: the pencil avoids
/// the Gieseker-Petri divisor, so the class pairs to zero with it.
pub fn solve_double_line_count(lambda: &Rational, d0p: &Rational, d0pp: &Rational) -> Result<Rational, ModuliError> {
    solve_against(&petri_class(), lambda, d0p, d0pp)
}

/// The same relation halved, `47 lambda - 6 delta0' - 12 delta0ram`, valid
/// when `delta0''` pairs to zero.
pub fn solve_double_line_count_reduced(lambda: &Rational, d0p: &Rational) -> Result<Rational, ModuliError> {
    let reduced = petri_class()
        .scale(&Rational::new(1.into(), 2.into()))
        .with_coeff(DELTA0_DOUBLE_PRIME, int(0));
    solve_against(&reduced, lambda, d0p, &int(0))
}

/// `int (2h1 + h2 + h3)^3 (3 h3) h1^2` on `P2 x P2 x P2`.
pub fn degree_nine_lemma() -> Result<Rational, ModuliError> {
    let ring = product_projective_ring(&[2, 2, 2])?;
    let hs = hyperplanes(&ring, 3)?;
    let cubic = divisor(&hs, &[2, 1, 1]).pow(3);
    Ok((&(&cubic * &hs[2].scale(&int(3))) * &hs[0].pow(2)).integrate())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiDegree {
    #[serde(with = "serial::rationals")]
    pub omega_z: Vec<Rational>,
    #[serde(with = "serial::rational")]
    pub omega_dot_line: Rational,
    #[serde(with = "serial::rational")]
    pub section_degree: Rational,
    #[serde(with = "serial::rational")]
    pub psi: Rational,
}

/// Canonical class of the surface cut out by three `(2,1,1)` divisors and
/// one `(0,0,3)` divisor in `P2 x P2 x P2`, paired with a marked line of
/// multidegree `(l_h1, ?, l_h3)`; the section degree is two less and the
/// relative twist adds the two back.
pub fn psi_degree_via_z(l_h1: &Rational, l_h3: &Rational) -> Result<PsiDegree, ModuliError> {
    let dims = [2, 2, 2];
    let ring = product_projective_ring(&dims)?;
    let hs = hyperplanes(&ring, 3)?;
    let normal = sum(
        [divisor(&hs, &[2, 1, 1]), divisor(&hs, &[2, 1, 1]), divisor(&hs, &[2, 1, 1]), divisor(&hs, &[0, 0, 3])],
        &ring,
    );
    let omega = &canonical_class(&ring, &dims)? + &normal;
    let omega_z = divisor_coordinates(&ring, &dims, &omega)?;
    if !omega_z[1].is_zero() {
        return Err(ModuliError::Degenerate("canonical class involves h2, whose degree on the line is unknown".into()));
    }
    let omega_dot_line = &omega_z[0] * l_h1 + &omega_z[2] * l_h3;
    let section_degree = &omega_dot_line - int(2);
    let psi = &section_degree + int(2);
    Ok(PsiDegree {
        omega_z,
        omega_dot_line,
        section_degree,
        psi,
    })
}

/// Every number feeding the curve classes, so that each can be traced or
/// perturbed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInputs {
    #[serde(with = "serial::rational")]
    pub chi_y: Rational,
    pub genus: i64,
    /// Singular members of a pencil (`e(P) + e(B) - 2 e(Q)`).
    #[serde(with = "serial::rational")]
    pub delta: Rational,
    /// Quoted: no member of a general pencil lies over `delta0''`.
    #[serde(with = "serial::rational")]
    pub delta0_double_prime: Rational,
    #[serde(with = "serial::rational")]
    pub psi: Rational,
    #[serde(with = "serial::rational")]
    pub cubic_factor: Rational,
}

impl FamilyInputs {
    pub fn computed() -> Result<Self, ModuliError> {
        Ok(FamilyInputs {
            chi_y: chi_of_y_chain()?.chi,
            genus: GENUS,
            delta: euler_numbers()?.delta,
            delta0_double_prime: int(0),
            psi: psi_degree_via_z(&int(0), &int(3))?.psi,
            cubic_factor: int(NET_CUBIC_DEGREE),
        })
    }

    pub fn pencil_numbers(&self) -> Result<PencilNumbers, ModuliError> {
        let lambda = lambda_degree_from_family(&self.chi_y, self.genus);
        let ram = solve_double_line_count(&lambda, &self.delta, &self.delta0_double_prime)?;
        let z = int(0);
        let single = CurveClass::new(
            [
                lambda,
                self.delta.clone(),
                self.delta0_double_prime.clone(),
                ram,
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z,
            ],
            "pencil of conic bundles",
        );
        let tripled = single.scale(&self.cubic_factor);
        let mut numbers: [Rational; 9] = std::array::from_fn(|i| tripled.number(i).clone());
        for n in numbers.iter_mut().skip(4).take(MARKED_POINTS) {
            *n = self.psi.clone();
        }
        let sweeping = CurveClass::new(numbers, "sweeping curve from the net");
        Ok(PencilNumbers { single, sweeping })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilNumbers {
    pub single: CurveClass,
    pub sweeping: CurveClass,
}

pub fn pencil_curve_numbers() -> Result<PencilNumbers, ModuliError> {
    FamilyInputs::computed()?.pencil_numbers()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{psi, DELTA0_PRIME};

    #[test]
    fn y_chain_values() {
        let y = chi_of_y_chain().unwrap();
        assert_eq!(y.omega_y, vec![int(3), int(1)]);
        assert_eq!(y.h0_ambient, int(20));
        assert_eq!(y.geometric_genus, int(12));
        assert_eq!(y.chi, int(13));
        assert_eq!(lambda_degree_from_family(&y.chi, GENUS), int(18));
    }

    #[test]
    fn double_line_count_both_relations() {
        let (l, d) = (int(18), int(77));
        assert_eq!(solve_double_line_count(&l, &d, &int(0)).unwrap(), int(32));
        assert_eq!(solve_double_line_count_reduced(&l, &d).unwrap(), int(32));
        assert!(solve_double_line_count(&int(0), &d, &int(0)).is_err());
    }

    #[test]
    fn degree_nine_and_psi() {
        assert_eq!(degree_nine_lemma().unwrap(), int(9));
        let p = psi_degree_via_z(&int(0), &int(3)).unwrap();
        assert_eq!(p.omega_z, vec![int(3), int(0), int(3)]);
        assert_eq!(p.section_degree, int(7));
        assert_eq!(p.psi, int(9));
        assert_eq!(psi_degree_via_z(&int(0), &int(0)).unwrap().psi, int(0));
    }

    #[test]
    fn pencil_numbers_are_wired_from_computations() {
        let p = pencil_curve_numbers().unwrap();
        let single: Vec<Rational> = p.single.numbers()[..4].to_vec();
        assert_eq!(single, [18, 77, 0, 32].map(int).to_vec());
        for i in 0..4 {
            assert_eq!(p.sweeping.number(i), &(p.single.number(i) * int(3)));
        }
        for j in 1..=5 {
            assert_eq!(p.sweeping.number(psi(j)), &int(9));
        }
        assert_eq!(p.sweeping.number(DELTA0_PRIME), &int(231));
    }
}
