//! Riemann-Roch, canonical classes and topological Euler numbers for the
//! rank-3 projective bundle `P` over the quintic del Pezzo surface and for
//! the surfaces and threefolds cut out by the tautological system.

use std::sync::Arc;


use super::blowup::{blowup_intersection_table, BlowupDivisor};
use super::ring::{del_pezzo_ring, projective_bundle_ring, ChernData, ChowClass, ChowRing};
use super::ChowError;
use crate::exactalg::{binomial, int, rat, Rational};

/// Topological Euler number of a surface whose Chow ring is its cohomology:
/// the total rank of the basis.
fn surface_euler(s: &ChowRing) -> Rational {
    int(s.rank() as i64)
}

pub fn tangent_bundle_s(s: &Arc<ChowRing>) -> Result<ChernData, ChowError> {
    Ok(ChernData {
        rank: 2,
        c1: -&s.generator("K")?,
        c2: surface_euler(s),
    })
}

/// The rank-3 bundle with `c1 = -K_S`, `c2 = 3` whose projectivization
/// carries the tautological system.
pub fn tautological_bundle_m(s: &Arc<ChowRing>) -> Result<ChernData, ChowError> {
    Ok(ChernData {
        rank: 3,
        c1: -&s.generator("K")?,
        c2: int(3),
    })
}

/// Chow ring of `P(M)`; its base ring is the first of `sources()`.
pub fn tautological_ring() -> Result<Arc<ChowRing>, ChowError> {
    let s = del_pezzo_ring();
    projective_bundle_ring(&s, &tautological_bundle_m(&s)?)
}

fn base_of(p: &Arc<ChowRing>) -> Arc<ChowRing> {
    Arc::clone(p.sources().next().expect("bundle ring has a base"))
}

fn total_chern(p: &Arc<ChowRing>, data: &ChernData) -> Result<ChowClass, ChowError> {
    let base = &data.c1.ring().clone();
    let c1 = p.pullback(&data.c1)?;
    let c2 = p.pullback(&base.point().scale(&data.c2))?;
    Ok(&(&p.one() + &c1) + &c2)
}

/// `c(T_P) = c(T_S) * c(M^dual (x) O(1))`, the second factor from the
/// relative Euler sequence.
fn tangent_chern_p(p: &Arc<ChowRing>) -> Result<ChowClass, ChowError> {
    let s = base_of(p);
    let m = tautological_bundle_m(&s)?;
    let zeta = p.generator("zeta")?;
    let one = p.one();
    let one_plus_z = &one + &zeta;
    let mc = [
        one.clone(),
        p.pullback(&m.c1)?,
        p.pullback(&s.point().scale(&m.c2))?,
    ];
    let mut relative = p.zero();
    for (k, ck) in mc.iter().enumerate() {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let term = &ck.scale(&sign) * &one_plus_z.pow((m.rank - k) as u32);
        relative = &relative + &term;
    }
    Ok(&total_chern(p, &tangent_bundle_s(&s)?)? * &relative)
}

/// Inverse of `1 + x` with `x` nilpotent.
fn inverse_one_plus(x: &ChowClass) -> ChowClass {
    let ring = x.ring();
    let neg = -x;
    let mut acc = ring.one();
    let mut term = ring.one();
    for _ in 0..ring.top_dimension() {
        term = &term * &neg;
        acc = &acc + &term;
    }
    acc
}

fn todd4(c: &ChowClass) -> ChowClass {
    let c1 = c.component(1);
    let c2 = c.component(2);
    let c3 = c.component(3);
    let c4 = c.component(4);
    let c1sq = &c1 * &c1;
    let one = c.ring().one();
    let td1 = c1.scale(&rat(1, 2));
    let td2 = (&c1sq + &c2).scale(&rat(1, 12));
    let td3 = (&c1 * &c2).scale(&rat(1, 24));
    let td4 = {
        let a = -&(&c1sq * &c1sq);
        let b = (&c1sq * &c2).scale(&int(4));
        let cc = (&c2 * &c2).scale(&int(3));
        let d = &c1 * &c3;
        (&(&(&(&a + &b) + &cc) + &d) - &c4).scale(&rat(1, 720))
    };
    [td1, td2, td3, td4].iter().fold(one, |acc, t| &acc + t)
}

/// `chi(P, O_P(d))` by Hirzebruch-Riemann-Roch.
pub fn hrr_chi(d: i64) -> Result<Rational, ChowError> {
    let p = tautological_ring()?;
    let td = todd4(&tangent_chern_p(&p)?);
    let ch = p.generator("zeta")?.scale(&int(d)).exp();
    Ok((&ch * &td).integrate())
}

/// The closed formula `C(d+4, 4) + C(2d, 4)` for `h^0(P, O_P(d))` as quoted;
/// it agrees with `hrr_chi` for `d = 0, 1, 2` only.
pub fn h0_formula(d: i64) -> Rational {
    binomial(d + 4, 4) + binomial(2 * d, 4)
}

/// `chi(O_B)` for the complete intersection of two members of `|O_P(2)|`,
/// from the Koszul resolution.
pub fn koszul_chi_b() -> Result<Rational, ChowError> {
    Ok(hrr_chi(0)? - int(2) * hrr_chi(-2)? + hrr_chi(-4)?)
}

fn bundle_zeta_divisor() -> BlowupDivisor {
    BlowupDivisor::from_ints(0, 1, 1, -1)
}

/// `deg h` by the blow-up table and by the top Segre number of `M`.
pub fn verify_deg_h_two_ways() -> Result<(Rational, Rational), ChowError> {
    let table = blowup_intersection_table()?;
    let a = table.power4(&bundle_zeta_divisor());
    let p = tautological_ring()?;
    let b = p.generator("zeta")?.pow(4).integrate();
    if a != b {
        return Err(ChowError::Inconsistent {
            what: "deg h",
            a,
            b,
        });
    }
    Ok((a, b))
}

#[derive(Debug, Clone)]
pub struct CanonicalClasses {
    /// Canonical class of the blow-up of `S x P2`.
    pub k_blowup: BlowupDivisor,
    /// After pushing forward and substituting `H = 3 H1 - N`.
    pub k_p: BlowupDivisor,
    /// `-c1(T_P)` in the bundle ring.
    pub k_p_bundle: ChowClass,
    /// `K_P = m * zeta`.
    pub zeta_multiple: Rational,
    /// `K_P + 2 zeta + 2 zeta` in the bundle ring.
    pub k_b: ChowClass,
    pub k_b_squared: Rational,
}

pub fn canonical_classes() -> Result<CanonicalClasses, ChowError> {
    let s = del_pezzo_ring();
    // K_{S x P2} = K_S (x) 1 - 3 (1 (x) h), with K_S = -H
    let k_x = BlowupDivisor::from_ints(-1, 0, -3, 0);
    // centers are curves in a 4-fold: discrepancy = codim - 1
    let codim = 4 - 1;
    let k_blowup = k_x.add(&BlowupDivisor::from_ints(0, 0, 0, codim - 1));
    let k_p = k_blowup.eliminate_h();

    let zeta_div = bundle_zeta_divisor();
    let zeta_multiple = -k_p.n.clone();
    if k_p != zeta_div.scale(&zeta_multiple) {
        return Err(ChowError::Invalid(format!(
            "K_P = {k_p} is not a multiple of H1 + H2 - N"
        )));
    }

    let p = projective_bundle_ring(&s, &tautological_bundle_m(&s)?)?;
    let zeta = p.generator("zeta")?;
    let k_p_bundle = -&tangent_chern_p(&p)?.component(1);
    if k_p_bundle != zeta.scale(&zeta_multiple) {
        return Err(ChowError::Invalid(format!(
            "bundle canonical class {k_p_bundle} disagrees with {k_p}"
        )));
    }

    let two_zeta = zeta.scale(&int(2));
    let k_b = &(&k_p_bundle + &two_zeta) + &two_zeta;
    let via_bundle = (&(&k_b * &k_b) * &(&two_zeta * &two_zeta)).integrate();

    // the same number on the blow-up model: K_B = zeta|_B, B = (2 zeta)^2
    let table = blowup_intersection_table()?;
    let kb_div = k_p.add(&zeta_div.scale(&int(4)));
    let via_blowup = table.intersect(&[
        kb_div.clone(),
        kb_div,
        zeta_div.scale(&int(2)),
        zeta_div.scale(&int(2)),
    ])?;
    if via_bundle != via_blowup {
        return Err(ChowError::Inconsistent {
            what: "K_B^2",
            a: via_blowup,
            b: via_bundle,
        });
    }

    Ok(CanonicalClasses {
        k_blowup,
        k_p,
        k_p_bundle,
        zeta_multiple,
        k_b,
        k_b_squared: via_bundle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerNumbers {
    pub e_s: Rational,
    pub genus_c: Rational,
    pub e_c: Rational,
    pub e_q: Rational,
    pub e_q0: Rational,
    pub e_p: Rational,
    pub chi_b: Rational,
    pub k_b_squared: Rational,
    pub e_b: Rational,
    pub delta: Rational,
}

fn agree(what: &'static str, a: Rational, b: Rational) -> Result<Rational, ChowError> {
    if a == b {
        Ok(a)
    } else {
        Err(ChowError::Inconsistent { what, a, b })
    }
}

/// Euler numbers behind the count of singular members of a general pencil
/// in `|O_P(2)|`. Each number reached two ways is checked for agreement.
pub fn euler_numbers() -> Result<EulerNumbers, ChowError> {
    let s = del_pezzo_ring();
    let k = s.generator("K")?;
    let e_s = surface_euler(&s);

    // C in |-2K_S|: 2g - 2 = C.(C + K)
    let c = k.scale(&int(-2));
    let two_g_minus_two = (&c * &(&c + &k)).integrate();
    let genus_c = (&two_g_minus_two + int(2)) / int(2);
    let e_c = -two_g_minus_two;

    // conic bundle over S, degenerating to line pairs over C
    let e_q_fibration = &e_s * int(2) + &e_c;
    // one node on the discriminant adds one to e(C)
    let e_q0 = &e_s * int(2) + (&e_c + int(1));

    let p = projective_bundle_ring(&s, &tautological_bundle_m(&s)?)?;
    let ct = tangent_chern_p(&p)?;
    let zeta = p.generator("zeta")?;
    let two_zeta = zeta.scale(&int(2));
    let divisor_inv = inverse_one_plus(&two_zeta);

    let e_p = agree(
        "e(P)",
        &e_s * int(3),
        ct.component(4).integrate(),
    )?;
    let cq = &ct * &divisor_inv;
    let e_q = agree(
        "e(Q)",
        e_q_fibration,
        (&cq.component(3) * &two_zeta).integrate(),
    )?;

    let chi_b = koszul_chi_b()?;
    let k_b_squared = canonical_classes()?.k_b_squared;
    let cb = &cq * &divisor_inv;
    let e_b = agree(
        "e(B)",
        &chi_b * int(12) - &k_b_squared,
        (&cb.component(2) * &(&two_zeta * &two_zeta)).integrate(),
    )?;

    let delta = &e_p + &e_b - &e_q * int(2);
    Ok(EulerNumbers {
        e_s,
        genus_c,
        e_c,
        e_q,
        e_q0,
        e_p,
        chi_b,
        k_b_squared,
        e_b,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::binomial_poly;

    #[test]
    fn chi_small_twists() {
        let got: Vec<Rational> = [0, 1, 2, -2, -4, -1, -3]
            .iter()
            .map(|&d| hrr_chi(d).unwrap())
            .collect();
        assert_eq!(got[..3], [int(1), int(5), int(16)]);
        assert_eq!(got[3], int(0));
        assert_eq!(got[4], int(5));
        // O(-1) and O(-2) have no cohomology on the fibers
        assert_eq!(got[5], int(0));
        assert_eq!(got[6], int(1));
    }

    #[test]
    fn chi_matches_quoted_formula_only_in_low_degree() {
        for d in 0..=2 {
            assert_eq!(hrr_chi(d).unwrap(), h0_formula(d));
        }
        assert_ne!(hrr_chi(3).unwrap(), h0_formula(3));
        for d in -6..=6 {
            let closed = binomial_poly(d + 4, 4) + binomial_poly(d + 2, 4);
            assert_eq!(hrr_chi(d).unwrap(), closed, "d = {d}");
        }
    }

    #[test]
    fn serre_symmetry() {
        for d in -5..=3 {
            assert_eq!(hrr_chi(d).unwrap(), hrr_chi(-3 - d).unwrap());
        }
    }

    #[test]
    fn koszul_and_noether() {
        let chi = koszul_chi_b().unwrap();
        assert_eq!(chi, int(6));
        let e = euler_numbers().unwrap();
        assert_eq!(&chi * int(12), &e.k_b_squared + &e.e_b);
    }

    #[test]
    fn two_routes_to_deg_h() {
        assert_eq!(verify_deg_h_two_ways().unwrap(), (int(2), int(2)));
    }

    #[test]
    fn canonical_class_chain() {
        let k = canonical_classes().unwrap();
        assert_eq!(k.k_p, BlowupDivisor::from_ints(0, -3, -3, 3));
        assert_eq!(k.zeta_multiple, int(-3));
        assert_eq!(k.k_b, k.k_b.ring().generator("zeta").unwrap());
        assert_eq!(k.k_b_squared, int(8));
    }

    #[test]
    fn euler_table() {
        let e = euler_numbers().unwrap();
        assert_eq!(e.e_s, int(7));
        assert_eq!(e.genus_c, int(6));
        assert_eq!(e.e_c, int(-10));
        assert_eq!(e.e_q, int(4));
        assert_eq!(e.e_q0, int(5));
        assert_eq!(e.e_p, int(21));
        assert_eq!(e.e_b, int(64));
        assert_eq!(e.delta, int(77));
        assert!(e.delta != int(0));
    }
}
