use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    psi, DivClassA6, DivClassR6, ModuliError, DELTA0_DOUBLE_PRIME, DELTA0_PRIME, DELTA0_RAM, LAMBDA,
    MARKED_POINTS,
};
use crate::exactalg::{int, rat, serial, Rational};

/// Pullback of the irreducible boundary of the moduli of curves to the
/// Prym moduli space.
pub fn pullback_delta0() -> DivClassR6 {
    DivClassR6::zero()
        .with_coeff(DELTA0_PRIME, int(1))
        .with_coeff(DELTA0_DOUBLE_PRIME, int(1))
        .with_coeff(DELTA0_RAM, int(2))
}

/// Pullback of the Hodge class along the Prym map.
pub fn prym_pullback_lambda() -> DivClassR6 {
    DivClassR6::zero()
        .with_coeff(LAMBDA, int(1))
        .with_coeff(DELTA0_RAM, rat(-1, 4))
}

/// The theta divisor of the universal Prym variety pulled back along the
/// Abel-Prym map, as far as it is known: psi coefficients only, with every
/// other term either zero or omitted (`unknown_boundary`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSymbol {
    pub genus: i64,
    pub restricted: bool,
    #[serde(with = "serial::rationals")]
    pub psi: Vec<Rational>,
    pub unknown_boundary: bool,
}

impl ThetaSymbol {
    /// The expansion in the genus-6 basis; the restricted form leaves the
    /// last point out.
    pub fn to_r6(&self) -> Result<DivClassR6, ModuliError> {
        if self.genus != 6 {
            return Err(ModuliError::InvalidGenus(self.genus));
        }
        let mut c = DivClassR6::zero();
        for (j, v) in self.psi.iter().enumerate() {
            c = c.with_coeff(psi(j + 1), v.clone());
        }
        c.unknown_boundary = self.unknown_boundary;
        Ok(c)
    }
}

/// `g - 2` points weighted 1/2 and, unless `restricted`, one more point
/// weighted 2.
pub fn ap_pullback_theta(g: i64, restricted: bool) -> Result<ThetaSymbol, ModuliError> {
    if g < 4 || g % 2 != 0 {
        return Err(ModuliError::InvalidGenus(g));
    }
    let mut psi = vec![rat(1, 2); (g - 2) as usize];
    if !restricted {
        psi.push(int(2));
    }
    debug_assert!(g != 6 || psi.len() <= MARKED_POINTS);
    Ok(ThetaSymbol {
        genus: g,
        restricted,
        psi,
        unknown_boundary: true,
    })
}

/// `theta_coeff * theta + rest`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPullback {
    #[serde(with = "serial::rational")]
    pub theta_coeff: Rational,
    pub rest: DivClassR6,
}

impl BoundaryPullback {
    pub fn expand(&self, theta: &ThetaSymbol) -> Result<DivClassR6, ModuliError> {
        Ok(&theta.to_r6()?.scale(&self.theta_coeff) + &self.rest)
    }
}

/// Pullback of the boundary of the abelian-variety compactification to the
/// marked Prym moduli space.
pub fn pullback_boundary_d6() -> BoundaryPullback {
    BoundaryPullback {
        theta_coeff: int(-2),
        rest: DivClassR6::basis(DELTA0_PRIME),
    }
}

/// Pulls a class back from the abelian side using the given theta expansion.
pub fn pullback_a6(class: &DivClassA6, theta: &ThetaSymbol) -> Result<DivClassR6, ModuliError> {
    let hodge = prym_pullback_lambda().scale(&class.lambda1);
    if class.d.is_zero() {
        return Ok(hodge);
    }
    let boundary = pullback_boundary_d6().expand(theta)?;
    Ok(&hodge + &boundary.scale(&class.d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta0_pullback_vector() {
        let expect = [0, 1, 1, 2, 0, 0, 0, 0, 0].map(int);
        assert_eq!(pullback_delta0().coeffs(), expect.as_slice());
        assert_eq!(pullback_delta0().scale(&int(2)), &pullback_delta0() + &pullback_delta0());
    }

    #[test]
    fn theta_expansions() {
        let full = ap_pullback_theta(6, false).unwrap();
        assert_eq!(full.psi, vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), int(2)]);
        let r = ap_pullback_theta(6, true).unwrap().to_r6().unwrap();
        assert_eq!(r.coeff(psi(4)), &rat(1, 2));
        assert_eq!(r.coeff(psi(5)), &int(0));
        assert_eq!(r.coeff(LAMBDA), &int(0));
        assert_eq!(ap_pullback_theta(8, false).unwrap().psi.len(), 7);
        assert!(ap_pullback_theta(5, false).is_err());
        assert!(ap_pullback_theta(8, false).unwrap().to_r6().is_err());
    }

    #[test]
    fn boundary_with_theta_substituted() {
        let d = pullback_boundary_d6().expand(&ap_pullback_theta(6, false).unwrap()).unwrap();
        let expect = [0, 1, 0, 0, -1, -1, -1, -1, -4].map(int);
        assert_eq!(d.coeffs(), expect.as_slice());
        assert!(d.unknown_boundary);
    }

    #[test]
    fn a6_pullback_is_linear() {
        let t = ap_pullback_theta(6, false).unwrap();
        let c = DivClassA6 { lambda1: int(3), d: int(-2) };
        let lhs = pullback_a6(&c, &t).unwrap();
        let rhs = &pullback_a6(&DivClassA6::lambda1(), &t).unwrap().scale(&int(3))
            - &pullback_a6(&DivClassA6::boundary(), &t).unwrap().scale(&int(2));
        assert_eq!(lhs, rhs);
    }
}
