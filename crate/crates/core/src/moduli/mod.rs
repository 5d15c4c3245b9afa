//! Divisor-class arithmetic on the Prym moduli space of genus 6 (with up to
//! five marked points) and on the compactified moduli of principally
//! polarized abelian fivefolds, paired against explicit curve classes.

mod enumerative;
mod pullbacks;
mod slope;

pub use enumerative::{
    chi_of_y_chain, degree_nine_lemma, lambda_degree_from_family, pencil_curve_numbers,
    psi_degree_via_z, solve_double_line_count, solve_double_line_count_reduced, FamilyInputs,
    PencilNumbers, PsiDegree, YChain, GENUS, NET_CUBIC_DEGREE,
};
pub use pullbacks::{
    ap_pullback_theta, pullback_a6, pullback_boundary_d6, pullback_delta0, prym_pullback_lambda,
    BoundaryPullback, ThetaSymbol,
};
pub use slope::{slope_bound, slope_bound_for, SlopeBound, SlopeVariant};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::ChowError;
use crate::exactalg::{int, serial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("class carries omitted boundary terms; curve '{0}' is not declared orthogonal to them")]
    MarkerNotOrthogonal(String),
    #[error("genus must be even and at least 4, got {0}")]
    InvalidGenus(i64),
    #[error("degenerate relation: {0}")]
    Degenerate(String),
    #[error("{what}: computed {computed}, expected {expected}")]
    Mismatch {
        what: &'static str,
        computed: Rational,
        expected: Rational,
    },
}

/// Ordered basis `lambda, delta0', delta0'', delta0ram, psi_1..psi_5`.
pub const R6_BASIS: [&str; 9] = [
    "lambda", "delta0'", "delta0''", "delta0ram", "psi1", "psi2", "psi3", "psi4", "psi5",
];

pub const LAMBDA: usize = 0;
pub const DELTA0_PRIME: usize = 1;
pub const DELTA0_DOUBLE_PRIME: usize = 2;
pub const DELTA0_RAM: usize = 3;

/// Index of `psi_j` (1-based `j`).
pub const fn psi(j: usize) -> usize {
    3 + j
}

pub const MARKED_POINTS: usize = 5;

/// A divisor class over [`R6_BASIS`]. `unknown_boundary` records that the
/// class stands for an expansion with boundary terms left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivClassR6 {
    #[serde(with = "serial::rationals")]
    coeffs: Vec<Rational>,
    pub unknown_boundary: bool,
}

impl DivClassR6 {
    pub fn zero() -> Self {
        DivClassR6 {
            coeffs: vec![int(0); R6_BASIS.len()],
            unknown_boundary: false,
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut c = Self::zero();
        c.coeffs[i] = int(1);
        c
    }

    pub fn from_coeffs(coeffs: [Rational; 9]) -> Self {
        DivClassR6 {
            coeffs: coeffs.to_vec(),
            unknown_boundary: false,
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn with_coeff(mut self, i: usize, c: Rational) -> Self {
        self.coeffs[i] = c;
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivClassR6 {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            unknown_boundary: self.unknown_boundary,
        }
    }

    /// Intersection number with a curve. Refuses when the class hides
    /// boundary terms the curve has not been declared orthogonal to.
    pub fn pair(&self, curve: &CurveClass) -> Result<Rational, ModuliError> {
        if self.unknown_boundary && !curve.marker_orthogonal {
            return Err(ModuliError::MarkerNotOrthogonal(curve.provenance.clone()));
        }
        Ok(self.coeffs.iter().zip(&curve.numbers).map(|(a, b)| a * b).sum())
    }
}

impl Add for &DivClassR6 {
    type Output = DivClassR6;
    fn add(self, o: &DivClassR6) -> DivClassR6 {
        DivClassR6 {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            unknown_boundary: self.unknown_boundary || o.unknown_boundary,
        }
    }
}

impl Sub for &DivClassR6 {
    type Output = DivClassR6;
    fn sub(self, o: &DivClassR6) -> DivClassR6 {
        self + &(-o)
    }
}

impl Neg for &DivClassR6 {
    type Output = DivClassR6;
    fn neg(self) -> DivClassR6 {
        self.scale(&int(-1))
    }
}

impl fmt::Display for DivClassR6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(R6_BASIS)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("{c}*{n}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        if self.unknown_boundary {
            write!(f, " - ...")?;
        }
        Ok(())
    }
}

/// A divisor class `lambda1 * λ1 + d * D` on the compactified moduli of
/// abelian fivefolds (`D` the irreducible boundary).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivClassA6 {
    #[serde(with = "serial::rational")]
    pub lambda1: Rational,
    #[serde(with = "serial::rational")]
    pub d: Rational,
}

impl DivClassA6 {
    pub fn lambda1() -> Self {
        DivClassA6 { lambda1: int(1), d: int(0) }
    }

    pub fn boundary() -> Self {
        DivClassA6 { lambda1: int(0), d: int(1) }
    }
}

/// A curve recorded through its intersection numbers with [`R6_BASIS`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    #[serde(with = "serial::rationals")]
    numbers: Vec<Rational>,
    pub provenance: String,
    pub marker_orthogonal: bool,
}

impl CurveClass {
    pub fn new(numbers: [Rational; 9], provenance: &str) -> Self {
        CurveClass {
            numbers: numbers.to_vec(),
            provenance: provenance.to_string(),
            marker_orthogonal: false,
        }
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }

    pub fn number(&self, i: usize) -> &Rational {
        &self.numbers[i]
    }

    /// Assumes the curve meets none of the boundary terms dropped from a
    /// pullback expansion.
    pub fn declare_marker_orthogonal(mut self) -> Self {
        self.marker_orthogonal = true;
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CurveClass {
            numbers: self.numbers.iter().map(|x| x * c).collect(),
            provenance: format!("{c} * {}", self.provenance),
            marker_orthogonal: self.marker_orthogonal,
        }
    }
}
