//! Graded intersection rings small enough to carry a full multiplication
//! table: products of projective spaces, the quintic del Pezzo surface, and
//! rank-r projective bundles over a surface. The blow-up model and the
//! Riemann-Roch / Euler-number computations are built on top.

mod blowup;
mod ring;
mod riemann_roch;

pub use blowup::{blowup_intersection_table, BlowupDivisor, BlowupTable};
pub use ring::{
    del_pezzo_ring, product_projective_ring, projective_bundle_ring, ChernData, ChowClass,
    ChowRing,
};
pub use riemann_roch::{
    canonical_classes, euler_numbers, h0_formula, hrr_chi, koszul_chi_b, tangent_bundle_s,
    tautological_bundle_m, tautological_ring, verify_deg_h_two_ways, CanonicalClasses,
    EulerNumbers,
};

use thiserror::Error;

use crate::exactalg::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("classes belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("{what}: route A gives {a}, route B gives {b}")]
    Inconsistent {
        what: &'static str,
        a: Rational,
        b: Rational,
    },
    #[error("invalid ring data: {0}")]
    Invalid(String),
}
