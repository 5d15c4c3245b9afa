use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ap_pullback_theta, pencil_curve_numbers, pullback_a6, CurveClass, DivClassA6, ModuliError, GENUS};
use crate::exactalg::{int, serial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlopeVariant {
    /// All five marked points.
    Full,
    /// Only the first four marked points (the restricted theta pullback).
    U4,
}

impl FromStr for SlopeVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(SlopeVariant::Full),
            "u4" => Ok(SlopeVariant::U4),
            other => Err(format!("unknown slope variant {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeBound {
    pub variant: SlopeVariant,
    #[serde(with = "serial::rational")]
    pub gamma_lambda1: Rational,
    #[serde(with = "serial::rational")]
    pub gamma_boundary: Rational,
    #[serde(with = "serial::rational")]
    pub slope: Rational,
    /// Whether the bound lies below `g + 1`; no conclusion is drawn from it.
    pub below_general_type_threshold: bool,
}

/// Lower bound `gamma.D / gamma.lambda1` for the slope of effective
/// divisors not containing the image of the covering curve `gamma`.
pub fn slope_bound_for(gamma: &CurveClass, variant: SlopeVariant) -> Result<SlopeBound, ModuliError> {
    let theta = ap_pullback_theta(GENUS, variant == SlopeVariant::U4)?;
    let gamma_lambda1 = pullback_a6(&DivClassA6::lambda1(), &theta)?.pair(gamma)?;
    let gamma_boundary = pullback_a6(&DivClassA6::boundary(), &theta)?.pair(gamma)?;
    if gamma_lambda1 <= Rational::zero() {
        return Err(ModuliError::Degenerate(format!("curve has Hodge degree {gamma_lambda1}")));
    }
    let slope = &gamma_boundary / &gamma_lambda1;
    Ok(SlopeBound {
        variant,
        below_general_type_threshold: slope < int(GENUS + 1),
        gamma_lambda1,
        gamma_boundary,
        slope,
    })
}

/// The bound from the sweeping curve of the net, assuming it misses the
/// boundary terms left out of the theta pullback.
pub fn slope_bound(variant: SlopeVariant) -> Result<SlopeBound, ModuliError> {
    let gamma = pencil_curve_numbers()?.sweeping.declare_marker_orthogonal();
    slope_bound_for(&gamma, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn full_and_u4_bounds() {
        let f = slope_bound(SlopeVariant::Full).unwrap();
        assert_eq!((f.gamma_lambda1.clone(), f.gamma_boundary.clone(), f.slope.clone()), (int(30), int(159), rat(53, 10)));
        assert!(f.below_general_type_threshold);
        let u = slope_bound(SlopeVariant::U4).unwrap();
        assert_eq!((u.gamma_lambda1, u.gamma_boundary, u.slope), (int(30), int(195), rat(13, 2)));
    }

    #[test]
    fn undeclared_curve_is_refused() {
        let gamma = pencil_curve_numbers().unwrap().sweeping;
        assert!(matches!(slope_bound_for(&gamma, SlopeVariant::Full), Err(ModuliError::MarkerNotOrthogonal(_))));
    }
}
