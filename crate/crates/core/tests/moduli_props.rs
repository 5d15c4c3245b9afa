use proptest::prelude::*;

use prymconic::exactalg::{int, rat, Rational};
use prymconic::moduli::{
    pencil_curve_numbers, slope_bound, slope_bound_for, solve_double_line_count,
    solve_double_line_count_reduced, CurveClass, DivClassR6, FamilyInputs, ModuliError, SlopeVariant,
    DELTA0_PRIME, LAMBDA,
};

fn coeffs() -> impl Strategy<Value = [Rational; 9]> {
    prop::array::uniform9(-20i64..=20).prop_map(|a| a.map(int))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_is_bilinear(a in coeffs(), b in coeffs(), n in coeffs(), k in -5i64..=5) {
        let (da, db) = (DivClassR6::from_coeffs(a), DivClassR6::from_coeffs(b));
        let c = CurveClass::new(n, "test");
        prop_assert_eq!((&da + &db).pair(&c).unwrap(), da.pair(&c).unwrap() + db.pair(&c).unwrap());
        prop_assert_eq!(da.scale(&int(k)).pair(&c).unwrap(), da.pair(&c).unwrap() * int(k));
        prop_assert_eq!(da.pair(&c.scale(&int(k))).unwrap(), da.pair(&c).unwrap() * int(k));
        prop_assert_eq!((-&da).pair(&c).unwrap(), -da.pair(&c).unwrap());
    }

    #[test]
    fn reduced_relation_agrees_when_no_double_prime(l in 1i64..=50, d in 0i64..=200) {
        prop_assert_eq!(
            solve_double_line_count(&int(l), &int(d), &int(0)).unwrap(),
            solve_double_line_count_reduced(&int(l), &int(d)).unwrap()
        );
    }

    #[test]
    fn slope_is_scale_invariant(k in 1i64..=9) {
        let g = pencil_curve_numbers().unwrap().sweeping.declare_marker_orthogonal();
        let a = slope_bound_for(&g, SlopeVariant::Full).unwrap();
        let b = slope_bound_for(&g.scale(&int(k)), SlopeVariant::Full).unwrap();
        prop_assert_eq!(a.slope, b.slope);
    }
}

fn slope_of(inputs: &FamilyInputs) -> Result<Rational, ModuliError> {
    let g = inputs.pencil_numbers()?.sweeping.declare_marker_orthogonal();
    Ok(slope_bound_for(&g, SlopeVariant::Full)?.slope)
}

#[test]
fn every_family_input_reaches_the_slope() {
    let base = FamilyInputs::computed().unwrap();
    let reference = slope_of(&base).unwrap();
    assert_eq!(reference, rat(53, 10));
    let perturbed: Vec<(&str, FamilyInputs)> = vec![
        ("chi_y", FamilyInputs { chi_y: &base.chi_y + int(1), ..base.clone() }),
        ("genus", FamilyInputs { genus: base.genus + 1, ..base.clone() }),
        ("delta", FamilyInputs { delta: &base.delta + int(1), ..base.clone() }),
        ("delta0_double_prime", FamilyInputs { delta0_double_prime: int(1), ..base.clone() }),
        ("psi", FamilyInputs { psi: &base.psi + int(1), ..base.clone() }),
    ];
    for (name, inputs) in perturbed {
        assert_ne!(slope_of(&inputs).ok(), Some(reference.clone()), "{name} does not affect the slope");
    }
    // the cubic factor scales the boundary part but not the marked-point part
    let cubic = FamilyInputs { cubic_factor: int(4), ..base.clone() };
    assert_ne!(slope_of(&cubic).unwrap(), reference);
}

#[test]
fn sweeping_curve_is_three_pencils_off_markers() {
    let p = pencil_curve_numbers().unwrap();
    for i in [LAMBDA, DELTA0_PRIME] {
        assert_eq!(p.sweeping.number(i), &(p.single.number(i) * int(3)));
    }
}

#[test]
fn undeclared_curve_is_refused_with_marker() {
    let g = pencil_curve_numbers().unwrap().sweeping;
    assert!(matches!(slope_bound_for(&g, SlopeVariant::Full), Err(ModuliError::MarkerNotOrthogonal(_))));
    assert!(slope_bound(SlopeVariant::U4).unwrap().slope > slope_bound(SlopeVariant::Full).unwrap().slope);
}
