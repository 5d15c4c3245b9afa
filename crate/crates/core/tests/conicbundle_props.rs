use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prymconic::conicbundle::{
    build_net_t, construct, dimension_ladder, discriminant, residual_of, standard_nodes,
    to_symmetric_matrix, xy_blocks, ConicBundleInstance, ConicError, ConstructOptions, LineInFiber,
};
use prymconic::exactalg::{int, Block, MultiPoly, Var};

fn bidegree_22() -> impl Strategy<Value = MultiPoly> {
    let monos = MultiPoly::monomials(&xy_blocks(), &[2, 2]);
    prop::collection::vec(-5i64..=5, monos.len()).prop_map(move |cs| {
        MultiPoly::from_terms(&xy_blocks(), monos.iter().cloned().zip(cs.into_iter().map(int)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_matrix_reassembles(q in bidegree_22()) {
        let a = to_symmetric_matrix(&q).unwrap();
        prop_assert_eq!(a.reassemble(), q);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(a.entry(i, j), a.entry(j, i));
            }
        }
    }

    #[test]
    fn euler_identity_in_both_blocks(q in bidegree_22()) {
        prop_assume!(!q.is_zero());
        for b in 0..2 {
            let mut sum = MultiPoly::zero(&xy_blocks());
            for i in 0..3 {
                let v = MultiPoly::var(&xy_blocks(), Var::new(b, i)).unwrap();
                sum = &sum + &(&v * &q.partial_derivative(Var::new(b, i)).unwrap());
            }
            prop_assert_eq!(sum, q.scale(&int(2)));
        }
    }

    #[test]
    fn discriminant_is_sextic_or_zero(q in bidegree_22()) {
        let g = discriminant(&to_symmetric_matrix(&q).unwrap()).unwrap();
        prop_assert!(g.is_zero() || g.multidegree() == Some(vec![6]));
    }
}

#[test]
fn ladder_is_stable_across_seeds() {
    let u = standard_nodes();
    for seed in 0..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines: Vec<LineInFiber> = (0..5).map(|_| LineInFiber::random(&mut rng)).collect();
        assert_eq!(dimension_ladder(&u, &lines).unwrap(), vec![36, 16, 13, 10, 7, 4, 1], "seed {seed}");
    }
}

#[test]
fn residuals_recompose_restricted_conic() {
    let inst = construct(2, ConstructOptions::default()).unwrap();
    let yb = [Block::new("y", 3)];
    for (lf, r) in inst.marked_lines.iter().zip(&inst.residuals) {
        let (m, section) = residual_of(&inst.form, lf).unwrap();
        assert_eq!(m, r.residual);
        assert_eq!(section.is_none(), r.double_line);
        let conic = inst.form.evaluate(&[Some(lf.o.clone()), None]).unwrap();
        let prod = &MultiPoly::linear_form(&yb, 0, &lf.line) * &MultiPoly::linear_form(&yb, 0, &m);
        assert_eq!(prod, conic);
    }
}

#[test]
fn instance_json_roundtrip_and_determinism() {
    let a = construct(11, ConstructOptions::default()).unwrap();
    let b = construct(11, ConstructOptions::default()).unwrap();
    assert_eq!(a, b);
    let back = ConicBundleInstance::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
    assert!(matches!(ConicBundleInstance::from_json("{}"), Err(ConicError::Json(_))));
}

#[test]
fn net_rejects_special_base_points() {
    let u = standard_nodes();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fixed: Vec<LineInFiber> = (0..4).map(|_| LineInFiber::random(&mut rng)).collect();
    // a node
    assert!(build_net_t(&u[0], &fixed, &u).is_err());
    // on the line through two nodes
    let on_chord = vec![int(1), int(1), int(0)];
    assert!(build_net_t(&on_chord, &fixed, &u).is_err());
    // a base point of a fixed line
    assert!(build_net_t(&fixed[0].o, &fixed, &u).is_err());
    // wrong number of fixed lines
    assert!(build_net_t(&[int(2), int(3), int(7)], &fixed[..3], &u).is_err());
    assert_eq!(build_net_t(&[int(2), int(3), int(7)], &fixed, &u).unwrap().generators.len(), 3);
}
