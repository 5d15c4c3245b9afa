use num_traits::Zero;
use proptest::prelude::*;

use prymconic::exactalg::field::{rank_over, RationalField};
use prymconic::exactalg::serial;
use prymconic::exactalg::univariate as up;
use prymconic::exactalg::{int, Block, MultiPoly, QMatrix, Rational, Var};

fn xy() -> Vec<Block> {
    vec![Block::new("x", 3), Block::new("y", 3)]
}

fn form(degrees: [u32; 2], coeffs: Vec<i64>) -> MultiPoly {
    let b = xy();
    let monos = MultiPoly::monomials(&b, &degrees);
    MultiPoly::from_terms(&b, monos.into_iter().zip(coeffs.into_iter().map(int)))
}

fn form_strategy(degrees: [u32; 2]) -> impl Strategy<Value = MultiPoly> {
    let n = MultiPoly::monomials(&xy(), &degrees).len();
    prop::collection::vec(-5i64..=5, n).prop_map(move |c| form(degrees, c))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multidegrees_add(f in form_strategy([1, 2]), g in form_strategy([2, 0])) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).multidegree(), Some(vec![3, 2]));
    }

    #[test]
    fn euler_identity_in_y(q in form_strategy([2, 2])) {
        let b = xy();
        let mut lhs = MultiPoly::zero(&b);
        for i in 0..3 {
            let v = Var::new(1, i);
            lhs = &lhs + &(&MultiPoly::var(&b, v).unwrap() * &q.partial_derivative(v).unwrap());
        }
        prop_assert_eq!(lhs, q.scale(&int(2)));
    }

    #[test]
    fn product_evaluates_to_product(f in form_strategy([1, 1]), g in form_strategy([1, 1]),
                                    x in prop::collection::vec(rational(), 3),
                                    y in prop::collection::vec(rational(), 3)) {
        let pt = [x, y];
        let fg = (&f * &g).eval_at(&pt).unwrap();
        prop_assert_eq!(fg, f.eval_at(&pt).unwrap() * g.eval_at(&pt).unwrap());
    }

    #[test]
    fn kernel_is_annihilated_and_rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..6)) {
        let m = QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()).unwrap();
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), 6);
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|c| c.is_zero()));
        }
        let as_rat: Vec<Vec<Rational>> = m.to_rows();
        prop_assert_eq!(rank_over(&RationalField, &as_rat), m.rank());
    }

    #[test]
    fn resultant_vanishes_iff_common_root(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6) {
        // (x - a)(x - b) against (x - c)
        let f = RationalField;
        let p = up::mul(&f, &[int(-a), int(1)], &[int(-b), int(1)]);
        let q = vec![int(-c), int(1)];
        let r = up::resultant(&f, &p, &q);
        prop_assert_eq!(r.is_zero(), c == a || c == b);
        prop_assert_eq!(r, int((c - a) * (c - b)));
    }

    #[test]
    fn rational_encoding_round_trips(q in rational()) {
        let e = serial::encode(&q);
        prop_assert_eq!(serial::decode(&e).unwrap(), q);
    }

    #[test]
    fn primitive_is_a_scalar_multiple(q in form_strategy([2, 2]), k in 1i64..=9) {
        prop_assume!(!q.is_zero());
        let p = q.scale(&Rational::new(k.into(), 7.into())).primitive();
        prop_assert_eq!(p.clone(), q.primitive());
        prop_assert_eq!(p.primitive(), p);
    }
}

#[test]
fn polynomial_json_round_trips() {
    let q = form([2, 2], (0..36).map(|i| (i % 7) - 3).collect());
    let s = serde_json::to_string(&q).unwrap();
    let back: MultiPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, q);
}

#[test]
fn non_reduced_encoding_rejected() {
    assert!(serial::decode(&["2".into(), "4".into()]).is_err());
    assert!(serial::decode(&["1".into(), "-3".into()]).is_err());
}
