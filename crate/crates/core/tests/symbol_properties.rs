use equivar::random::RandomSource;
use equivar::scalar::int;
use equivar::symbol::{apply, de_rham, dual_d, lie_form, lie_function, lie_op, lie_symbolic, FormField, OpSymbol};
use proptest::prelude::*;

fn grades() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (2usize..=4)
        .prop_flat_map(|m| (any::<u64>(), Just(m), 0..=m, 0..=m))
        .prop_filter("fits", |(_, m, a, b)| a + b <= *m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exterior_derivative_obeys_leibniz((seed, m, p, q) in grades()) {
        let mut rng = RandomSource::new(seed);
        let a = rng.form(m, p, 3, 3);
        let b = rng.form(m, q, 3, 3);
        let lhs = de_rham(&a.wedge(&b).unwrap());
        let sign = if p % 2 == 0 { int(1) } else { int(-1) };
        let rhs = if p + q < m {
            de_rham(&a).wedge(&b).unwrap().add(&a.wedge(&de_rham(&b)).unwrap().scale(&sign)).unwrap()
        } else {
            FormField::zero(m, p + q + 1)
        };
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>(), m in 1usize..=4, p in 0usize..=2) {
        prop_assume!(p + 2 <= m);
        let mut rng = RandomSource::new(seed);
        let w = rng.form(m, p, 4, 4);
        prop_assert!(de_rham(&de_rham(&w)).is_zero());
    }

    #[test]
    fn dual_d_squares_to_zero(seed in any::<u64>(), m in 2usize..=4, k in 0usize..=2) {
        let mut rng = RandomSource::new(seed);
        let p = 2 + (seed as usize) % (m - 1);
        let d = rng.op_symbol(m, k, p, 2, 4);
        prop_assert!(dual_d(&dual_d(&d).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn dual_d_commutes_with_lie_derivative(seed in any::<u64>(), m in 1usize..=3, k in 0usize..=2) {
        let mut rng = RandomSource::new(seed);
        let p = 1 + (seed as usize) % m;
        let x = rng.vector_field(m, 2, 3);
        let d = rng.op_symbol(m, k, p, 2, 3);
        let lhs = dual_d(&lie_op(&x, &d).unwrap()).unwrap();
        let rhs = lie_op(&x, &dual_d(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_is_a_commutator(seed in any::<u64>(), m in 1usize..=3, k in 0usize..=2) {
        let mut rng = RandomSource::new(seed);
        let p = (seed as usize) % (m + 1);
        let x = rng.vector_field(m, 2, 3);
        let d = rng.op_symbol(m, k, p, 2, 3);
        let w = rng.form(m, p, 3, 3);
        let lhs = apply(&lie_op(&x, &d).unwrap(), &w).unwrap();
        let rhs = lie_function(&x, &apply(&d, &w).unwrap()).sub(&apply(&d, &lie_form(&x, &w).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_and_operational_lie_derivatives_agree(seed in any::<u64>(), m in 1usize..=3, k in 0usize..=3) {
        let mut rng = RandomSource::new(seed);
        let p = (seed as usize) % (m + 1);
        let x = rng.vector_field(m, 3, 3);
        let d = rng.op_symbol(m, k, p, 2, 4);
        prop_assert_eq!(lie_op(&x, &d).unwrap(), lie_symbolic(&x, &d).unwrap());
    }

    #[test]
    fn symbol_json_round_trips(seed in any::<u64>(), m in 1usize..=4, k in 0usize..=3) {
        let mut rng = RandomSource::new(seed);
        let p = (seed as usize) % (m + 1);
        let d = rng.op_symbol(m, k, p, 2, 5);
        prop_assert_eq!(OpSymbol::from_json(&d.to_json()).unwrap(), d.clone());
        let w = rng.form(m, p, 3, 3);
        prop_assert_eq!(FormField::from_json(&w.to_json()).unwrap(), w);
    }
}

#[test]
fn malformed_symbol_json_is_rejected() {
    assert!(OpSymbol::from_json("{\"m\":2}").is_err());
    assert!(
        OpSymbol::from_json(r#"{"m":2,"k":1,"p":1,"terms":[{"mu":[0,0],"alpha":[2,0],"I":[1],"coeff":"1"}]}"#).is_err()
    );
    assert!(
        OpSymbol::from_json(r#"{"m":2,"k":1,"p":1,"terms":[{"mu":[0,0],"alpha":[1,0],"I":[3],"coeff":"1"}]}"#).is_err()
    );
}
