use equivar::random::RandomSource;
use equivar::scalar::{from_bigint, int, zero};
use equivar::tensor::{alt_substitute, directional_derivative, factorial, interior, pair, wedge, AltTensor};
use proptest::prelude::*;

fn sign(n: usize) -> equivar::Rational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn shape() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (2usize..=5)
        .prop_flat_map(|m| (any::<u64>(), Just(m), 0..=m, 0..=m))
        .prop_filter("fits", |(_, m, a, b)| a + b <= *m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative((seed, m, p, q) in shape()) {
        let mut rng = RandomSource::new(seed);
        let a = rng.alt_tensor(m, p, 3);
        let b = rng.alt_tensor(m, q, 3);
        prop_assert_eq!(wedge(&a, &b).unwrap(), wedge(&b, &a).unwrap().scale(&sign(p * q)));
    }

    #[test]
    fn interior_is_an_antiderivation((seed, m, p, q) in shape()) {
        prop_assume!(p + q >= 1);
        let mut rng = RandomSource::new(seed);
        let x = rng.vector(m);
        let a = rng.alt_tensor(m, p, 3);
        let b = rng.alt_tensor(m, q, 3);
        let lhs = interior(&x, &wedge(&a, &b).unwrap()).unwrap();
        let mut rhs = AltTensor::zero(m, p + q - 1);
        if p > 0 {
            rhs = rhs.add(&wedge(&interior(&x, &a).unwrap(), &b).unwrap()).unwrap();
        }
        if q > 0 {
            rhs = rhs.add(&wedge(&a, &interior(&x, &b).unwrap()).unwrap().scale(&sign(p))).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_and_interior_are_dual((seed, m, p, _q) in shape()) {
        prop_assume!(p < m);
        let mut rng = RandomSource::new(seed);
        let x = rng.vector(m);
        let lambda = rng.alt_tensor(m, p, 3);
        let omega = rng.alt_tensor(m, p + 1, 4);
        let lhs = pair(&wedge(&x.to_alt(), &lambda).unwrap(), &omega).unwrap();
        let rhs = pair(&lambda, &interior(&x, &omega).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_squares_to_zero((seed, m, p, _q) in shape()) {
        prop_assume!(p >= 2);
        let mut rng = RandomSource::new(seed);
        let x = rng.vector(m);
        let omega = rng.alt_tensor(m, p, 4);
        prop_assert!(interior(&x, &interior(&x, &omega).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn substitution_pairs_like_zeta_wedge_contraction((seed, m, p, _q) in shape()) {
        prop_assume!(p >= 1);
        let mut rng = RandomSource::new(seed);
        let x = rng.vector(m);
        let zeta = rng.vector(m);
        let lambda = rng.alt_tensor(m, p, 3);
        let omega = rng.alt_tensor(m, p, 3);
        // ⟨X ∧ i_ζ Λ, ω⟩ = ⟨Λ, ζ ∧ i_X ω⟩
        let lhs = pair(&alt_substitute(&x, &zeta, &lambda).unwrap(), &omega).unwrap();
        let rhs = pair(&lambda, &wedge(&zeta.to_alt(), &interior(&x, &omega).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn directional_derivatives_sum_to_a_shift(seed in any::<u64>(), m in 1usize..=4) {
        let mut rng = RandomSource::new(seed);
        let poly = rng.poly(m, 4, 5);
        let zeta = rng.vector(m);
        let xi: Vec<_> = (0..m).map(|_| rng.rational()).collect();
        let shifted: Vec<_> = xi.iter().zip(zeta.components()).map(|(a, b)| a + b).collect();
        // P(ξ + ζ) = Σₙ (ζ∂_ξ)ⁿ P(ξ) / n!
        let mut total = zero();
        let mut term = poly.clone();
        for n in 0..=4u32 {
            total += term.eval(&xi) / from_bigint(factorial(n));
            term = directional_derivative(&zeta, &term);
        }
        prop_assert!(term.is_zero());
        prop_assert_eq!(total, poly.eval(&shifted));
    }
}
