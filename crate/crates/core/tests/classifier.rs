use equivar::canonical::CanonicalOp;
use equivar::classifier::{
    candidate_space, classify_ansatz, classify_direct, constraint_system, cross_validate, direct_dimension,
    equivariance_residual, generators_of_degree, in_span, rank_of, AnsatzOptions, CandidateOperator, Cell,
    ClassificationResult, DirectOptions,
};
use equivar::random::RandomSource;
use equivar::symbol::{OpSymbol, PolyVectorField, SymbolKey};
use equivar::tensor::Blade;
use equivar::Error;

fn cell(m: usize, p: usize, q: usize, k: usize, l: usize) -> Cell {
    Cell::new(m, p, q, k, l).unwrap()
}

fn direct(c: Cell) -> ClassificationResult {
    classify_direct(c, &DirectOptions::default()).unwrap()
}

fn encode(c: Cell, r_bound: usize, op: CanonicalOp) -> CandidateOperator {
    CandidateOperator::encode(c, r_bound, |d| op.apply(d)).unwrap()
}

#[test]
fn weight_reduction_matches_the_unreduced_system() {
    for (m, p, q, k, l) in
        [(2, 0, 0, 0, 0), (2, 0, 0, 1, 1), (2, 1, 0, 0, 1), (2, 1, 1, 0, 0), (2, 0, 1, 1, 0), (1, 0, 0, 1, 1)]
    {
        let c = cell(m, p, q, k, l);
        let r_bound = k + l + 1;
        let space = candidate_space(&c, r_bound, 0);
        let gens: Vec<PolyVectorField> = (0..=2).flat_map(|d| generators_of_degree(m, d)).collect();
        let matrix = constraint_system(&space, &gens);
        let full = space.len() - matrix.rank();
        assert_eq!(full, direct_dimension(c, r_bound, 0, 2), "cell {c:?}");
    }
}

#[test]
fn basis_vectors_have_zero_residual() {
    let mut rng = RandomSource::new(11);
    for c in [cell(3, 1, 0, 1, 2), cell(3, 0, 0, 2, 2), cell(3, 1, 1, 1, 1), cell(3, 0, 1, 1, 0)] {
        let result = direct(c);
        let fields = PolyVectorField::monomials_up_to(c.m, 3);
        for t in &result.basis {
            for _ in 0..3 {
                let d = rng.op_symbol(c.m, c.k, c.p, 1, 3);
                for x in &fields {
                    assert!(equivariance_residual(t, x, &d).unwrap().is_zero(), "cell {c:?}");
                }
            }
        }
    }
}

#[test]
fn canonical_operators_lie_in_the_computed_spaces() {
    let cases = [
        (cell(3, 1, 0, 1, 2), vec![CanonicalOp::DStar]),
        (cell(3, 0, 0, 2, 2), vec![CanonicalOp::Id, CanonicalOp::I0]),
        (cell(3, 1, 1, 1, 1), vec![CanonicalOp::Id, CanonicalOp::DStarK]),
        (cell(3, 1, 2, 1, 0), vec![CanonicalOp::K1p]),
        (cell(3, 0, 1, 2, 1), vec![CanonicalOp::K20]),
    ];
    for (c, ops) in cases {
        let result = direct(c);
        let encoded: Vec<CandidateOperator> = ops.iter().map(|op| encode(c, result.bounds.r_bound, *op)).collect();
        for (op, t) in ops.iter().zip(&encoded) {
            assert!(!t.is_zero());
            assert!(in_span(&result.basis, t), "{op} not in cell {c:?}");
        }
        assert_eq!(rank_of(&encoded), result.dimension, "cell {c:?}");
    }
}

#[test]
fn non_equivariant_candidate_is_outside_the_span() {
    let c = cell(3, 1, 0, 1, 2);
    let result = direct(c);
    let projection = CandidateOperator::encode(c, result.bounds.r_bound, |d| {
        let mut out = OpSymbol::new(3, 2, 0)?;
        for (key, v) in d.terms().filter(|(k, _)| k.blade.contains(0)) {
            out.insert(SymbolKey::new(key.x, key.xi.increment(0), Blade::from_bits(0)), v.clone())?;
        }
        Ok(out)
    })
    .unwrap();
    assert!(!in_span(&result.basis, &projection));
}

#[test]
fn reference_cells() {
    for ((m, p, q, k, l), dim) in [
        ((3, 1, 0, 1, 2), 1),
        ((3, 0, 0, 2, 2), 2),
        ((4, 2, 0, 1, 2), 0),
        ((3, 1, 2, 3, 2), 0),
        ((3, 0, 0, 0, 0), 1),
        ((1, 0, 0, 0, 0), 1),
    ] {
        let result = direct(cell(m, p, q, k, l));
        assert_eq!(result.dimension, dim, "cell {:?}", (m, p, q, k, l));
        assert!(result.stabilized);
    }
}

#[test]
fn ansatz_relation_for_first_order_operators_on_one_forms() {
    let result = classify_ansatz(cell(3, 1, 1, 1, 1), &AnsatzOptions::default()).unwrap();
    assert_eq!(result.dimension, 2);
}

#[test]
fn both_paths_agree() {
    for ((m, p, q, k, l), dim) in [((3, 1, 0, 1, 2), 1), ((3, 0, 0, 1, 1), 2), ((3, 1, 2, 2, 1), 0)] {
        let check = cross_validate(cell(m, p, q, k, l), &DirectOptions::default(), &AnsatzOptions::default()).unwrap();
        assert!(check.agree, "{:?}", check.differences);
        assert_eq!(check.direct.dimension, dim);
        assert_eq!(check.direct.basis, check.ansatz.basis);
    }
}

#[test]
fn invalid_cells_are_rejected() {
    assert!(matches!(Cell::new(2, 2, 3, 0, 0), Err(Error::InvalidParameters(_))));
    assert!(matches!(Cell::new(9, 0, 0, 0, 0), Err(Error::UnsupportedDimension(9))));
}

#[test]
fn results_round_trip_through_json() {
    let result = direct(cell(3, 0, 0, 1, 1));
    let back = ClassificationResult::from_json(&result.to_json()).unwrap();
    assert_eq!(back, result);
    for t in &result.basis {
        assert_eq!(&CandidateOperator::from_json(&t.to_json()).unwrap(), t);
    }
    assert!(CandidateOperator::from_json("{}").is_err());
}
