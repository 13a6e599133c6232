//! Seeded randomized checks of the algebraic identities the engine relies on.
//! Each check runs its instances in parallel; instance `i` draws from its own
//! stream derived from `(seed, i)`, so reports do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{
    decompose_d1p, decompose_d20, dstar_k_closed_form, k_d1p_from, k_d20_from, reconstruct_d1p, reconstruct_d20,
    CanonicalOp, DecompositionD1p, DecompositionD20,
};
use crate::error::Result;
use crate::random::RandomSource;
use crate::symbol::{dual_d, lie_op, lie_symbolic, lie_tensor, principal_symbol, OpSymbol, PolyVectorField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn instance_rng(seed: u64, salt: u64, i: usize) -> RandomSource {
    RandomSource::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt.rotate_left(32) ^ i as u64)
}

/// Runs `n` instances; an instance yields `Ok(None)` on success, a failure
/// description otherwise.
fn run<F>(name: &str, salt: u64, seed: u64, n: usize, check: F) -> PropertyReport
where
    F: Fn(&mut RandomSource) -> Result<Option<String>> + Sync,
{
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = instance_rng(seed, salt, i);
            match check(&mut rng) {
                Ok(None) => None,
                Ok(Some(msg)) => Some(format!("instance {i}: {msg}")),
                Err(e) => Some(format!("instance {i}: error {e}")),
            }
        })
        .collect();
    PropertyReport { name: name.to_string(), instances: n, failures }
}

/// `lie_op = lie_symbolic` for `m ≤ 4`, `k ≤ 3`, `p ≤ 3`, `deg X ≤ 3`.
pub fn lie_equivalence(seed: u64, n: usize) -> PropertyReport {
    run("lie_op = lie_symbolic", 1, seed, n, |rng| {
        let m = rng.range(1, 4);
        let p = rng.range(0, m.min(3));
        let k = rng.range(0, 3);
        let x = rng.vector_field(m, 3, 3);
        let d = rng.op_symbol(m, k, p, 2, 4);
        let (a, b) = (lie_op(&x, &d)?, lie_symbolic(&x, &d)?);
        Ok((a != b).then(|| format!("X={x:?} D={}", d.to_json())))
    })
}

/// `L_{[X,Y]} = [L_X, L_Y]` on symbols.
pub fn lie_action(seed: u64, n: usize) -> PropertyReport {
    run("L_[X,Y] = [L_X, L_Y]", 2, seed, n, |rng| {
        let m = rng.range(1, 3);
        let p = rng.range(0, m);
        let k = rng.range(0, 2);
        let x = rng.vector_field(m, 2, 2);
        let y = rng.vector_field(m, 2, 2);
        let d = rng.op_symbol(m, k, p, 2, 3);
        let lhs = lie_op(&x.bracket(&y), &d)?;
        let rhs = lie_op(&x, &lie_op(&y, &d)?)?.sub(&lie_op(&y, &lie_op(&x, &d)?)?)?;
        Ok((lhs != rhs).then(|| format!("X={x:?} Y={y:?} D={}", d.to_json())))
    })
}

/// `σ(L_X D) = L_X σ(D)` whenever the right side is nonzero. Draws until `n`
/// such instances are found (bounded number of attempts).
pub fn principal_symbol_equivariance(seed: u64, n: usize) -> PropertyReport {
    let mut report = run("principal symbol equivariance", 3, seed, n, |rng| {
        for _ in 0..64 {
            let m = rng.range(1, 4);
            let p = rng.range(0, m.min(3));
            let k = rng.range(1, 3);
            let x = rng.vector_field(m, 3, 2);
            let d = rng.op_symbol(m, k, p, 2, 4);
            let sigma = principal_symbol(&d)?;
            let transported = lie_tensor(&x, &sigma)?;
            if transported.is_zero() {
                continue;
            }
            let top = lie_op(&x, &d)?.homogeneous_part(sigma.degree()).with_order(sigma.degree())?;
            return Ok((&top != transported.symbol()).then(|| format!("X={x:?} D={}", d.to_json())));
        }
        Ok(Some("no instance with preserved top degree".into()))
    });
    report.name = "principal symbol equivariance".into();
    report
}

/// Random `(m, p, k)` in the domain of `op`.
fn domain(op: CanonicalOp, rng: &mut RandomSource) -> (usize, usize, usize) {
    let m = rng.range(2, 3);
    match op {
        CanonicalOp::Id => (m, rng.range(0, m), rng.range(0, 2)),
        CanonicalOp::I0 => (m, 0, rng.range(0, 2)),
        CanonicalOp::DStar => (m, rng.range(1, m), rng.range(0, 2)),
        CanonicalOp::K1p | CanonicalOp::DStarK => (m, rng.range(0, m - 1), 1),
        CanonicalOp::K20 => (m, 0, 2),
    }
}

/// `L_X(T D) = T(L_X D)` for every monomial field `X` of degree `≤ max_degree`.
pub fn canonical_equivariance(op: CanonicalOp, seed: u64, n: usize, max_degree: usize) -> PropertyReport {
    let name = format!("{op} equivariance");
    run(&name, 10 + op as u64, seed, n, |rng| {
        let (m, p, k) = domain(op, rng);
        let d = rng.op_symbol(m, k, p, 2, 4);
        let image = op.apply(&d)?;
        for x in PolyVectorField::monomials_up_to(m, max_degree) {
            let lhs = lie_op(&x, &image)?;
            let rhs = op.apply(&lie_op(&x, &d)?)?;
            if lhs != rhs {
                return Ok(Some(format!("X={x:?} D={}", d.to_json())));
            }
        }
        Ok(None)
    })
}

/// A decomposition of `d` other than the coordinate one: random pairs are
/// added and the canonical decomposition of the remainder completes it.
pub fn random_decomposition_d1p(rng: &mut RandomSource, d: &OpSymbol) -> Result<DecompositionD1p> {
    let (m, p) = (d.dim(), d.grade());
    let pairs = (0..rng.range(1, 2)).map(|_| (rng.form(m, p, 2, 2), rng.vector_field(m, 2, 2))).collect();
    let extra = DecompositionD1p { dim: m, grade: p, pairs, remainder: rng.form(m, p, 1, 1) };
    let rest = d.sub(&reconstruct_d1p(&extra)?)?;
    decompose_d1p(&rest)?.merge(&extra)
}

pub fn random_decomposition_d20(rng: &mut RandomSource, d: &OpSymbol) -> Result<DecompositionD20> {
    let m = d.dim();
    let triples = (0..rng.range(1, 2))
        .map(|_| (rng.poly(m, 1, 2), rng.vector_field(m, 1, 2), rng.vector_field(m, 1, 2)))
        .collect();
    let pairs = vec![(rng.poly(m, 1, 2), rng.vector_field(m, 2, 2))];
    let extra = DecompositionD20 { dim: m, triples, pairs, remainder: rng.poly(m, 1, 1) };
    let rest = d.sub(&reconstruct_d20(&extra)?)?;
    Ok(decompose_d20(&rest)?.merge(&extra))
}

/// `K(D′)` does not depend on the decomposition used to compute it.
pub fn k_decomposition_independence(seed: u64, n: usize) -> PropertyReport {
    run("K on first-order operators is decomposition independent", 4, seed, n, |rng| {
        let m = rng.range(2, 4);
        let p = rng.range(0, m - 1);
        let d = rng.op_symbol(m, 1, p, 2, 4);
        let canonical = decompose_d1p(&d)?;
        let other = random_decomposition_d1p(rng, &d)?;
        if reconstruct_d1p(&other)? != d {
            return Ok(Some(format!("decomposition does not reproduce D={}", d.to_json())));
        }
        Ok((k_d1p_from(&canonical)? != k_d1p_from(&other)?).then(|| format!("D={}", d.to_json())))
    })
}

/// Same for second-order operators on functions.
pub fn k20_decomposition_independence(seed: u64, n: usize) -> PropertyReport {
    run("K on second-order operators is decomposition independent", 5, seed, n, |rng| {
        let m = rng.range(1, 3);
        let d = rng.op_symbol(m, 2, 0, 2, 4);
        let canonical = decompose_d20(&d)?;
        let other = random_decomposition_d20(rng, &d)?;
        if reconstruct_d20(&other)? != d {
            return Ok(Some(format!("decomposition does not reproduce D={}", d.to_json())));
        }
        Ok((k_d20_from(&canonical)? != k_d20_from(&other)?).then(|| format!("D={}", d.to_json())))
    })
}

/// `d* ∘ K` on `𝒟¹ₚ` equals `α ↦ (1+p)⁻¹ Σ ⟨Λ, i_X dα⟩`.
pub fn dstar_k_routes(seed: u64, n: usize) -> PropertyReport {
    run("d*K closed form", 6, seed, n, |rng| {
        let m = rng.range(2, 4);
        let p = rng.range(0, m - 1);
        let d = rng.op_symbol(m, 1, p, 2, 4);
        let composed = dual_d(&k_d1p_from(&decompose_d1p(&d)?)?)?;
        let dec = random_decomposition_d1p(rng, &d)?;
        Ok((composed != dstar_k_closed_form(&dec)?).then(|| format!("D={}", d.to_json())))
    })
}

/// Every suite with `n` instances each (canonical operators against fields of
/// degree `≤ 3`).
pub fn all(seed: u64, n: usize) -> Vec<PropertyReport> {
    let mut out = vec![lie_equivalence(seed, n), lie_action(seed, n), principal_symbol_equivariance(seed, n)];
    for op in CanonicalOp::ALL {
        out.push(canonical_equivariance(op, seed, n, 3));
    }
    out.push(k_decomposition_independence(seed, n));
    out.push(k20_decomposition_independence(seed, n));
    out.push(dstar_k_routes(seed, n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for r in all(7, 3) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }
}
