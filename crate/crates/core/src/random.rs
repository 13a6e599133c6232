//! Seeded generators for random symbols, fields and forms, used by the
//! property checks and by `equivar verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{frac, int, Rational};
use crate::symbol::{AltField, FormField, OpSymbol, PolyFunction, PolyVectorField, SymbolKey};
use crate::tensor::{AltTensor, Blade, MultiIndex, Vector};

pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    /// Small nonzero rational, occasionally with a denominator.
    pub fn rational(&mut self) -> Rational {
        let mut n: i64 = self.rng.gen_range(1..=4);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        if self.rng.gen_bool(0.25) {
            frac(n, self.rng.gen_range(2..=3))
        } else {
            int(n)
        }
    }

    pub fn multi_index(&mut self, dim: usize, max_degree: usize) -> MultiIndex {
        let d = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; dim];
        for _ in 0..d {
            exps[self.rng.gen_range(0..dim)] += 1;
        }
        MultiIndex::from_slice(&exps).expect("small exponents")
    }

    pub fn blade(&mut self, dim: usize, grade: usize) -> Blade {
        let all = Blade::all_of_grade(dim, grade);
        all[self.rng.gen_range(0..all.len())]
    }

    pub fn vector(&mut self, dim: usize) -> Vector {
        Vector::new((0..dim).map(|_| if self.rng.gen_bool(0.3) { int(0) } else { self.rational() }).collect())
    }

    pub fn alt_tensor(&mut self, dim: usize, grade: usize, nterms: usize) -> AltTensor {
        let terms: Vec<_> = (0..nterms).map(|_| (self.blade(dim, grade), self.rational())).collect();
        AltTensor::from_terms(dim, grade, terms).expect("valid blades")
    }

    pub fn poly(&mut self, dim: usize, max_degree: usize, nterms: usize) -> PolyFunction {
        PolyFunction::from_terms(dim, (0..nterms).map(|_| (self.multi_index(dim, max_degree), self.rational())))
    }

    pub fn vector_field(&mut self, dim: usize, max_degree: usize, nterms: usize) -> PolyVectorField {
        let mut out = PolyVectorField::zero(dim);
        for _ in 0..nterms {
            let x = self.multi_index(dim, max_degree);
            let j = self.rng.gen_range(0..dim);
            out.add_term(x, j, self.rational());
        }
        out
    }

    /// Random monomial field `c x^ν ∂_j` with `|ν| = degree` exactly.
    pub fn monomial_field(&mut self, dim: usize, degree: usize) -> PolyVectorField {
        let all = PolyVectorField::monomials_of_degree(dim, degree);
        all[self.rng.gen_range(0..all.len())].clone()
    }

    pub fn form(&mut self, dim: usize, grade: usize, max_degree: usize, nterms: usize) -> FormField {
        let mut out = AltField::zero(dim, grade);
        for _ in 0..nterms {
            let x = self.multi_index(dim, max_degree);
            let b = self.blade(dim, grade);
            out.add_term(x, b, self.rational());
        }
        out
    }

    /// Random symbol in `𝒟ₚᵏ` whose `ξ`-degrees fill `0..=order` and whose
    /// coefficients have `x`-degree `≤ max_x_degree`.
    pub fn op_symbol(
        &mut self,
        dim: usize,
        order: usize,
        grade: usize,
        max_x_degree: usize,
        nterms: usize,
    ) -> OpSymbol {
        let mut out = OpSymbol::new(dim, order, grade).expect("valid shape");
        for t in 0..nterms {
            let x = self.multi_index(dim, max_x_degree);
            // guarantee the top order is present in the first term
            let xi = if t == 0 {
                let mut exps = vec![0u32; dim];
                for _ in 0..order {
                    exps[self.rng.gen_range(0..dim)] += 1;
                }
                MultiIndex::from_slice(&exps).expect("small exponents")
            } else {
                self.multi_index(dim, order)
            };
            let b = self.blade(dim, grade);
            out.insert(SymbolKey::new(x, xi, b), self.rational()).expect("within order");
        }
        out
    }
}
