//! The canonical equivariant operators and the decompositions they are built from.

mod decomposition;
mod ops;

pub use decomposition::{
    decompose_d1p, decompose_d20, reconstruct_d1p, reconstruct_d20, DecompositionD1p, DecompositionD20,
};
pub use ops::{dstar_k, dstar_k_closed_form, i_zero, identity, k_d1p, k_d1p_from, k_d20, k_d20_from, CanonicalOp};
