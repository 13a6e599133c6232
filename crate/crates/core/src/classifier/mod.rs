//! Classification of equivariant operators `𝒟ₚᵏ → 𝒟_qˡ`.

mod candidate;
pub mod linalg;

pub use candidate::{
    all_columns, apply_candidate, candidate_space, equivariance_residual, weight_zero_columns, CandidateOperator,
    CandidateOperatorJson, Cell, ColumnKey, TensorIndex,
};
mod constraints;

pub use constraints::{constraint_system, generators_of_degree, RowMode};
mod direct;
mod result;

pub use direct::{classify_direct, direct_dimension, DirectOptions};
pub use result::{Bounds, ClassificationResult, ClassificationResultJson, SolverPath};
mod ansatz;

pub use ansatz::{
    ansatz_terms, classify_ansatz, AnsatzOptions, AnsatzSystem, AnsatzTerm, Family, InvariantAnsatz, PairingVars,
    Unknown,
};
mod cross;

pub use cross::{cross_validate, in_span, rank_of, same_span, CrossValidation};
mod expected;

pub use expected::{expected_dimension, natural_order};
