//! Exact symbol calculus for linear differential operators from `p`-forms to
//! functions on `ℝᵐ`, the Lie-derivative action of vector fields on them, and
//! classification of the operators between such modules that commute with
//! that action.
//!
//! Layers, bottom to top:
//! - [`tensor`]: multi-indices, exterior algebra, polynomials over the rationals
//! - [`symbol`]: fields, operator symbols, `d`, `d*`, Lie derivatives
//! - [`canonical`]: the canonical equivariant operators
//! - [`classifier`]: exact solvers for the spaces of equivariant operators
//! - [`properties`]: seeded randomized identity checks
//! - [`cli`]: the `equivar` command line

pub mod canonical;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod properties;
pub mod random;
pub mod scalar;
pub mod symbol;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Rational;
