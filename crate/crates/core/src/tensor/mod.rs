//! Exact multilinear algebra over the rationals: multi-indices, sparse
//! exterior tensors, and polynomials standing in for symmetric tensors.

mod alt;
mod blade;
mod multi_index;
mod poly;

pub use alt::{alt_substitute, interior, pair, wedge, AltCovector, AltTensor, Covector, Vector};
pub use blade::Blade;
pub use multi_index::{binomial, factorial, MultiIndex, MAX_VARS};
pub use poly::{directional_derivative, Polynomial, SymTensor};

/// Largest ambient dimension `m` supported.
pub const MAX_DIM: usize = 8;

pub(crate) fn check_ambient(m: usize) -> crate::error::Result<()> {
    if m == 0 || m > MAX_DIM {
        return Err(crate::error::Error::UnsupportedDimension(m));
    }
    Ok(())
}
