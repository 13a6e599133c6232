//! Differential operators from `p`-forms to functions, encoded by their
//! polynomial symbols, and the Lie derivative acting on them.

mod derham;
mod field;
pub(crate) mod json;
mod lie;
mod op;

pub use derham::{de_rham, dual_d, interior_field};
pub use field::{AltField, FormField, MultivectorField, PolyFunction, PolyVectorField};
pub use json::{FormFieldJson, OpSymbolJson};
pub use lie::{extract_symbol, lie_form, lie_function, lie_op, lie_symbolic, lie_tensor};
pub use op::{apply, principal_symbol, OpSymbol, SymbolKey, TensorFieldSymbol};
