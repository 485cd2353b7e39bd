//! Lie algebras with exact structure constants and their invariant exterior calculus.

mod algebra;
mod calculus;
mod forms;

pub use algebra::{LieAlgebraData, LieError, LieValidation, StructureEntry};
pub use calculus::{
    cartan_violations, ce_d, ce_differential, d_squared_violations, differential_images, interior_operator,
    lie_derivative_endo, lie_derivative_form, lie_derivative_images, lie_derivative_metric, lie_derivative_operator,
};
pub use forms::{basis, subsets_of, InvariantForm, InvariantVector, MultiIndex, MAX_DIM};
