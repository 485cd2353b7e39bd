use crate::exact::{ExactMatrix, Scalar};
use crate::lie::{basis, InvariantForm};
use crate::operator::{Grade, GradedOperator};

use super::triple::HypercomplexError;

/// Images of e^m under α ↦ α∘L⁻¹ on the real coframe.
pub fn endo_images(l: &ExactMatrix) -> Result<Vec<InvariantForm>, HypercomplexError> {
    let inv = l.inverse().map_err(|_| HypercomplexError::Singular)?;
    Ok((0..l.rows()).map(|m| InvariantForm::from_covector(&inv.row(m))).collect())
}

/// Lα = α(L⁻¹·, …, L⁻¹·), which for L² = −Id is (−1)^k α(L·, …, L·).
pub fn act_on_form(l: &ExactMatrix, form: &InvariantForm) -> Result<InvariantForm, HypercomplexError> {
    Ok(form.pullback(&endo_images(l)?))
}

/// Matrix of the action on Λ^k in the lexicographic real basis.
pub fn endo_action_on_forms(l: &ExactMatrix, k: usize) -> Result<GradedOperator, HypercomplexError> {
    let dim = l.rows();
    let images = endo_images(l)?;
    let b = basis(dim, k);
    let cols: Vec<InvariantForm> =
        b.iter().map(|m| InvariantForm::monomial(dim, *m, Scalar::one()).pullback(&images)).collect();
    Ok(GradedOperator::from_images(Grade::Degree(k), Grade::Degree(k), &b, &cols))
}
