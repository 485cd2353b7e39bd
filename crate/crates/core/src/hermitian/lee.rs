use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::hypercomplex::{act_on_form, Which};
use crate::lie::{ce_differential, InvariantForm, MultiIndex};
use crate::operator::GradedOperator;

use super::operators::Dolbeault;
use super::structure::{HermitianError, Hyperhermitian};

/// Lee form together with the identities it is expected to satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeeReport {
    /// θ in the real coframe.
    pub theta: InvariantForm,
    /// θ computed from (g,J) and (g,K).
    pub theta_j: InvariantForm,
    pub theta_k: InvariantForm,
    /// ∂Ω̄ⁿ − θ^{1,0}∧Ω̄ⁿ, in the adapted frame.
    pub eq_lee_residual: InvariantForm,
    /// ∂*Ω + Jθ^{0,1}, in the adapted frame.
    pub del_star_omega_residual: InvariantForm,
}

impl LeeReport {
    pub fn coincide(&self) -> bool {
        self.theta == self.theta_j && self.theta == self.theta_k
    }
}

impl Hyperhermitian {
    /// δ : Λ^k → Λ^{k−1} on the real coframe, the Gram adjoint of d.
    pub fn codifferential(&self, k: usize) -> Result<GradedOperator, HermitianError> {
        if k == 0 || k > self.dim() {
            return Err(HermitianError::Bidegree(k, 0));
        }
        self.real_adjoint(&ce_differential(self.algebra(), k - 1))
    }

    pub fn codifferential_form(&self, form: &InvariantForm) -> Result<InvariantForm, HermitianError> {
        let k = form.degree();
        let op = self.codifferential(k)?;
        let src = self.real_basis(k);
        let tgt = self.real_basis(k - 1);
        Ok(InvariantForm::from_vector(self.dim(), k - 1, &tgt, &op.apply(&form.to_vector(&src))))
    }

    /// θ_L = L(δF_L) for the Hermitian structure (g, L).
    pub fn lee_form_for(&self, which: Which) -> Result<InvariantForm, HermitianError> {
        let delta_f = self.codifferential_form(&self.fundamental_form(which))?;
        Ok(act_on_form(self.triple().get(which), &delta_f)?)
    }

    pub fn lee_form(&self) -> Result<InvariantForm, HermitianError> {
        self.lee_form_for(Which::I)
    }

    /// θ^{1,0} and θ^{0,1} in the adapted frame.
    pub fn theta_parts(&self, theta: &InvariantForm) -> (InvariantForm, InvariantForm) {
        let f = self.frame();
        let t = f.to_frame(theta);
        (f.project(&t, 1, 0), f.project(&t, 0, 1))
    }

    pub fn lee_report(&self) -> Result<LeeReport, HermitianError> {
        let theta = self.lee_form()?;
        let theta_j = self.lee_form_for(Which::J)?;
        let theta_k = self.lee_form_for(Which::K)?;
        let f = self.frame();
        let (t10, t01) = self.theta_parts(&theta);
        let bar_top = f.conj(&self.omega_power(self.n()));
        let eq_lee_residual = f.del(&bar_top).sub(&t10.wedge(&bar_top));
        let del_star = self.dolbeault_star(Dolbeault::Del, 2, 0)?;
        let ds_omega = self.apply_op(&del_star, self.omega());
        let del_star_omega_residual = ds_omega.add(&f.act(Which::J, &t01));
        Ok(LeeReport { theta, theta_j, theta_k, eq_lee_residual, del_star_omega_residual })
    }

    /// δX^♭ as a scalar.
    pub fn divergence_term(&self, x: &[Scalar]) -> Result<Scalar, HermitianError> {
        let d = self.codifferential_form(&self.flat(x))?;
        Ok(d.coeff(MultiIndex::EMPTY))
    }
}
