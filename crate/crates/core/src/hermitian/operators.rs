use crate::exact::{ExactMatrix, Scalar};
use crate::hypercomplex::Which;
use crate::lie::{InvariantForm, MultiIndex};
use crate::operator::{Grade, GradedOperator};

use super::structure::{HermitianError, Hyperhermitian};

/// The first-order operators that have Hodge-theoretic adjoints here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dolbeault {
    Del,
    DelBar,
    DelJ,
}

impl Hyperhermitian {
    /// ∂_J = J∂̄J⁻¹ on a form written in the adapted frame.
    pub fn del_j_form(&self, form: &InvariantForm) -> InvariantForm {
        let f = self.frame();
        f.act(Which::J, &f.delbar(&f.act_inverse(Which::J, form)))
    }

    pub fn apply_dolbeault(&self, kind: Dolbeault, form: &InvariantForm) -> InvariantForm {
        match kind {
            Dolbeault::Del => self.frame().del(form),
            Dolbeault::DelBar => self.frame().delbar(form),
            Dolbeault::DelJ => self.del_j_form(form),
        }
    }

    fn shifted(kind: Dolbeault, p: usize, q: usize) -> (usize, usize) {
        match kind {
            Dolbeault::DelBar => (p, q + 1),
            _ => (p + 1, q),
        }
    }

    /// Matrix of ∂, ∂̄ or ∂_J on Λ^{p,q}.
    pub fn dolbeault(&self, kind: Dolbeault, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        self.check_range(p, q)?;
        // A target past the top degree is the zero space.
        let (tp, tq) = Self::shifted(kind, p, q);
        Ok(self.frame().operator((p, q), (tp, tq), |f| self.apply_dolbeault(kind, f)))
    }

    /// Adjoint of `kind` as a map Λ^{p,q} → Λ^{p−1,q} (or Λ^{p,q−1} for ∂̄).
    pub fn dolbeault_star(&self, kind: Dolbeault, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        let (sp, sq) = match kind {
            Dolbeault::DelBar => (p, q.checked_sub(1).ok_or(HermitianError::Bidegree(p, q))?),
            _ => (p.checked_sub(1).ok_or(HermitianError::Bidegree(p, q))?, q),
        };
        self.check_range(p, q)?;
        self.adjoint(&self.dolbeault(kind, sp, sq)?)
    }

    fn check_range(&self, p: usize, q: usize) -> Result<(), HermitianError> {
        if p > self.half() || q > self.half() {
            return Err(HermitianError::Bidegree(p, q));
        }
        Ok(())
    }

    /// Ω ∧ − : Λ^{p,q} → Λ^{p+2,q}.
    pub fn lefschetz(&self, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        self.check_range(p, q)?;
        if p + 2 > self.half() {
            return Err(HermitianError::Bidegree(p, q));
        }
        Ok(self.frame().operator((p, q), (p + 2, q), |f| self.omega().wedge(f)))
    }

    /// Λ, the pointwise adjoint of Ω ∧ −, as a map Λ^{p,q} → Λ^{p−2,q}.
    pub fn lambda(&self, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        let sp = p.checked_sub(2).ok_or(HermitianError::Bidegree(p, q))?;
        Ok(self.metric_adjoint(&self.lefschetz(sp, q)?))
    }

    pub fn lambda_form(&self, form: &InvariantForm) -> Result<InvariantForm, HermitianError> {
        if form.is_zero() {
            return Ok(InvariantForm::zero(self.dim(), form.degree().saturating_sub(2)));
        }
        let (p, q) = self
            .frame()
            .pure_bidegree(form)
            .ok_or(HermitianError::Consistency("Λ of a form without pure bidegree".into()))?;
        let op = self.lambda(p, q)?;
        Ok(self.frame().form_pq(p - 2, q, &op.apply(&self.frame().vector_pq(form, p, q))))
    }

    /// Conjugate-linear star determined by α∧⋆β = ⟨α,β⟩·reference, where
    /// the reference is a multiple of the monomial `top`. Each source basis
    /// monomial pairs with exactly one complementary target monomial.
    fn complementary_star(
        &self,
        src: (usize, usize),
        tgt: (usize, usize),
        top: MultiIndex,
        reference: &Scalar,
    ) -> GradedOperator {
        let f = self.frame();
        let sb = f.basis_pq(src.0, src.1);
        let tb = f.basis_pq(tgt.0, tgt.1);
        let gram = self.gram(src.0, src.1);
        let mut s = ExactMatrix::zeros(tb.len(), sb.len());
        for (i, b) in sb.iter().enumerate() {
            let c = MultiIndex::from_mask(top.mask() & !b.mask());
            let k = tb.iter().position(|t| *t == c).expect("complement lies in the target basis");
            let (sign, _) = b.wedge(c).expect("complementary monomials");
            // b∧c = sign·top = (sign/reference)·ref_form, so row k of W⁻¹ is reference·sign.
            let w_inv = reference * &Scalar::from_int(sign as i64);
            for j in 0..sb.len() {
                s[(k, j)] = &w_inv * &gram[(i, j)];
            }
        }
        GradedOperator::antilinear(Grade::Bidegree(src.0, src.1), Grade::Bidegree(tgt.0, tgt.1), s)
    }

    /// Hodge star Λ^{p,q} → Λ^{2n−p,2n−q}, α∧*β = ⟨α,β⟩·vol, conjugate-linear.
    pub fn star(&self, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        self.check_range(p, q)?;
        let h = self.half();
        let top = MultiIndex::from_mask((1u32 << self.dim()) - 1);
        let v = self.vol().coeff(top);
        Ok(self.complementary_star((p, q), (h - p, h - q), top, &v))
    }

    /// Whether the top (2n,0)-form is holomorphic, so that ⋆_Φ is defined.
    pub fn has_holomorphic_phi(&self) -> bool {
        self.frame().delbar(&self.phi0()).is_zero()
    }

    /// ⋆_Φ : Λ^{p,0} → Λ^{2n−p,0}, α∧⋆_Φβ∧Φ̄ = ⟨α,β⟩(Ωⁿ/n!)∧Φ̄, conjugate-linear.
    /// For invariant forms this does not depend on the choice of Φ. Requires
    /// a holomorphic Φ₀, so that −⋆_Φ∂⋆_Φ is the L² adjoint.
    pub fn star_phi(&self, p: usize) -> Result<GradedOperator, HermitianError> {
        if !self.has_holomorphic_phi() {
            return Err(HermitianError::NoHolomorphicPhi);
        }
        self.pointwise_star_phi(p)
    }

    /// ⋆_Φ as a pointwise operator, without asking Φ₀ to be holomorphic.
    pub fn pointwise_star_phi(&self, p: usize) -> Result<GradedOperator, HermitianError> {
        self.check_range(p, 0)?;
        let top = MultiIndex::from_mask((1u32 << self.half()) - 1);
        let w = self.omega_top().coeff(top);
        Ok(self.complementary_star((p, 0), (self.half() - p, 0), top, &w))
    }

    /// −*D* : Λ^{p,0} → Λ^{p−1,0}.
    pub fn star_adjoint(&self, kind: Dolbeault, p: usize) -> Result<GradedOperator, HermitianError> {
        if p == 0 || kind == Dolbeault::DelBar {
            return Err(HermitianError::Bidegree(p, 0));
        }
        let h = self.half();
        let s1 = self.star(p, 0)?;
        let d = self.dolbeault(kind, h - p, h)?;
        let s2 = self.star(h - p + 1, h)?;
        Ok(s2.compose(&d).compose(&s1).neg())
    }

    /// −⋆_Φ D ⋆_Φ : Λ^{p,0} → Λ^{p−1,0}.
    pub fn star_phi_adjoint(&self, kind: Dolbeault, p: usize) -> Result<GradedOperator, HermitianError> {
        if !self.has_holomorphic_phi() {
            return Err(HermitianError::NoHolomorphicPhi);
        }
        self.pointwise_adjoint(kind, p)
    }

    /// −⋆_Φ D ⋆_Φ built from the pointwise star. On an HKT structure this is
    /// the adjoint in the HKT identities, holomorphic Φ or not.
    pub fn pointwise_adjoint(&self, kind: Dolbeault, p: usize) -> Result<GradedOperator, HermitianError> {
        if p == 0 || kind == Dolbeault::DelBar {
            return Err(HermitianError::Bidegree(p, 0));
        }
        let h = self.half();
        let s1 = self.pointwise_star_phi(p)?;
        let d = self.dolbeault(kind, h - p, 0)?;
        let s2 = self.pointwise_star_phi(h - p + 1)?;
        Ok(s2.compose(&d).compose(&s1).neg())
    }

    /// Applies an operator on Λ^{p,q} to a form.
    pub fn apply_op(&self, op: &GradedOperator, form: &InvariantForm) -> InvariantForm {
        let (Grade::Bidegree(p, q), Grade::Bidegree(tp, tq)) = (op.source, op.target) else {
            panic!("apply_op needs bidegree grades");
        };
        let f = self.frame();
        f.form_pq(tp, tq, &op.apply(&f.vector_pq(form, p, q)))
    }
}
