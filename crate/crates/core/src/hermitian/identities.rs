use serde::{Deserialize, Serialize};

use crate::exact::{span_basis, ExactMatrix, Scalar};
use crate::hypercomplex::{contained_in, is_hyperholomorphic, ConnectionTable, Which};
use crate::lie::{lie_derivative_endo, lie_derivative_form, InvariantForm};
use crate::operator::{Grade, GradedOperator};

use super::classify::obata_on_form;
use super::laplacian::LaplacianKind;
use super::operators::Dolbeault;
use super::structure::{HermitianError, Hyperhermitian};

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Residual operators of [Λ,∂] + ∂_J^* and [∂_J,Λ] + ∂* on Λ^{p,0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HktIdentityResiduals {
    pub p: usize,
    pub lambda_del: GradedOperator,
    pub delj_lambda: GradedOperator,
}

impl HktIdentityResiduals {
    pub fn vanish(&self) -> bool {
        self.lambda_del.is_zero() && self.delj_lambda.is_zero()
    }
}

/// −*D*, −⋆_ΦD⋆_Φ and the Gram adjoint of D on Λ^{p,0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointComparison {
    pub p: usize,
    pub kind: Dolbeault,
    pub gram: GradedOperator,
    pub star: GradedOperator,
    pub star_phi: Option<GradedOperator>,
}

impl AdjointComparison {
    pub fn star_matches_gram(&self) -> bool {
        self.star == self.gram
    }

    pub fn stars_coincide(&self) -> bool {
        self.star_phi.as_ref().is_some_and(|s| *s == self.star)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BochnerReport {
    /// ‖∂*α‖² with α = ι_{Z̄}Ω.
    pub del_star_alpha: Scalar,
    /// ‖∂*Jᾱ‖².
    pub del_star_j_alpha_bar: Scalar,
    /// (ρ − Jρ)(Z, IZ̄) as computed by `q_ricci_pairing`.
    pub pairing: Scalar,
    pub residual: Scalar,
    pub alpha_harmonic: bool,
    pub j_alpha_bar_harmonic: bool,
}

/// δX^♭, tr(∇X) for the Obata connection, and θ(X).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaIdentity {
    pub divergence: Scalar,
    pub trace: Scalar,
    pub theta_x: Scalar,
}

impl DeltaIdentity {
    /// δX^♭ + tr(∇X) + 2θ(X). With θ normalized by dF = θ∧F the Obata trace
    /// is −2θ(X), so this is the combination that vanishes.
    pub fn residual(&self) -> Scalar {
        &(&self.divergence + &self.trace) + &(&self.theta_x * &Scalar::from_int(2))
    }

    /// δX^♭ + tr(∇X) − 2θ(X), the same identity for the opposite sign of θ.
    pub fn opposite_sign_residual(&self) -> Scalar {
        &(&self.divergence + &self.trace) - &(&self.theta_x * &Scalar::from_int(2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcTraceReport {
    /// Basis of {α ∈ Λ^{2,0} : ∂α = 0, ∂_Jα = 0}.
    pub closed: Vec<InvariantForm>,
    /// Indices into `closed` with ∂_J^*∂^*α ≠ 0.
    pub violations: Vec<usize>,
    pub omega_harmonic: bool,
}

impl BcTraceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.omega_harmonic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoclosedReport {
    /// Λ(L_XΩ).
    pub lambda_lie_omega: Scalar,
    /// δX^♭.
    pub divergence: Scalar,
}

impl CoclosedReport {
    pub fn holds(&self) -> bool {
        self.lambda_lie_omega.is_zero() && self.divergence.is_zero()
    }
}

impl Hyperhermitian {
    fn zero_between(&self, src: (usize, usize), tgt: (usize, usize)) -> GradedOperator {
        let f = self.frame();
        GradedOperator::zero(
            Grade::Bidegree(src.0, src.1),
            Grade::Bidegree(tgt.0, tgt.1),
            f.basis_pq(tgt.0, tgt.1).len(),
            f.basis_pq(src.0, src.1).len(),
        )
    }

    /// Λ on Λ^{p,0}, or the zero map when p < 2.
    fn lambda_or_zero(&self, p: usize) -> Result<GradedOperator, HermitianError> {
        if p < 2 || p > self.half() {
            return Ok(self.zero_between((p, 0), (p.saturating_sub(2), 0)));
        }
        self.lambda(p, 0)
    }

    /// The HKT identities on Λ^{p,0}, 1 ≤ p ≤ 2n, with the adjoints −⋆_ΦD⋆_Φ.
    pub fn hkt_identity_residuals(&self, p: usize) -> Result<HktIdentityResiduals, HermitianError> {
        self.identity_residuals_with(p, |kind, p| self.pointwise_adjoint(kind, p))
    }

    /// The same identities with Gram (L²) adjoints. These agree with the
    /// pointwise ones only when Φ₀ is holomorphic.
    pub fn hkt_identity_residuals_l2(&self, p: usize) -> Result<HktIdentityResiduals, HermitianError> {
        self.identity_residuals_with(p, |kind, p| self.dolbeault_star(kind, p, 0))
    }

    fn identity_residuals_with(
        &self,
        p: usize,
        adjoint: impl Fn(Dolbeault, usize) -> Result<GradedOperator, HermitianError>,
    ) -> Result<HktIdentityResiduals, HermitianError> {
        if p == 0 || p > self.half() {
            return Err(HermitianError::Bidegree(p, 0));
        }
        let del = self.dolbeault(Dolbeault::Del, p, 0)?;
        let delj = self.dolbeault(Dolbeault::DelJ, p, 0)?;
        let lam_up = self.lambda_or_zero(p + 1)?;
        let lam = self.lambda_or_zero(p)?;
        let (del_down, delj_down) = if p >= 2 {
            (self.dolbeault(Dolbeault::Del, p - 2, 0)?, self.dolbeault(Dolbeault::DelJ, p - 2, 0)?)
        } else {
            (self.zero_between((0, 0), (p - 1, 0)), self.zero_between((0, 0), (p - 1, 0)))
        };
        // For p = 1 the maps through Λ^{−1,0} are zero; re-grade them to compose.
        let (del_lam, delj_lam) = if p >= 2 {
            (del_down.compose(&lam), delj_down.compose(&lam))
        } else {
            (self.zero_between((p, 0), (p - 1, 0)), self.zero_between((p, 0), (p - 1, 0)))
        };
        let delj_star = adjoint(Dolbeault::DelJ, p)?;
        let del_star = adjoint(Dolbeault::Del, p)?;
        let lambda_del = lam_up.compose(&del).sub(&del_lam).add(&delj_star);
        let delj_lambda = delj_lam.sub(&lam_up.compose(&delj)).add(&del_star);
        Ok(HktIdentityResiduals { p, lambda_del, delj_lambda })
    }

    /// Δ_∂ − Δ_{∂_J} on Λ^{p,0}.
    pub fn laplacian_difference(&self, p: usize) -> Result<GradedOperator, HermitianError> {
        Ok(self.laplacian(LaplacianKind::Del, p, 0)?.sub(&self.laplacian(LaplacianKind::DelJ, p, 0)?))
    }

    pub fn adjoint_comparison(&self, kind: Dolbeault, p: usize) -> Result<AdjointComparison, HermitianError> {
        let gram = self.dolbeault_star(kind, p, 0)?;
        let star = self.star_adjoint(kind, p)?;
        let star_phi = match self.star_phi_adjoint(kind, p) {
            Ok(s) => Some(s),
            Err(HermitianError::NoHolomorphicPhi) => None,
            Err(e) => return Err(e),
        };
        Ok(AdjointComparison { p, kind, gram, star, star_phi })
    }

    /// α = ι_{Z̄}Ω, the (1,0)-form metrically dual to JZ̄. `z` is a (1,0)
    /// vector in real-basis components.
    pub fn alpha_of(&self, z: &[Scalar]) -> InvariantForm {
        let zbar: Vec<Scalar> = z.iter().map(Scalar::conj).collect();
        self.omega().interior(&self.frame().vector_to_frame(&zbar))
    }

    /// (ρ − Jρ)(Z, IZ̄) := −2i(∂θ^{0,1} − J∂θ^{0,1}), evaluated on (Z̄, −IZ).
    pub fn q_ricci_pairing(&self, theta: &InvariantForm, z: &[Scalar]) -> Scalar {
        let f = self.frame();
        let (_, t01) = self.theta_parts(theta);
        let b = f.del(&t01);
        let form = b.sub(&f.act(Which::J, &b)).scale(&Scalar::gaussian(0, -2));
        let zbar: Vec<Scalar> = z.iter().map(Scalar::conj).collect();
        let minus_iz: Vec<Scalar> = self.triple().i().mul_vec(z).iter().map(|c| -c).collect();
        form.evaluate(&[f.vector_to_frame(&zbar), f.vector_to_frame(&minus_iz)])
    }

    /// ‖Z‖² = g(Z, Z̄).
    pub fn vector_norm_sqr(&self, z: &[Scalar]) -> Scalar {
        let zbar: Vec<Scalar> = z.iter().map(Scalar::conj).collect();
        let gz = self.metric().mul_vec(&zbar);
        z.iter().zip(&gz).map(|(a, b)| a * b).sum()
    }

    /// Terms of the divergence identity for the Obata connection; HKT only.
    pub fn delta_identity(
        &self,
        obata: &ConnectionTable,
        theta: &InvariantForm,
        x: &[Scalar],
    ) -> Result<DeltaIdentity, HermitianError> {
        if !self.is_hkt() {
            return Err(HermitianError::Hypothesis("HKT"));
        }
        let nabla = obata.covariant_derivative(x);
        Ok(DeltaIdentity {
            divergence: self.divergence_term(x)?,
            trace: (0..self.dim()).map(|i| nabla[(i, i)].clone()).sum(),
            theta_x: theta.evaluate(&[x.to_vec()]),
        })
    }

    pub fn bochner_report(&self, theta: &InvariantForm, z: &[Scalar]) -> Result<BochnerReport, HermitianError> {
        if !self.is_hkt() {
            return Err(HermitianError::Hypothesis("HKT"));
        }
        if !is_hyperholomorphic(self.algebra(), self.triple(), z) {
            return Err(HermitianError::Hypothesis("Z hyperholomorphic"));
        }
        let f = self.frame();
        let alpha = self.alpha_of(z);
        let j_alpha_bar = f.act(Which::J, &f.conj(&alpha));
        let ds = self.dolbeault_star(Dolbeault::Del, 1, 0)?;
        let sq = |form: &InvariantForm| -> Scalar {
            let v = ds.apply(&f.vector_pq(form, 1, 0));
            Scalar::real(v[0].norm_sqr())
        };
        let a = sq(&alpha);
        let b = sq(&j_alpha_bar);
        let pairing = self.q_ricci_pairing(theta, z);
        let residual = &(&a + &b) + &pairing;
        Ok(BochnerReport {
            del_star_alpha: a,
            del_star_j_alpha_bar: b,
            pairing,
            residual,
            alpha_harmonic: self.is_harmonic(LaplacianKind::Del, &alpha)?,
            j_alpha_bar_harmonic: self.is_harmonic(LaplacianKind::Del, &j_alpha_bar)?,
        })
    }

    /// Invariant-level check that every ∂- and ∂_J-closed (2,0)-form is
    /// Bott–Chern harmonic; balanced HKT only.
    pub fn bc_trace_check(&self, theta: &InvariantForm) -> Result<BcTraceReport, HermitianError> {
        if !self.is_hkt() || !theta.is_zero() {
            return Err(HermitianError::Hypothesis("balanced HKT"));
        }
        let sys = self.dolbeault(Dolbeault::Del, 2, 0)?.matrix.vstack(&self.dolbeault(Dolbeault::DelJ, 2, 0)?.matrix);
        let closed = self.forms_from_kernel(&sys, 2, 0);
        let ds = self.dolbeault_star(Dolbeault::Del, 2, 0)?;
        let djs = self.dolbeault_star(Dolbeault::DelJ, 1, 0)?;
        let second = djs.compose(&ds);
        let f = self.frame();
        let violations = closed
            .iter()
            .enumerate()
            .filter(|(_, a)| second.apply(&f.vector_pq(a, 2, 0)).iter().any(|c| !c.is_zero()))
            .map(|(i, _)| i)
            .collect();
        let omega_harmonic = self.is_harmonic(LaplacianKind::BottChern, self.omega())?;
        Ok(BcTraceReport { closed, violations, omega_harmonic })
    }

    /// Λ(L_XΩ) and δX^♭ for a real X with L_X I = 0.
    pub fn coclosed_check(&self, x: &[Scalar]) -> Result<CoclosedReport, HermitianError> {
        if !lie_derivative_endo(self.algebra(), x, self.triple().i()).is_zero() {
            return Err(HermitianError::Hypothesis("X holomorphic for I"));
        }
        let f = self.frame();
        let lie = f.to_frame(&lie_derivative_form(self.algebra(), x, &self.omega_real()));
        let v = lie
            .to_vector_checked(&f.basis_pq(2, 0))
            .ok_or_else(|| HermitianError::Consistency("L_XΩ left Λ^{2,0}".into()))?;
        let lam = self.lambda(2, 0)?.apply(&v);
        Ok(CoclosedReport { lambda_lie_omega: lam[0].clone(), divergence: self.divergence_term(x)? })
    }

    /// Whether the Δ_∂-harmonic (p,0)-forms are closed under α ↦ Jᾱ, and the
    /// dimension of that space.
    pub fn jbar_closure(&self, p: usize) -> Result<(bool, usize), HermitianError> {
        let f = self.frame();
        let harm = self.harmonic_space(LaplacianKind::Del, p, 0)?;
        let basis = f.basis_pq(p, 0);
        let vecs: Vec<Vec<Scalar>> = harm.iter().map(|a| a.to_vector(&basis)).collect();
        let images: Vec<Vec<Scalar>> = harm.iter().map(|a| f.act(Which::J, &f.conj(a)).to_vector(&basis)).collect();
        Ok((contained_in(basis.len(), &images, &vecs), harm.len()))
    }

    pub fn omega_power_harmonic(&self, p: usize) -> Result<bool, HermitianError> {
        let w = self.omega_power(p);
        if w.is_zero() {
            return Ok(false);
        }
        self.is_harmonic(LaplacianKind::Del, &w)
    }

    /// Obata-parallel (1,0)-forms.
    pub fn obata_parallel_10(&self, obata: &ConnectionTable) -> Vec<InvariantForm> {
        let f = self.frame();
        let n = self.dim();
        let mut sys: Option<ExactMatrix> = None;
        for i in 0..n {
            let x = unit(n, i);
            let op = f.operator((1, 0), (1, 0), |a| obata_on_form(f, obata, &x, a));
            sys = Some(match sys {
                None => op.matrix,
                Some(s) => s.vstack(&op.matrix),
            });
        }
        let sys = sys.expect("nonzero dimension");
        let half = self.half();
        span_basis(half, &sys.kernel_basis()).iter().map(|v| f.form_pq(1, 0, v)).collect()
    }
}
