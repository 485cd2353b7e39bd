use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::{span_basis, ExactMatrix};
use crate::lie::InvariantForm;
use crate::operator::{Grade, GradedOperator};

use super::operators::Dolbeault;
use super::structure::{HermitianError, Hyperhermitian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LaplacianKind {
    #[serde(rename = "del")]
    Del,
    #[serde(rename = "delJ")]
    DelJ,
    #[serde(rename = "delPhi")]
    DelPhi,
    #[serde(rename = "BC")]
    BottChern,
}

impl LaplacianKind {
    pub const ALL: [LaplacianKind; 4] =
        [LaplacianKind::Del, LaplacianKind::DelJ, LaplacianKind::DelPhi, LaplacianKind::BottChern];

    pub fn name(self) -> &'static str {
        match self {
            LaplacianKind::Del => "del",
            LaplacianKind::DelJ => "delJ",
            LaplacianKind::DelPhi => "delPhi",
            LaplacianKind::BottChern => "BC",
        }
    }
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LaplacianKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "∂" | "del" | "d" => Ok(LaplacianKind::Del),
            "∂J" | "∂_J" | "delJ" | "dJ" => Ok(LaplacianKind::DelJ),
            "∂Φ" | "∂,Φ" | "delPhi" | "dPhi" => Ok(LaplacianKind::DelPhi),
            "BC" | "bc" => Ok(LaplacianKind::BottChern),
            other => Err(format!("unknown Laplacian kind {other:?} (expected ∂, ∂J, ∂Φ or BC)")),
        }
    }
}

/// Kernel of Δ_BC on Λ^{2,0} next to the first-order characterization
/// {∂α = 0, ∂_Jα = 0, ∂_J^*∂^*α = 0}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottChernHarmonic {
    pub kernel: Vec<InvariantForm>,
    pub characterized: Vec<InvariantForm>,
}

impl BottChernHarmonic {
    pub fn agree(&self) -> bool {
        self.kernel == self.characterized
    }
}

impl Hyperhermitian {
    fn zero_op(&self, p: usize, q: usize) -> GradedOperator {
        let n = self.frame().basis_pq(p, q).len();
        GradedOperator::zero(Grade::Bidegree(p, q), Grade::Bidegree(p, q), n, n)
    }

    /// D D* + D* D on Λ^{p,q} for a first-order operator raising p.
    fn first_order_laplacian(&self, kind: Dolbeault, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        if p > self.half() || q > self.half() {
            return Err(HermitianError::Bidegree(p, q));
        }
        let mut out = self.zero_op(p, q);
        if p >= 1 {
            let d = self.dolbeault(kind, p - 1, q)?;
            let ds = self.adjoint(&d)?;
            out = out.add(&d.compose(&ds));
        }
        if p < self.half() {
            let d = self.dolbeault(kind, p, q)?;
            let ds = self.adjoint(&d)?;
            out = out.add(&ds.compose(&d));
        }
        Ok(out)
    }

    /// ∂^{⋆_Φ} = −⋆_Φ∂⋆_Φ.
    pub fn del_star_phi(&self, p: usize) -> Result<GradedOperator, HermitianError> {
        self.star_phi_adjoint(Dolbeault::Del, p)
    }

    fn phi_laplacian(&self, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        if q != 0 || p > self.half() {
            return Err(HermitianError::Bidegree(p, q));
        }
        if !self.is_unimodular() {
            return Err(HermitianError::NotUnimodular);
        }
        let mut out = self.zero_op(p, 0);
        if p >= 1 {
            out = out.add(&self.dolbeault(Dolbeault::Del, p - 1, 0)?.compose(&self.del_star_phi(p)?));
        }
        if p < self.half() {
            out = out.add(&self.del_star_phi(p + 1)?.compose(&self.dolbeault(Dolbeault::Del, p, 0)?));
        }
        Ok(out)
    }

    /// Δ_BC on Λ^{2,0}:
    /// ∂*∂ + ∂_J^*∂_J + ∂∂_J∂_J^*∂* + ∂_J^*∂*∂∂_J + ∂_J^*∂∂*∂_J + ∂*∂_J∂_J^*∂.
    fn bott_chern_laplacian(&self, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        if (p, q) != (2, 0) || self.half() < 2 {
            return Err(HermitianError::Bidegree(p, q));
        }
        let h = self.half();
        let del = |a: usize| self.dolbeault(Dolbeault::Del, a, 0);
        let delj = |a: usize| self.dolbeault(Dolbeault::DelJ, a, 0);
        let del_s = |a: usize| self.adjoint(&self.dolbeault(Dolbeault::Del, a - 1, 0)?);
        let delj_s = |a: usize| self.adjoint(&self.dolbeault(Dolbeault::DelJ, a - 1, 0)?);
        let mut out = self.zero_op(2, 0);
        // ∂∂_J∂_J^*∂* stays in degrees ≤ 2 and exists for every n.
        out = out.add(&del(1)?.compose(&delj(0)?).compose(&delj_s(1)?).compose(&del_s(2)?));
        if h >= 3 {
            out = out.add(&del_s(3)?.compose(&del(2)?));
            out = out.add(&delj_s(3)?.compose(&delj(2)?));
            out = out.add(&delj_s(3)?.compose(&del(2)?).compose(&del_s(3)?).compose(&delj(2)?));
            out = out.add(&del_s(3)?.compose(&delj(2)?).compose(&delj_s(3)?).compose(&del(2)?));
        }
        if h >= 4 {
            out = out.add(&delj_s(3)?.compose(&del_s(4)?).compose(&del(3)?).compose(&delj(2)?));
        }
        Ok(out)
    }

    pub fn laplacian(&self, kind: LaplacianKind, p: usize, q: usize) -> Result<GradedOperator, HermitianError> {
        match kind {
            LaplacianKind::Del => self.first_order_laplacian(Dolbeault::Del, p, q),
            LaplacianKind::DelJ => self.first_order_laplacian(Dolbeault::DelJ, p, q),
            LaplacianKind::DelPhi => self.phi_laplacian(p, q),
            LaplacianKind::BottChern => self.bott_chern_laplacian(p, q),
        }
    }

    /// Canonical basis of ker Δ as forms in the adapted frame.
    pub fn harmonic_space(
        &self,
        kind: LaplacianKind,
        p: usize,
        q: usize,
    ) -> Result<Vec<InvariantForm>, HermitianError> {
        let op = self.laplacian(kind, p, q)?;
        Ok(self.forms_from_kernel(&op.matrix, p, q))
    }

    pub(crate) fn forms_from_kernel(&self, m: &ExactMatrix, p: usize, q: usize) -> Vec<InvariantForm> {
        let n = self.frame().basis_pq(p, q).len();
        span_basis(n, &m.kernel_basis()).iter().map(|v| self.frame().form_pq(p, q, v)).collect()
    }

    pub fn is_harmonic(&self, kind: LaplacianKind, form: &InvariantForm) -> Result<bool, HermitianError> {
        let Some((p, q)) = self.frame().pure_bidegree(form) else {
            return Ok(true);
        };
        let op = self.laplacian(kind, p, q)?;
        Ok(op.apply(&self.frame().vector_pq(form, p, q)).iter().all(|c| c.is_zero()))
    }

    pub fn bott_chern_harmonic(&self) -> Result<BottChernHarmonic, HermitianError> {
        let kernel = self.harmonic_space(LaplacianKind::BottChern, 2, 0)?;
        let mut sys = self.dolbeault(Dolbeault::Del, 2, 0)?.matrix;
        sys = sys.vstack(&self.dolbeault(Dolbeault::DelJ, 2, 0)?.matrix);
        let ds = self.adjoint(&self.dolbeault(Dolbeault::Del, 1, 0)?)?;
        let djs = self.adjoint(&self.dolbeault(Dolbeault::DelJ, 0, 0)?)?;
        sys = sys.vstack(&djs.compose(&ds).matrix);
        let characterized = self.forms_from_kernel(&sys, 2, 0);
        Ok(BottChernHarmonic { kernel, characterized })
    }
}
