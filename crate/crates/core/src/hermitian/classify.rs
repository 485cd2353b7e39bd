use serde::{Deserialize, Serialize};

use crate::exact::{solve_proportionality, ExactMatrix, Scalar};
use crate::hypercomplex::{obata_connection, AdaptedFrame, ConnectionTable, HypercomplexError};
use crate::lie::{InvariantForm, LieAlgebraData, MultiIndex};

use super::structure::{HermitianError, Hyperhermitian};

/// ∇_X Φ₀ = c(X) Φ₀ for the Obata connection and the basis (2n,0)-form Φ₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlCertificate {
    /// c(e_1), …, c(e_dim).
    pub connection_form: Vec<Scalar>,
    /// c = 0: Φ₀ is Obata-parallel and the algebra is SL(n,ℍ). Otherwise the
    /// test is inconclusive at the invariant level.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub hyperhermitian: bool,
    pub hkt: bool,
    pub balanced: bool,
    /// Lee form in the real coframe.
    pub theta: InvariantForm,
    /// s^Ch from the wedge ratio 2n ∂_Jθ^{1,0}∧Ω^{n−1}/Ωⁿ.
    pub chern_scalar: Scalar,
    /// 2Λ(∂_Jθ^{1,0}), kept as a cross-check.
    pub chern_scalar_trace: Scalar,
    /// λ with ∂_Jθ^{1,0} = λΩ, when such a constant exists.
    pub lambda: Option<Scalar>,
    /// HKT with a real λ.
    pub hkt_einstein: bool,
    pub sl: SlCertificate,
}

impl Classification {
    /// balanced ⇒ s^Ch = 0, HKT–Einstein ⇒ s^Ch = 2nλ, and the two formulas for s^Ch agree.
    pub fn consistent(&self, n: usize) -> bool {
        let traces_agree = self.chern_scalar == self.chern_scalar_trace;
        let balanced_ok = !self.balanced || self.chern_scalar.is_zero();
        let einstein_ok = match (&self.lambda, self.hkt_einstein) {
            (Some(l), true) => self.chern_scalar == l * &Scalar::from_int(2 * n as i64),
            _ => true,
        };
        traces_agree && balanced_ok && einstein_ok
    }
}

/// Obata derivative ∇_X acting on a form written in the adapted frame.
pub fn obata_on_form(
    frame: &AdaptedFrame,
    obata: &ConnectionTable,
    x: &[Scalar],
    form: &InvariantForm,
) -> InvariantForm {
    let images = frame.frame_derivation(&obata.form_images(x));
    form.apply_derivation(&images, 0)
}

pub fn sl_certificate(alg: &LieAlgebraData, frame: &AdaptedFrame) -> Result<SlCertificate, HypercomplexError> {
    let obata = obata_connection(alg, frame.triple())?;
    let dim = frame.dim();
    let top = MultiIndex::from_mask((1u32 << frame.half()) - 1);
    let phi0 = InvariantForm::monomial(dim, top, Scalar::one());
    let connection_form: Vec<Scalar> = (0..dim)
        .map(|i| {
            let mut x = vec![Scalar::zero(); dim];
            x[i] = Scalar::one();
            // Obata preserves I, so the line of Φ₀ is preserved.
            obata_on_form(frame, &obata, &x, &phi0).coeff(top)
        })
        .collect();
    let certified = connection_form.iter().all(Scalar::is_zero);
    Ok(SlCertificate { connection_form, certified })
}

impl Hyperhermitian {
    pub fn is_hkt(&self) -> bool {
        self.frame().del(self.omega()).is_zero()
    }

    /// ∂_Jθ^{1,0} in the adapted frame.
    pub fn einstein_form(&self, theta: &InvariantForm) -> InvariantForm {
        let (t10, _) = self.theta_parts(theta);
        self.del_j_form(&t10)
    }

    /// 2n ∂_Jθ^{1,0}∧Ω^{n−1}/Ωⁿ, a ratio of (2n,0) coefficients.
    pub fn chern_scalar(&self, theta: &InvariantForm) -> Scalar {
        let n = self.n();
        let top = MultiIndex::from_mask((1u32 << self.half()) - 1);
        let num = self.einstein_form(theta).wedge(&self.omega_power(n - 1)).coeff(top);
        let den = self.omega_power(n).coeff(top);
        &(&num * &Scalar::from_int(2 * n as i64)) / &den
    }

    pub fn chern_scalar_trace(&self, theta: &InvariantForm) -> Result<Scalar, HermitianError> {
        let f = self.einstein_form(theta);
        let v = self.lambda(2, 0)?.apply(&self.frame().vector_pq(&f, 2, 0));
        Ok(&v[0] * &Scalar::from_int(2))
    }

    pub fn einstein_constant(&self, theta: &InvariantForm) -> Option<Scalar> {
        let basis = self.frame().basis_pq(2, 0);
        let a = self.einstein_form(theta).to_vector(&basis);
        let b = self.omega().to_vector(&basis);
        let col = |v: Vec<Scalar>| ExactMatrix::from_columns(v.len(), &[v]);
        solve_proportionality(&col(a), &col(b)).ok().flatten()
    }

    pub fn classify(&self) -> Result<Classification, HermitianError> {
        let theta = self.lee_form()?;
        let hkt = self.is_hkt();
        let lambda = self.einstein_constant(&theta);
        let hkt_einstein = hkt && lambda.as_ref().is_some_and(Scalar::is_real);
        Ok(Classification {
            hyperhermitian: true,
            hkt,
            balanced: theta.is_zero(),
            chern_scalar: self.chern_scalar(&theta),
            chern_scalar_trace: self.chern_scalar_trace(&theta)?,
            lambda,
            hkt_einstein,
            sl: sl_certificate(self.algebra(), self.frame())?,
            theta,
        })
    }
}
