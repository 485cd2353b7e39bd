use std::sync::OnceLock;

use thiserror::Error;

use crate::exact::{ExactMatrix, Scalar};
use crate::hypercomplex::{AdaptedFrame, HypercomplexError, HypercomplexTriple, Which};
use crate::lie::{basis, subsets_of, InvariantForm, LieAlgebraData, MultiIndex};
use crate::operator::{Grade, GradedOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error("metric is not a real symmetric {0}x{0} matrix")]
    NotSymmetric(usize),
    #[error("metric is not positive definite")]
    NotPositive,
    #[error("metric is not compatible with {0}: g(L·,L·) ≠ g")]
    NotCompatible(Which),
    #[error("form is not of type (2,0)")]
    NotTwoZero,
    #[error("form is not q-real: JΩ ≠ Ω̄")]
    NotQReal,
    #[error("form is not q-positive: Ω(X,JX) is not a positive definite real quadratic form")]
    NotQPositive,
    #[error(transparent)]
    Hypercomplex(#[from] HypercomplexError),
    #[error("algebra is not unimodular; matrix adjoints are not L² adjoints")]
    NotUnimodular,
    #[error("bidegree ({0},{1}) is out of range for this operator")]
    Bidegree(usize, usize),
    #[error("the top (2n,0)-form is not holomorphic, so ⋆_Φ is unavailable")]
    NoHolomorphicPhi,
    #[error("scene does not satisfy the hypothesis: {0}")]
    Hypothesis(&'static str),
    #[error("internal identity failed: {0}")]
    Consistency(String),
}

/// Compound matrix: k×k minors indexed by lexicographic subsets.
pub fn compound(m: &ExactMatrix, k: usize) -> ExactMatrix {
    let rows: Vec<Vec<usize>> =
        subsets_of(&(0..m.rows()).collect::<Vec<_>>(), k).iter().map(|s| s.indices().collect()).collect();
    let cols: Vec<Vec<usize>> =
        subsets_of(&(0..m.cols()).collect::<Vec<_>>(), k).iter().map(|s| s.indices().collect()).collect();
    let mut out = ExactMatrix::zeros(rows.len(), cols.len());
    for (a, r) in rows.iter().enumerate() {
        for (b, c) in cols.iter().enumerate() {
            out[(a, b)] = m.submatrix(r, c).determinant().expect("square minor");
        }
    }
    out
}

/// 2-form Σ_{i<j} m_ij e^i∧e^j from a skew matrix.
pub fn form_from_skew(m: &ExactMatrix) -> InvariantForm {
    let n = m.rows();
    let mut f = InvariantForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            f.add_term(MultiIndex::from_mask((1 << i) | (1 << j)), m[(i, j)].clone());
        }
    }
    f
}

/// Matrix Ω(e_i, e_j) of a real-coframe 2-form.
pub fn skew_from_form(f: &InvariantForm) -> ExactMatrix {
    let n = f.dim();
    let mut m = ExactMatrix::zeros(n, n);
    for (idx, c) in f.terms() {
        let v: Vec<usize> = idx.indices().collect();
        m[(v[0], v[1])] = c.clone();
        m[(v[1], v[0])] = -c;
    }
    m
}

/// Transposed Gram matrix and its inverse for one bidegree.
#[derive(Debug)]
pub(crate) struct GramPair {
    pub(crate) m: ExactMatrix,
    pub(crate) m_inv: ExactMatrix,
}

/// A hyperhermitian metric on a hypercomplex Lie algebra, with the adapted
/// frame of I and lazily built inner products on every Λ^{p,q}.
#[derive(Debug)]
pub struct Hyperhermitian {
    alg: LieAlgebraData,
    frame: AdaptedFrame,
    g: ExactMatrix,
    omega: InvariantForm,
    unimodular: bool,
    // ⟨ψ^a, ψ^b⟩ restricted to the (1,0) and (0,1) blocks, with inverses.
    h10: ExactMatrix,
    h01: ExactMatrix,
    h10_inv: ExactMatrix,
    h01_inv: ExactMatrix,
    grams: Vec<OnceLock<GramPair>>,
    real_grams: Vec<OnceLock<GramPair>>,
}

impl Clone for Hyperhermitian {
    fn clone(&self) -> Self {
        // Caches are rebuilt on demand.
        Self::assemble(self.alg.clone(), self.frame.clone(), self.g.clone(), self.omega.clone())
            .expect("already validated")
    }
}

impl Hyperhermitian {
    /// Ω = ½(g(J·,·) − i g(K·,·)) from a compatible positive definite g.
    pub fn from_metric(
        alg: &LieAlgebraData,
        triple: &HypercomplexTriple,
        g: &ExactMatrix,
    ) -> Result<Self, HermitianError> {
        let frame = AdaptedFrame::new(alg, triple)?;
        Self::from_metric_in_frame(alg, frame, g)
    }

    /// As `from_metric`, reusing an already built frame of `alg`.
    pub fn from_metric_in_frame(
        alg: &LieAlgebraData,
        frame: AdaptedFrame,
        g: &ExactMatrix,
    ) -> Result<Self, HermitianError> {
        let n = frame.dim();
        if g.rows() != n || g.cols() != n || !g.is_real() || g.transpose() != *g {
            return Err(HermitianError::NotSymmetric(n));
        }
        if !g.is_positive_definite().map_err(|_| HermitianError::NotPositive)? {
            return Err(HermitianError::NotPositive);
        }
        let t = frame.triple();
        for which in Which::ALL {
            let l = t.get(which);
            if l.transpose().mul(g).mul(l) != *g {
                return Err(HermitianError::NotCompatible(which));
            }
        }
        let half = Scalar::frac(1, 2);
        let w = t.j().transpose().mul(g).sub(&t.k().transpose().mul(g).scale(&Scalar::i())).scale(&half);
        let omega = frame.to_frame(&form_from_skew(&w));
        if frame.pure_bidegree(&omega) != Some((2, 0)) {
            return Err(HermitianError::NotTwoZero);
        }
        Self::assemble(alg.clone(), frame, g.clone(), omega)
    }

    /// Recovers g(X,Y) = Re 2Ω(X,JY) from a q-real, q-positive (2,0)-form
    /// written in the adapted frame.
    pub fn from_qform(
        alg: &LieAlgebraData,
        triple: &HypercomplexTriple,
        omega: &InvariantForm,
    ) -> Result<Self, HermitianError> {
        let frame = AdaptedFrame::new(alg, triple)?;
        Self::from_qform_in_frame(alg, frame, omega)
    }

    pub fn from_qform_in_frame(
        alg: &LieAlgebraData,
        frame: AdaptedFrame,
        omega: &InvariantForm,
    ) -> Result<Self, HermitianError> {
        if omega.degree() != 2 || omega.is_zero() || frame.pure_bidegree(omega) != Some((2, 0)) {
            return Err(HermitianError::NotTwoZero);
        }
        if frame.act(Which::J, omega) != frame.conj(omega) {
            return Err(HermitianError::NotQReal);
        }
        let w = skew_from_form(&frame.to_real(omega));
        let wj = w.mul(frame.triple().j());
        // Ω(X,JX) = XᵀWJX must be real and positive for real X ≠ 0.
        let n = frame.dim();
        let mut sym = ExactMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let s = &wj[(a, b)] + &wj[(b, a)];
                if !s.is_real() {
                    return Err(HermitianError::NotQPositive);
                }
                sym[(a, b)] = s;
            }
        }
        if !sym.is_positive_definite().map_err(|_| HermitianError::NotQPositive)? {
            return Err(HermitianError::NotQPositive);
        }
        let g = sym;
        let h = Self::from_metric_in_frame(alg, frame, &g)?;
        if h.omega != *omega {
            return Err(HermitianError::Consistency("Ω ↦ g ↦ Ω round trip".into()));
        }
        Ok(h)
    }

    fn assemble(
        alg: LieAlgebraData,
        frame: AdaptedFrame,
        g: ExactMatrix,
        omega: InvariantForm,
    ) -> Result<Self, HermitianError> {
        let ginv = g.inverse().map_err(|_| HermitianError::NotPositive)?;
        let p = frame.p();
        let h = p.mul(&ginv).mul(&p.adjoint());
        let half = frame.half();
        let lo: Vec<usize> = (0..half).collect();
        let hi: Vec<usize> = (half..frame.dim()).collect();
        if !h.submatrix(&lo, &hi).is_zero() {
            return Err(HermitianError::Consistency("(1,0) and (0,1) forms are not orthogonal".into()));
        }
        let h10 = h.submatrix(&lo, &lo);
        let h01 = h.submatrix(&hi, &hi);
        let h10_inv = h10.inverse().map_err(|_| HermitianError::NotPositive)?;
        let h01_inv = h01.inverse().map_err(|_| HermitianError::NotPositive)?;
        let dim = frame.dim();
        Ok(Hyperhermitian {
            grams: (0..(half + 2) * (half + 2)).map(|_| OnceLock::new()).collect(),
            real_grams: (0..=dim).map(|_| OnceLock::new()).collect(),
            frame,
            g,
            omega,
            unimodular: alg.is_unimodular(),
            alg,
            h10,
            h01,
            h10_inv,
            h01_inv,
        })
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.alg
    }

    pub fn frame(&self) -> &AdaptedFrame {
        &self.frame
    }

    pub fn triple(&self) -> &HypercomplexTriple {
        self.frame.triple()
    }

    pub fn metric(&self) -> &ExactMatrix {
        &self.g
    }

    /// Ω in the adapted frame.
    pub fn omega(&self) -> &InvariantForm {
        &self.omega
    }

    pub fn omega_real(&self) -> InvariantForm {
        self.frame.to_real(&self.omega)
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Quaternionic dimension n (the real dimension is 4n).
    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn half(&self) -> usize {
        self.frame.half()
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn omega_power(&self, k: usize) -> InvariantForm {
        let mut acc = InvariantForm::constant(self.dim(), Scalar::one());
        for _ in 0..k {
            acc = acc.wedge(&self.omega);
        }
        acc
    }

    fn factorial(k: usize) -> Scalar {
        Scalar::from_int((1..=k as i64).product())
    }

    /// Ωⁿ/n!.
    pub fn omega_top(&self) -> InvariantForm {
        let n = self.n();
        self.omega_power(n).scale(&Self::factorial(n).inv().expect("nonzero"))
    }

    /// vol = Ωⁿ∧Ω̄ⁿ/(n!)².
    pub fn vol(&self) -> InvariantForm {
        let top = self.omega_top();
        top.wedge(&self.frame.conj(&top))
    }

    /// The basis top (2n,0)-form ψ¹∧…∧ψ^{2n}.
    pub fn phi0(&self) -> InvariantForm {
        InvariantForm::monomial(self.dim(), MultiIndex::from_mask((1u32 << self.half()) - 1), Scalar::one())
    }

    /// Gram matrix ⟨ψ^S, ψ^T⟩ on Λ^{p,q}, conjugate-linear in the second slot.
    pub fn gram(&self, p: usize, q: usize) -> ExactMatrix {
        self.gram_pair(p, q).m.transpose()
    }

    // One step past the top degree is allowed; those spaces are zero.
    fn check_pq(&self, p: usize, q: usize) -> Result<(), HermitianError> {
        if p > self.half() + 1 || q > self.half() + 1 {
            return Err(HermitianError::Bidegree(p, q));
        }
        Ok(())
    }

    pub(crate) fn gram_pair(&self, p: usize, q: usize) -> &GramPair {
        self.check_pq(p, q).expect("bidegree in range");
        self.grams[p * (self.half() + 2) + q].get_or_init(|| {
            let gram = compound(&self.h10, p).kron(&compound(&self.h01, q));
            let inv = compound(&self.h10_inv, p).kron(&compound(&self.h01_inv, q));
            GramPair { m: gram.transpose(), m_inv: inv.transpose() }
        })
    }

    /// Gram matrix of Λ^k in the real coframe basis.
    pub fn real_gram(&self, k: usize) -> ExactMatrix {
        self.real_gram_pair(k).m.clone()
    }

    fn real_gram_pair(&self, k: usize) -> &GramPair {
        self.real_grams[k].get_or_init(|| {
            let ginv = self.g.inverse().expect("positive definite");
            GramPair { m: compound(&ginv, k), m_inv: compound(&self.g, k) }
        })
    }

    /// ⟨α, β⟩ for forms of the same pure bidegree (or zero forms).
    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> Scalar {
        let bd = self.frame.pure_bidegree(a).or_else(|| self.frame.pure_bidegree(b));
        let Some((p, q)) = bd else { return Scalar::zero() };
        if self.frame.pure_bidegree(a).is_some_and(|x| x != (p, q))
            || self.frame.pure_bidegree(b).is_some_and(|x| x != (p, q))
        {
            return Scalar::zero();
        }
        let u = self.frame.vector_pq(a, p, q);
        let v: Vec<Scalar> = self.frame.vector_pq(b, p, q).iter().map(Scalar::conj).collect();
        let gv = self.gram(p, q).mul_vec(&v);
        u.iter().zip(&gv).map(|(x, y)| x * y).sum()
    }

    pub fn norm_sqr(&self, a: &InvariantForm) -> Scalar {
        self.inner(a, a)
    }

    /// Hermitian adjoint with respect to the Gram matrices, no unimodularity
    /// requirement (for pointwise operators such as Λ).
    pub fn metric_adjoint(&self, op: &GradedOperator) -> GradedOperator {
        assert!(!op.antilinear, "adjoint of a conjugate-linear map");
        let (Grade::Bidegree(sp, sq), Grade::Bidegree(tp, tq)) = (op.source, op.target) else {
            panic!("metric_adjoint needs bidegree grades");
        };
        let src = self.gram_pair(sp, sq);
        let tgt = self.gram_pair(tp, tq);
        let m = src.m_inv.mul(&op.matrix.adjoint()).mul(&tgt.m);
        GradedOperator::new(op.target, op.source, m)
    }

    /// L² adjoint of an invariant operator; requires a unimodular algebra.
    pub fn adjoint(&self, op: &GradedOperator) -> Result<GradedOperator, HermitianError> {
        if !self.unimodular {
            return Err(HermitianError::NotUnimodular);
        }
        Ok(self.metric_adjoint(op))
    }

    /// Real adjoint on the real coframe basis for an operator Λ^a → Λ^b.
    pub fn real_adjoint(&self, op: &GradedOperator) -> Result<GradedOperator, HermitianError> {
        if !self.unimodular {
            return Err(HermitianError::NotUnimodular);
        }
        let (Grade::Degree(a), Grade::Degree(b)) = (op.source, op.target) else {
            panic!("real_adjoint needs degree grades");
        };
        let m = self.real_gram_pair(a).m_inv.mul(&op.matrix.transpose()).mul(&self.real_gram_pair(b).m);
        Ok(GradedOperator::new(op.target, op.source, m))
    }

    /// F_L(X,Y) = g(LX,Y) as a real 2-form.
    pub fn fundamental_form(&self, which: Which) -> InvariantForm {
        let l = self.triple().get(which);
        form_from_skew(&l.transpose().mul(&self.g))
    }

    /// X^♭ = g(X,·).
    pub fn flat(&self, x: &[Scalar]) -> InvariantForm {
        InvariantForm::from_covector(&self.g.mul_vec(x))
    }

    /// Real basis of Λ^k used by `real_gram`.
    pub fn real_basis(&self, k: usize) -> Vec<MultiIndex> {
        basis(self.dim(), k)
    }
}
