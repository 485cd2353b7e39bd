use crate::exact::{span_basis, ExactMatrix, Scalar};
use crate::lie::{basis, differential_images, subsets_of, InvariantForm, LieAlgebraData, MultiIndex};
use crate::operator::{Grade, GradedOperator};

use super::triple::{HypercomplexError, HypercomplexTriple, Which};

/// Complex coframe ψ = (φ¹..φ^{2n}, φ̄¹..φ̄^{2n}) adapted to I, where the φ^a
/// are the canonical echelon basis of Λ^{1,0} = {α : α∘I⁻¹ = iα}.
///
/// Forms handled by this type are written over the ψ generators: slot a < 2n
/// is φ^{a+1}, slot 2n + a is φ̄^{a+1}. Bidegrees are read off by counting.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    dim: usize,
    half: usize,
    p: ExactMatrix,
    q: ExactMatrix,
    to_frame: Vec<InvariantForm>,
    to_real: Vec<InvariantForm>,
    conj_images: Vec<InvariantForm>,
    d_images: Vec<InvariantForm>,
    // Images of ψ^a under the I, J, K actions and their inverses.
    actions: [Vec<InvariantForm>; 3],
    inverse_actions: [Vec<InvariantForm>; 3],
    triple: HypercomplexTriple,
}

impl AdaptedFrame {
    pub fn new(alg: &LieAlgebraData, triple: &HypercomplexTriple) -> Result<Self, HypercomplexError> {
        let mut f = Self::algebraic(triple)?;
        let real_d = differential_images(alg);
        f.d_images = f.frame_derivation(&real_d);
        Ok(f)
    }

    /// Frame without a differential (as for an abelian algebra).
    pub fn algebraic(triple: &HypercomplexTriple) -> Result<Self, HypercomplexError> {
        triple.check_quaternion()?;
        let dim = triple.dim();
        let half = dim / 2;
        // α∘I⁻¹ = iα for the row vector a of α ⟺ (Iᵀ + i)aᵀ = 0, using I⁻¹ = −I.
        let shifted = triple.i().transpose().add(&ExactMatrix::identity(dim).scale(&Scalar::i()));
        let phi = span_basis(dim, &shifted.kernel_basis());
        if phi.len() != half {
            return Err(HypercomplexError::Dimension(dim));
        }
        let mut rows = phi.clone();
        rows.extend(phi.iter().map(|r| r.iter().map(Scalar::conj).collect::<Vec<_>>()));
        let p = ExactMatrix::from_rows(rows).expect("square frame");
        let q = p.inverse().map_err(|_| HypercomplexError::Singular)?;
        let to_frame = (0..dim).map(|i| InvariantForm::from_covector(&q.row(i))).collect();
        let to_real = (0..dim).map(|a| InvariantForm::from_covector(&p.row(a))).collect();
        let conj_images =
            (0..dim).map(|a| InvariantForm::generator(dim, if a < half { a + half } else { a - half })).collect();
        let mut f = AdaptedFrame {
            dim,
            half,
            p,
            q,
            to_frame,
            to_real,
            conj_images,
            d_images: vec![InvariantForm::zero(dim, 2); dim],
            actions: Default::default(),
            inverse_actions: Default::default(),
            triple: triple.clone(),
        };
        let minus = Scalar::from_int(-1);
        for (slot, which) in Which::ALL.into_iter().enumerate() {
            let l = triple.get(which);
            f.actions[slot] = f.endo_images(l)?;
            f.inverse_actions[slot] = f.endo_images(&l.scale(&minus))?;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 2n, the complex dimension for I.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn n(&self) -> usize {
        self.dim / 4
    }

    pub fn triple(&self) -> &HypercomplexTriple {
        &self.triple
    }

    /// Rows are ψ^a in real coframe coordinates.
    pub fn p(&self) -> &ExactMatrix {
        &self.p
    }

    pub fn q(&self) -> &ExactMatrix {
        &self.q
    }

    /// The (1,0) coframe φ¹..φ^{2n} as covectors on e_1..e_dim.
    pub fn phi(&self) -> Vec<Vec<Scalar>> {
        (0..self.half).map(|a| self.p.row(a)).collect()
    }

    pub fn to_frame(&self, real: &InvariantForm) -> InvariantForm {
        real.pullback(&self.to_frame)
    }

    pub fn to_real(&self, form: &InvariantForm) -> InvariantForm {
        form.pullback(&self.to_real)
    }

    /// Frame components ψ^a(X).
    pub fn vector_to_frame(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.p.mul_vec(x)
    }

    pub fn vector_from_frame(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.q.mul_vec(z)
    }

    pub fn bidegree(&self, m: MultiIndex) -> (usize, usize) {
        (m.count_in(0, self.half), m.count_in(self.half, self.dim))
    }

    /// Bidegree of a nonzero form all of whose terms share one bidegree.
    pub fn pure_bidegree(&self, form: &InvariantForm) -> Option<(usize, usize)> {
        let mut it = form.terms().map(|(m, _)| self.bidegree(*m));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Lexicographic basis of Λ^{p,q}: (1,0) part outer, (0,1) part inner.
    pub fn basis_pq(&self, p: usize, q: usize) -> Vec<MultiIndex> {
        let lo: Vec<usize> = (0..self.half).collect();
        let hi: Vec<usize> = (self.half..self.dim).collect();
        let mut out = Vec::new();
        for a in subsets_of(&lo, p) {
            for b in subsets_of(&hi, q) {
                out.push(MultiIndex::from_mask(a.mask() | b.mask()));
            }
        }
        out
    }

    pub fn project(&self, form: &InvariantForm, p: usize, q: usize) -> InvariantForm {
        let mut out = InvariantForm::zero(self.dim, p + q);
        if form.degree() != p + q {
            return out;
        }
        for (m, c) in form.terms() {
            if self.bidegree(*m) == (p, q) {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn conj(&self, form: &InvariantForm) -> InvariantForm {
        form.conj_coeffs().pullback(&self.conj_images)
    }

    /// Converts a derivation given on the real coframe to the ψ generators.
    pub fn frame_derivation(&self, real_images: &[InvariantForm]) -> Vec<InvariantForm> {
        (0..self.dim)
            .map(|a| {
                let deg = real_images.first().map_or(1, InvariantForm::degree);
                let mut acc = InvariantForm::zero(self.dim, deg);
                for (i, img) in real_images.iter().enumerate().take(self.dim) {
                    let c = &self.p[(a, i)];
                    if !c.is_zero() {
                        acc = acc.add(&img.scale(c));
                    }
                }
                self.to_frame(&acc)
            })
            .collect()
    }

    pub fn d_images(&self) -> &[InvariantForm] {
        &self.d_images
    }

    pub fn d(&self, form: &InvariantForm) -> InvariantForm {
        form.apply_derivation(&self.d_images, 1)
    }

    /// ∂: the (p+1,q) component of d on each (p,q) component.
    pub fn del(&self, form: &InvariantForm) -> InvariantForm {
        self.split_d(form, (1, 0))
    }

    /// ∂̄: the (p,q+1) component of d on each (p,q) component.
    pub fn delbar(&self, form: &InvariantForm) -> InvariantForm {
        self.split_d(form, (0, 1))
    }

    fn split_d(&self, form: &InvariantForm, shift: (usize, usize)) -> InvariantForm {
        let k = form.degree();
        let mut out = InvariantForm::zero(self.dim, k + 1);
        for p in 0..=k {
            let part = self.project(form, p, k - p);
            if part.is_zero() {
                continue;
            }
            out = out.add(&self.project(&self.d(&part), p + shift.0, k - p + shift.1));
        }
        out
    }

    /// Images of ψ^a under α ↦ α∘L⁻¹.
    pub fn endo_images(&self, l: &ExactMatrix) -> Result<Vec<InvariantForm>, HypercomplexError> {
        let inv = l.inverse().map_err(|_| HypercomplexError::Singular)?;
        let r = self.p.mul(&inv).mul(&self.q);
        Ok((0..self.dim).map(|a| InvariantForm::from_covector(&r.row(a))).collect())
    }

    /// α ↦ α∘L⁻¹ for L ∈ {I, J, K}.
    pub fn act(&self, which: Which, form: &InvariantForm) -> InvariantForm {
        form.pullback(&self.actions[which as usize])
    }

    pub fn act_inverse(&self, which: Which, form: &InvariantForm) -> InvariantForm {
        form.pullback(&self.inverse_actions[which as usize])
    }

    /// Matrix of a linear map Λ^{p,q} → Λ^{p',q'} given on basis forms. The
    /// image must land in the target space.
    pub fn operator<F>(&self, src: (usize, usize), tgt: (usize, usize), f: F) -> GradedOperator
    where
        F: Fn(&InvariantForm) -> InvariantForm,
    {
        let images: Vec<InvariantForm> = self
            .basis_pq(src.0, src.1)
            .into_iter()
            .map(|m| f(&InvariantForm::monomial(self.dim, m, Scalar::one())))
            .collect();
        GradedOperator::from_images(
            Grade::Bidegree(src.0, src.1),
            Grade::Bidegree(tgt.0, tgt.1),
            &self.basis_pq(tgt.0, tgt.1),
            &images,
        )
    }

    pub fn vector_pq(&self, form: &InvariantForm, p: usize, q: usize) -> Vec<Scalar> {
        form.to_vector_checked(&self.basis_pq(p, q))
            .unwrap_or_else(|| panic!("form {form:?} is not of bidegree ({p},{q})"))
    }

    pub fn form_pq(&self, p: usize, q: usize, v: &[Scalar]) -> InvariantForm {
        InvariantForm::from_vector(self.dim, p + q, &self.basis_pq(p, q), v)
    }

    /// (1,0)-part of a real vector, X − i·IX (the factor ½ is dropped).
    pub fn vector_10(&self, x: &[Scalar]) -> Vec<Scalar> {
        let ix = self.triple.i().mul_vec(x);
        x.iter().zip(&ix).map(|(a, b)| a - &b.mul_i()).collect()
    }
}

pub type Projectors = Vec<((usize, usize), GradedOperator)>;

/// Bigrading projectors on Λ^k written in the real coframe basis.
pub fn bigrade_projectors(triple: &HypercomplexTriple, k: usize) -> Result<Projectors, HypercomplexError> {
    let frame = AdaptedFrame::algebraic(triple)?;
    let dim = triple.dim();
    let real_basis = basis(dim, k);
    let lifted: Vec<InvariantForm> =
        real_basis.iter().map(|m| frame.to_frame(&InvariantForm::monomial(dim, *m, Scalar::one()))).collect();
    let mut out = Vec::new();
    for p in 0..=k.min(frame.half()) {
        let q = k - p;
        if q > frame.half() {
            continue;
        }
        let images: Vec<InvariantForm> = lifted.iter().map(|f| frame.to_real(&frame.project(f, p, q))).collect();
        out.push(((p, q), GradedOperator::from_images(Grade::Degree(k), Grade::Degree(k), &real_basis, &images)));
    }
    Ok(out)
}
