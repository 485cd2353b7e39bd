use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, Scalar};
use crate::lie::{InvariantForm, MultiIndex};

/// Degree of a form space: plain k, or a (p,q) bidegree in an adapted frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    Degree(usize),
    Bidegree(usize, usize),
}

impl Grade {
    pub fn total(self) -> usize {
        match self {
            Grade::Degree(k) => k,
            Grade::Bidegree(p, q) => p + q,
        }
    }
}

/// Linear (or conjugate-linear) map between form spaces, as a matrix in the
/// fixed lexicographic multi-index bases. A conjugate-linear operator acts
/// as `v ↦ M·conj(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    pub source: Grade,
    pub target: Grade,
    pub matrix: ExactMatrix,
    pub antilinear: bool,
}

impl GradedOperator {
    pub fn new(source: Grade, target: Grade, matrix: ExactMatrix) -> Self {
        GradedOperator { source, target, matrix, antilinear: false }
    }

    pub fn antilinear(source: Grade, target: Grade, matrix: ExactMatrix) -> Self {
        GradedOperator { source, target, matrix, antilinear: true }
    }

    pub fn zero(source: Grade, target: Grade, rows: usize, cols: usize) -> Self {
        Self::new(source, target, ExactMatrix::zeros(rows, cols))
    }

    pub fn identity(grade: Grade, n: usize) -> Self {
        Self::new(grade, grade, ExactMatrix::identity(n))
    }

    /// Columns are images of the source basis forms, read off in the target basis.
    pub fn from_images(source: Grade, target: Grade, target_basis: &[MultiIndex], images: &[InvariantForm]) -> Self {
        let cols: Vec<Vec<Scalar>> = images
            .iter()
            .map(|f| {
                f.to_vector_checked(target_basis)
                    .unwrap_or_else(|| panic!("image {f:?} leaves the target space {target:?}"))
            })
            .collect();
        Self::new(source, target, ExactMatrix::from_columns(target_basis.len(), &cols))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        if self.antilinear {
            let c: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
            self.matrix.mul_vec(&c)
        } else {
            self.matrix.mul_vec(v)
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedOperator) -> GradedOperator {
        assert_eq!(self.source, inner.target, "composing mismatched grades");
        let rhs = if self.antilinear { inner.matrix.conj() } else { inner.matrix.clone() };
        GradedOperator {
            source: inner.source,
            target: self.target,
            matrix: self.matrix.mul(&rhs),
            antilinear: self.antilinear ^ inner.antilinear,
        }
    }

    pub fn add(&self, other: &GradedOperator) -> GradedOperator {
        self.check_compatible(other);
        GradedOperator { matrix: self.matrix.add(&other.matrix), ..self.clone() }
    }

    pub fn sub(&self, other: &GradedOperator) -> GradedOperator {
        self.check_compatible(other);
        GradedOperator { matrix: self.matrix.sub(&other.matrix), ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> GradedOperator {
        GradedOperator { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn neg(&self) -> GradedOperator {
        self.scale(&Scalar::from_int(-1))
    }

    fn check_compatible(&self, other: &GradedOperator) {
        assert_eq!(
            (self.source, self.target, self.antilinear),
            (other.source, other.target, other.antilinear),
            "incompatible operators"
        );
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        assert!(!self.antilinear, "kernel of a conjugate-linear map is not a subspace basis over ℂ");
        self.matrix.kernel_basis()
    }
}
