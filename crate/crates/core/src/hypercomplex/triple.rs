use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactMatrix, Scalar};
use crate::lie::LieAlgebraData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercomplexError {
    #[error("endomorphism {name} has shape {rows}x{cols}, expected {dim}x{dim}")]
    Shape { name: &'static str, rows: usize, cols: usize, dim: usize },
    #[error("quaternion relation {relation} fails")]
    Quaternion { relation: &'static str },
    #[error("{which} is not integrable: N({i}, {j}) = {residual:?}")]
    Nijenhuis { which: Which, i: usize, j: usize, residual: Vec<Scalar> },
    #[error("endomorphism is singular")]
    Singular,
    #[error("the real dimension {0} is not a positive multiple of 4")]
    Dimension(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Which {
    I,
    J,
    K,
}

impl Which {
    pub const ALL: [Which; 3] = [Which::I, Which::J, Which::K];
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Which::I => "I",
            Which::J => "J",
            Which::K => "K",
        };
        f.write_str(s)
    }
}

/// (I, J, K = IJ) acting on vectors in the column convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercomplexTriple {
    i: ExactMatrix,
    j: ExactMatrix,
    k: ExactMatrix,
}

/// One failed Nijenhuis entry, 1-based basis pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NijenhuisFailure {
    pub which: Which,
    pub pair: (usize, usize),
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercomplexValidation {
    pub quaternion_failures: Vec<String>,
    pub nijenhuis_failures: Vec<NijenhuisFailure>,
    pub abelian: bool,
}

impl HypercomplexValidation {
    pub fn quaternion_ok(&self) -> bool {
        self.quaternion_failures.is_empty()
    }

    pub fn integrable(&self) -> bool {
        self.nijenhuis_failures.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.quaternion_ok() && self.integrable()
    }
}

impl HypercomplexTriple {
    /// Builds the triple from vector actions of I and J; K is IJ. No
    /// relation is checked here.
    pub fn new(i: ExactMatrix, j: ExactMatrix) -> Result<Self, HypercomplexError> {
        let dim = i.rows();
        for (name, m) in [("I", &i), ("J", &j)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(HypercomplexError::Shape { name, rows: m.rows(), cols: m.cols(), dim });
            }
        }
        if dim == 0 || !dim.is_multiple_of(4) {
            return Err(HypercomplexError::Dimension(dim));
        }
        let k = i.mul(&j);
        Ok(HypercomplexTriple { i, j, k })
    }

    /// Builds the triple from actions on the coframe. A coframe action A
    /// corresponds to the vector action −Aᵀ under (Lα)(X) = −α(LX).
    pub fn from_coframe(a_i: &ExactMatrix, a_j: &ExactMatrix) -> Result<Self, HypercomplexError> {
        let minus = Scalar::from_int(-1);
        Self::new(a_i.transpose().scale(&minus), a_j.transpose().scale(&minus))
    }

    pub fn dim(&self) -> usize {
        self.i.rows()
    }

    /// Quaternionic dimension n (real dimension 4n).
    pub fn n(&self) -> usize {
        self.dim() / 4
    }

    pub fn i(&self) -> &ExactMatrix {
        &self.i
    }

    pub fn j(&self) -> &ExactMatrix {
        &self.j
    }

    pub fn k(&self) -> &ExactMatrix {
        &self.k
    }

    pub fn get(&self, which: Which) -> &ExactMatrix {
        match which {
            Which::I => &self.i,
            Which::J => &self.j,
            Which::K => &self.k,
        }
    }

    pub fn quaternion_failures(&self) -> Vec<&'static str> {
        let minus_id = ExactMatrix::identity(self.dim()).scale(&Scalar::from_int(-1));
        let mut out = Vec::new();
        for (name, m) in [("I^2 = -Id", &self.i), ("J^2 = -Id", &self.j), ("K^2 = -Id", &self.k)] {
            if m.mul(m) != minus_id {
                out.push(name);
            }
        }
        if self.i.mul(&self.j) != self.j.mul(&self.i).scale(&Scalar::from_int(-1)) {
            out.push("IJ = -JI");
        }
        out
    }

    pub fn check_quaternion(&self) -> Result<(), HypercomplexError> {
        match self.quaternion_failures().first() {
            None => Ok(()),
            Some(&relation) => Err(HypercomplexError::Quaternion { relation }),
        }
    }

    /// Raw N_L(X,Y) = [LX,LY] − L[LX,Y] − L[X,LY] − [X,Y].
    pub fn nijenhuis(&self, alg: &LieAlgebraData, which: Which, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let l = self.get(which);
        let lx = l.mul_vec(x);
        let ly = l.mul_vec(y);
        let a = alg.bracket(&lx, &ly);
        let b = l.mul_vec(&alg.bracket(&lx, y));
        let c = l.mul_vec(&alg.bracket(x, &ly));
        let d = alg.bracket(x, y);
        (0..self.dim()).map(|t| &(&(&a[t] - &b[t]) - &c[t]) - &d[t]).collect()
    }

    pub fn validate(&self, alg: &LieAlgebraData) -> HypercomplexValidation {
        let n = self.dim();
        let e = |a: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[a] = Scalar::one();
            v
        };
        let mut nij = Vec::new();
        let mut abelian = true;
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (e(a), e(b));
                for which in Which::ALL {
                    let r = self.nijenhuis(alg, which, &x, &y);
                    if r.iter().any(|s| !s.is_zero()) {
                        nij.push(NijenhuisFailure { which, pair: (a + 1, b + 1), residual: r });
                    }
                }
                let xy = alg.bracket(&x, &y);
                for l in [&self.i, &self.j] {
                    if alg.bracket(&l.mul_vec(&x), &l.mul_vec(&y)) != xy {
                        abelian = false;
                    }
                }
            }
        }
        HypercomplexValidation {
            quaternion_failures: self.quaternion_failures().into_iter().map(String::from).collect(),
            nijenhuis_failures: nij,
            abelian,
        }
    }

    pub fn check_integrable(&self, alg: &LieAlgebraData) -> Result<(), HypercomplexError> {
        self.check_quaternion()?;
        if let Some(f) = self.validate(alg).nijenhuis_failures.into_iter().next() {
            return Err(HypercomplexError::Nijenhuis {
                which: f.which,
                i: f.pair.0,
                j: f.pair.1,
                residual: f.residual,
            });
        }
        Ok(())
    }
}

/// Vector-action matrix from sparse "L e_a = c e_b" entries (1-based),
/// completed by L e_b = −(1/c) e_a so that L² = −Id on each pair.
pub fn endo_from_pairs(dim: usize, pairs: &[(usize, usize, Scalar)]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(dim, dim);
    for (a, b, c) in pairs {
        let (a, b) = (a - 1, b - 1);
        m[(b, a)] = c.clone();
        m[(a, b)] = -c.inv().expect("nonzero pair coefficient");
    }
    m
}
