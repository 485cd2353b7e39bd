use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{span_basis, ExactMatrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket entry [{i}, {j}] out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("bracket entry with repeated index {0}")]
    RepeatedIndex(usize),
    #[error("Jacobi identity fails on triple ({}, {}, {}): residual {residual:?}", .triple.0, .triple.1, .triple.2)]
    Jacobi { triple: (usize, usize, usize), residual: Vec<Scalar> },
}

/// One structure-constant entry with 1-based indices, as written in scene files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

/// Real Lie algebra with exact structure constants; only i<j is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieValidation {
    pub unimodular: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

impl LieAlgebraData {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, brackets: BTreeMap::new() }
    }

    /// Entries read as [e_i, e_j] += c e_k.
    pub fn from_brackets(dim: usize, entries: &[StructureEntry]) -> Result<Self, LieError> {
        let mut alg = Self::abelian(dim);
        for e in entries {
            alg.accumulate(e, Scalar::real(e.c.clone()))?;
        }
        Ok(alg)
    }

    /// Entries read as "de^k contains c e^i∧e^j"; with dα(X,Y) = −α([X,Y]) this
    /// is [e_i, e_j] −= c e_k.
    pub fn from_maurer_cartan(dim: usize, entries: &[StructureEntry]) -> Result<Self, LieError> {
        let mut alg = Self::abelian(dim);
        for e in entries {
            alg.accumulate(e, Scalar::real(-e.c.clone()))?;
        }
        Ok(alg)
    }

    fn accumulate(&mut self, e: &StructureEntry, c: Scalar) -> Result<(), LieError> {
        let dim = self.dim;
        if e.i == 0 || e.j == 0 || e.k == 0 || e.i > dim || e.j > dim || e.k > dim {
            return Err(LieError::IndexOutOfRange { i: e.i, j: e.j, dim });
        }
        if e.i == e.j {
            return Err(LieError::RepeatedIndex(e.i));
        }
        let (a, b, c) = if e.i < e.j { (e.i - 1, e.j - 1, c) } else { (e.j - 1, e.i - 1, -c) };
        let v = self.brackets.entry((a, b)).or_insert_with(|| vec![Scalar::zero(); dim]);
        v[e.k - 1] += c;
        if v.iter().all(Scalar::is_zero) {
            self.brackets.remove(&(a, b));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// [e_i, e_j] for 0-based indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec![Scalar::zero(); self.dim],
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| vec![Scalar::zero(); self.dim]),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| vec![Scalar::zero(); self.dim]),
        }
    }

    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.brackets.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if c.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(v) {
                if !w.is_zero() {
                    *o += &c * w;
                }
            }
        }
        out
    }

    /// Matrix of ad_X in the column convention: column j is [X, e_j].
    pub fn ad(&self, x: &[Scalar]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| {
                let mut ej = vec![Scalar::zero(); self.dim];
                ej[j] = Scalar::one();
                self.bracket(x, &ej)
            })
            .collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> ExactMatrix {
        let mut x = vec![Scalar::zero(); self.dim];
        x[i] = Scalar::one();
        self.ad(&x)
    }

    /// Cyclic Jacobi sum on basis vectors (0-based).
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let e = |a: usize| {
            let mut v = vec![Scalar::zero(); self.dim];
            v[a] = Scalar::one();
            v
        };
        let (x, y, z) = (e(i), e(j), e(k));
        let a = self.bracket(&self.bracket(&x, &y), &z);
        let b = self.bracket(&self.bracket(&y, &z), &x);
        let c = self.bracket(&self.bracket(&z, &x), &y);
        a.iter().zip(&b).zip(&c).map(|((a, b), c)| a + b + c.clone()).collect()
    }

    pub fn validate(&self) -> Result<LieValidation, LieError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let r = self.jacobi_residual(i, j, k);
                    if r.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::Jacobi { triple: (i + 1, j + 1, k + 1), residual: r });
                    }
                }
            }
        }
        let unimodular = self.is_unimodular();
        let full: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); self.dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
        let derived = self.series(&full, true);
        let lower = self.series(&full, false);
        Ok(LieValidation {
            unimodular,
            solvable: derived.last() == Some(&0),
            nilpotent: lower.last() == Some(&0),
            derived_dims: derived,
            lower_central_dims: lower,
        })
    }

    /// Dimensions of the derived series (`derived`) or the lower central
    /// series, until it stabilizes.
    fn series(&self, full: &[Vec<Scalar>], derived: bool) -> Vec<usize> {
        let mut current = full.to_vec();
        let mut dims = vec![current.len()];
        loop {
            let left = if derived { current.clone() } else { full.to_vec() };
            let mut gens = Vec::new();
            for a in &left {
                for b in &current {
                    let v = self.bracket(a, b);
                    if v.iter().any(|x| !x.is_zero()) {
                        gens.push(v);
                    }
                }
            }
            let next = span_basis(self.dim, &gens);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            current = next;
            if current.is_empty() {
                return dims;
            }
        }
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| {
            let ad = self.ad_basis(i);
            (0..self.dim).map(|k| ad[(k, k)].clone()).sum::<Scalar>().is_zero()
        })
    }

    /// Basis of the center {X : [X, Y] = 0 ∀Y}. The structure constants are
    /// real, so the same vectors span the complexified center over ℂ.
    pub fn center(&self) -> Vec<Vec<Scalar>> {
        // Row (j, k): Σ_i X_i c^k_{ij}.
        let mut m = ExactMatrix::zeros(self.dim * self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.basis_bracket(i, j);
                for (k, c) in v.into_iter().enumerate() {
                    m[(j * self.dim + k, i)] = c;
                }
            }
        }
        span_basis(self.dim, &m.kernel_basis())
    }
}
