use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{ExactError, Scalar};

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
            .expect("ragged literal")
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(Scalar::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking shorthands for internal code paths where shapes are fixed by construction.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shape mismatch in add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("shape mismatch in sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch in mul")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    fn same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Kronecker product; row (i,k) ↦ i·other.rows + k.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            m[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns. Pivoting takes the first
    /// column with a nonzero entry and, within it, the smallest row index.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column: the free
    /// coordinate is 1, other free coordinates 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Result<Scalar, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = &f * &m[(c, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.iter().copied().ne(0..n) {
            return Err(ExactError::Singular);
        }
        Ok(r.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Some solution x of Mx = b, or None if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let aug = self.hstack(&Self::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact Sylvester test: all leading principal minors positive.
    pub fn is_positive_definite(&self) -> Result<bool, ExactError> {
        if !self.is_hermitian() {
            return Err(ExactError::NotHermitian);
        }
        // Minors of a Hermitian matrix are real; elimination without row
        // swaps exposes them as running products of pivots.
        let n = self.rows;
        let mut m = self.clone();
        for c in 0..n {
            let piv = m[(c, c)].clone();
            if !piv.is_positive_real() {
                return Ok(false);
            }
            let inv = piv.inv().expect("positive pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = &f * &m[(c, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF of
/// the matrix having them as rows. Equal spans give equal outputs.
pub fn span_basis(dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(vectors.to_vec()).expect("equal-length vectors");
    assert_eq!(m.cols(), dim, "vector length mismatch");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// λ with A = λB, if any. Errors when B = 0.
pub fn solve_proportionality(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<Scalar>, ExactError> {
    a.same_shape(b)?;
    let Some(k) = b.entries.iter().position(|e| !e.is_zero()) else {
        return Err(ExactError::ZeroReference);
    };
    let lambda = &a.entries[k] / &b.entries[k];
    let ok = a.entries.iter().zip(&b.entries).all(|(x, y)| *x == &lambda * y);
    Ok(ok.then_some(lambda))
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(re: i64, im: i64) -> Scalar {
        Scalar::gaussian(re, im)
    }

    #[test]
    fn kernel_examples() {
        let m = ExactMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.kernel_basis(), vec![vec![s(0, 0), s(1, 0)]]);
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
        let m = ExactMatrix::from_rows(vec![vec![s(1, 0), s(0, 1), s(0, 0)], vec![s(0, 0), s(0, 0), s(1, 0)]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![s(0, -1), s(1, 0), s(0, 0)]]);
    }

    #[test]
    fn proportionality() {
        let b = ExactMatrix::from_i64(&[&[1, 2], &[0, 3]]);
        let zero = ExactMatrix::zeros(2, 2);
        assert_eq!(solve_proportionality(&zero, &b).unwrap(), Some(Scalar::zero()));
        let a = b.scale(&Scalar::from_int(2));
        assert_eq!(solve_proportionality(&a, &b).unwrap(), Some(Scalar::from_int(2)));
        let e = ExactMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(solve_proportionality(&b.add(&e), &b).unwrap(), None);
        assert_eq!(solve_proportionality(&b, &zero), Err(ExactError::ZeroReference));
    }

    #[test]
    fn positivity() {
        assert!(ExactMatrix::identity(4).is_positive_definite().unwrap());
        let d = ExactMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(!d.is_positive_definite().unwrap());
        let h = ExactMatrix::from_rows(vec![vec![s(2, 0), s(0, 1)], vec![s(0, -1), s(2, 0)]]).unwrap();
        assert!(h.is_positive_definite().unwrap());
        let nh = ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(nh.is_positive_definite(), Err(ExactError::NotHermitian));
    }

    #[test]
    fn inverse_and_det() {
        let m = ExactMatrix::from_rows(vec![vec![s(1, 1), s(2, 0)], vec![s(0, 0), s(0, 3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
        assert_eq!(m.determinant().unwrap(), s(-3, 3));
        let sing = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(ExactError::Singular));
        assert!(sing.determinant().unwrap().is_zero());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[s(1, 0), s(2, 0)]).is_none());
        let x = m.solve(&[s(3, 0), s(3, 0)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s(3, 0), s(3, 0)]);
    }
}
