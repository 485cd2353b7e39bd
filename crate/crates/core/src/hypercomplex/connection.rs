use thiserror::Error;

use crate::exact::{ExactMatrix, Scalar};
use crate::lie::{ce_d, InvariantForm, LieAlgebraData, MultiIndex};

use super::triple::{HypercomplexError, HypercomplexTriple, Which};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("metric is not symmetric positive definite")]
    NotPositive,
    #[error("metric is not compatible with {0}")]
    NotHermitian(Which),
    #[error(transparent)]
    Hypercomplex(#[from] HypercomplexError),
    #[error("neither torsion sign makes the Bismut connection preserve {0}")]
    BismutSign(Which),
}

/// ∇_{e_i} e_j for all basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

impl ConnectionTable {
    pub fn from_fn<F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>>(dim: usize, f: F) -> Self {
        let table = (0..dim).map(|i| (0..dim).map(|j| f(&unit(dim, i), &unit(dim, j))).collect()).collect();
        ConnectionTable { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().flatten().all(Scalar::is_zero)
    }

    pub fn nabla(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// The endomorphism Y ↦ ∇_X Y.
    pub fn along(&self, x: &[Scalar]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.nabla(x, &unit(self.dim, j))).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// The endomorphism Y ↦ ∇_Y X.
    pub fn covariant_derivative(&self, x: &[Scalar]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.nabla(&unit(self.dim, j), x)).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// Basis pairs (1-based) with ∇_X Y − ∇_Y X − [X,Y] ≠ 0.
    pub fn torsion_failures(&self, alg: &LieAlgebraData) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let br = alg.basis_bracket(i, j);
                let ok = (0..self.dim).all(|k| (&self.table[i][j][k] - &self.table[j][i][k]) == br[k]);
                if !ok {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// ∇_X(LY) = L∇_X Y on all basis vectors.
    pub fn preserves(&self, l: &ExactMatrix) -> bool {
        (0..self.dim).all(|i| {
            let g = self.along(&unit(self.dim, i));
            g.mul(l) == l.mul(&g)
        })
    }

    /// g(∇_X Y, Z) + g(Y, ∇_X Z) = 0 on all basis vectors.
    pub fn preserves_metric(&self, g: &ExactMatrix) -> bool {
        (0..self.dim).all(|i| {
            let a = self.along(&unit(self.dim, i));
            a.transpose().mul(g).add(&g.mul(&a)).is_zero()
        })
    }

    /// ∇_X on coframe generators: ∇_X e^m = −Σ_j e^m(∇_X e_j) e^j.
    pub fn form_images(&self, x: &[Scalar]) -> Vec<InvariantForm> {
        let a = self.along(x);
        (0..self.dim).map(|m| InvariantForm::from_covector(&a.row(m).iter().map(|c| -c).collect::<Vec<_>>())).collect()
    }
}

/// ∇_X Y = ½([X,Y] + I[IX,Y] − J[X,JY] + K[IX,JY]). Refuses non-integrable triples.
pub fn obata_connection(alg: &LieAlgebraData, h: &HypercomplexTriple) -> Result<ConnectionTable, HypercomplexError> {
    h.check_integrable(alg)?;
    let half = Scalar::frac(1, 2);
    Ok(ConnectionTable::from_fn(alg.dim(), |x, y| {
        let ix = h.i().mul_vec(x);
        let jy = h.j().mul_vec(y);
        let a = alg.bracket(x, y);
        let b = h.i().mul_vec(&alg.bracket(&ix, y));
        let c = h.j().mul_vec(&alg.bracket(x, &jy));
        let d = h.k().mul_vec(&alg.bracket(&ix, &jy));
        (0..alg.dim()).map(|t| &half * &(&(&(&a[t] + &b[t]) - &c[t]) + &d[t])).collect()
    }))
}

fn check_metric(g: &ExactMatrix) -> Result<ExactMatrix, ConnectionError> {
    if !g.is_real() || g.transpose() != *g || !g.is_positive_definite().map_err(|_| ConnectionError::NotPositive)? {
        return Err(ConnectionError::NotPositive);
    }
    g.inverse().map_err(|_| ConnectionError::NotPositive)
}

/// Koszul on invariant fields: 2g(∇_XY,Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y).
pub fn levi_civita(alg: &LieAlgebraData, g: &ExactMatrix) -> Result<ConnectionTable, ConnectionError> {
    let ginv = check_metric(g)?;
    let n = alg.dim();
    let half = Scalar::frac(1, 2);
    let gdot = |u: &[Scalar], v: &[Scalar]| -> Scalar {
        let gv = g.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    };
    Ok(ConnectionTable::from_fn(n, |x, y| {
        let xy = alg.bracket(x, y);
        let w: Vec<Scalar> = (0..n)
            .map(|k| {
                let z = unit(n, k);
                let t = &(&gdot(&xy, &z) - &gdot(&alg.bracket(y, &z), x)) + &gdot(&alg.bracket(&z, x), y);
                &half * &t
            })
            .collect();
        ginv.mul_vec(&w)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BismutConnection {
    pub table: ConnectionTable,
    /// Totally skew torsion T(X,Y,Z) = g(D_XY − D_YX − [X,Y], Z) as a real 3-form.
    pub torsion: InvariantForm,
}

/// D^b = ∇^{LC} + ½g⁻¹T with T = ±dF(L·,L·,L·), F = g(L·,·); the sign is
/// the one for which D^b L = 0.
pub fn bismut_connection(
    alg: &LieAlgebraData,
    h: &HypercomplexTriple,
    g: &ExactMatrix,
    which: Which,
) -> Result<BismutConnection, ConnectionError> {
    let l = h.get(which);
    if l.transpose().mul(g).mul(l) != *g {
        return Err(ConnectionError::NotHermitian(which));
    }
    let ginv = check_metric(g)?;
    let lc = levi_civita(alg, g)?;
    let n = alg.dim();
    let fmat = l.transpose().mul(g);
    let mut f = InvariantForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let m = MultiIndex::single(i).wedge(MultiIndex::single(j)).expect("distinct").1;
            f.add_term(m, fmat[(i, j)].clone());
        }
    }
    let rows: Vec<InvariantForm> = (0..n).map(|m| InvariantForm::from_covector(&l.row(m))).collect();
    let twisted = ce_d(alg, &f).pullback(&rows);
    let half = Scalar::frac(1, 2);
    for sign in [1i64, -1] {
        let t = twisted.scale(&Scalar::from_int(sign));
        let table = ConnectionTable::from_fn(n, |x, y| {
            let w: Vec<Scalar> = (0..n).map(|k| t.evaluate(&[x.to_vec(), y.to_vec(), unit(n, k)])).collect();
            let corr = ginv.mul_vec(&w);
            lc.nabla(x, y).iter().zip(&corr).map(|(a, b)| a + &(&half * b)).collect()
        });
        if table.preserves(l) {
            return Ok(BismutConnection { table, torsion: t });
        }
    }
    Err(ConnectionError::BismutSign(which))
}

/// True when g(Tor(X,Y),Z) is alternating in all three slots.
pub fn torsion_totally_skew(alg: &LieAlgebraData, c: &ConnectionTable, g: &ExactMatrix) -> bool {
    let n = alg.dim();
    let tor = |i: usize, j: usize| -> Vec<Scalar> {
        let br = alg.basis_bracket(i, j);
        (0..n).map(|k| &(&c.entry(i, j)[k] - &c.entry(j, i)[k]) - &br[k]).collect()
    };
    let gz = |v: &[Scalar], k: usize| -> Scalar { (0..n).map(|a| &v[a] * &g[(a, k)]).sum() };
    for i in 0..n {
        for j in 0..n {
            let t = tor(i, j);
            for k in 0..n {
                let tk = tor(i, k);
                if gz(&t, k) != -gz(&tk, j) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_i64;
    use crate::hypercomplex::triple::endo_from_pairs;
    use crate::lie::StructureEntry;

    fn hopf() -> (LieAlgebraData, HypercomplexTriple) {
        let e = |i, j, k, c| StructureEntry { i, j, k, c: rational_from_i64(c) };
        let alg = LieAlgebraData::from_maurer_cartan(4, &[e(2, 3, 1, -2), e(1, 3, 2, 2), e(1, 2, 3, -2)]).unwrap();
        let one = Scalar::one();
        let i = endo_from_pairs(4, &[(1, 2, one.clone()), (3, 4, one.clone())]);
        let j = endo_from_pairs(4, &[(1, 3, one.clone()), (2, 4, -one)]);
        (alg, HypercomplexTriple::new(i, j).unwrap())
    }

    #[test]
    fn obata_properties() {
        let (alg, h) = hopf();
        let nab = obata_connection(&alg, &h).unwrap();
        assert!(nab.torsion_failures(&alg).is_empty());
        for w in Which::ALL {
            assert!(nab.preserves(h.get(w)));
        }
    }

    #[test]
    fn levi_civita_and_bismut_on_hopf() {
        let (alg, h) = hopf();
        let g = ExactMatrix::identity(4).scale(&Scalar::from_int(2));
        let lc = levi_civita(&alg, &g).unwrap();
        assert!(lc.torsion_failures(&alg).is_empty());
        assert!(lc.preserves_metric(&g));
        // Bi-invariant su(2) part: ∇_{e1} e2 = ½[e1, e2] = e3.
        assert_eq!(lc.entry(0, 1), &[0, 0, 1, 0].map(Scalar::from_int));
        for w in Which::ALL {
            let b = bismut_connection(&alg, &h, &g, w).unwrap();
            assert!(b.table.preserves_metric(&g));
            assert!(!b.torsion.is_zero());
            assert!(torsion_totally_skew(&alg, &b.table, &g));
        }
    }

    #[test]
    fn abelian_connections_vanish() {
        let (_, h) = hopf();
        let alg = LieAlgebraData::abelian(4);
        assert!(obata_connection(&alg, &h).unwrap().is_zero());
        assert!(levi_civita(&alg, &ExactMatrix::identity(4)).unwrap().is_zero());
        let b = bismut_connection(&alg, &h, &ExactMatrix::identity(4), Which::I).unwrap();
        assert!(b.table.is_zero());
    }
}
