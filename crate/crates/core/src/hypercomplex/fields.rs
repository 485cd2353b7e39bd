use serde::{Deserialize, Serialize};

use crate::exact::{span_basis, ExactMatrix, Scalar};
use crate::lie::{lie_derivative_endo, lie_derivative_metric, LieAlgebraData};

use super::connection::ConnectionTable;
use super::triple::HypercomplexTriple;

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Stacks the linear conditions `f(e_a) = 0` (each a matrix) into one system
/// in the unknown coefficients X_a.
fn stack<F: Fn(&[Scalar]) -> Vec<ExactMatrix>>(dim: usize, f: F) -> ExactMatrix {
    let blocks: Vec<Vec<ExactMatrix>> = (0..dim).map(|a| f(&unit(dim, a))).collect();
    let rows: usize = blocks[0].iter().map(|m| m.rows() * m.cols()).sum();
    let mut sys = ExactMatrix::zeros(rows, dim);
    for (a, ms) in blocks.iter().enumerate() {
        let mut r = 0;
        for m in ms {
            for v in m.entries() {
                sys[(r, a)] = v.clone();
                r += 1;
            }
        }
    }
    sys
}

/// Constraint IZ = iZ, appended to restrict a system to T^{1,0}.
fn type_10_rows(h: &HypercomplexTriple) -> ExactMatrix {
    let n = h.dim();
    h.i().sub(&ExactMatrix::identity(n).scale(&Scalar::i()))
}

fn solve(sys: &ExactMatrix) -> Vec<Vec<Scalar>> {
    span_basis(sys.cols(), &sys.kernel_basis())
}

fn hyperholo_system(alg: &LieAlgebraData, h: &HypercomplexTriple) -> ExactMatrix {
    stack(alg.dim(), |x| vec![lie_derivative_endo(alg, x, h.i()), lie_derivative_endo(alg, x, h.j())])
}

/// Real X with L_X I = L_X J = 0. The system has rational coefficients, so
/// the canonical basis is real.
pub fn hyperholomorphic_real(alg: &LieAlgebraData, h: &HypercomplexTriple) -> Vec<Vec<Scalar>> {
    solve(&hyperholo_system(alg, h))
}

/// Z ∈ T^{1,0} with L_Z I = L_Z J = 0.
pub fn hyperholomorphic_10(alg: &LieAlgebraData, h: &HypercomplexTriple) -> Vec<Vec<Scalar>> {
    solve(&hyperholo_system(alg, h).vstack(&type_10_rows(h)))
}

fn parallel_system(c: &ConnectionTable) -> ExactMatrix {
    let n = c.dim();
    stack(n, |x| vec![c.covariant_derivative(x)])
}

/// X with ∇X = 0 for the given connection.
pub fn parallel_fields(c: &ConnectionTable) -> Vec<Vec<Scalar>> {
    solve(&parallel_system(c))
}

pub fn parallel_fields_10(c: &ConnectionTable, h: &HypercomplexTriple) -> Vec<Vec<Scalar>> {
    solve(&parallel_system(c).vstack(&type_10_rows(h)))
}

fn killing_system(alg: &LieAlgebraData, g: &ExactMatrix) -> ExactMatrix {
    stack(alg.dim(), |x| vec![lie_derivative_metric(alg, x, g)])
}

pub fn killing_fields(alg: &LieAlgebraData, g: &ExactMatrix) -> Vec<Vec<Scalar>> {
    solve(&killing_system(alg, g))
}

/// Z ∈ T^{1,0} with L_Z g = 0, i.e. Z = X^{1,0} with X and IX Killing.
pub fn killing_fields_10(alg: &LieAlgebraData, h: &HypercomplexTriple, g: &ExactMatrix) -> Vec<Vec<Scalar>> {
    solve(&killing_system(alg, g).vstack(&type_10_rows(h)))
}

pub fn is_hyperholomorphic(alg: &LieAlgebraData, h: &HypercomplexTriple, x: &[Scalar]) -> bool {
    lie_derivative_endo(alg, x, h.i()).is_zero() && lie_derivative_endo(alg, x, h.j()).is_zero()
}

pub fn is_parallel(c: &ConnectionTable, x: &[Scalar]) -> bool {
    c.covariant_derivative(x).is_zero()
}

/// The five conditions on Z = X^{1,0}, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObataEquivalences {
    pub z_hyperholomorphic: bool,
    pub x_and_ix_hyperholomorphic: bool,
    pub j_zbar_hyperholomorphic: bool,
    pub z_parallel: bool,
    pub x_parallel: bool,
}

impl ObataEquivalences {
    pub fn values(&self) -> [bool; 5] {
        [
            self.z_hyperholomorphic,
            self.x_and_ix_hyperholomorphic,
            self.j_zbar_hyperholomorphic,
            self.z_parallel,
            self.x_parallel,
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// `z` must satisfy IZ = iZ; X is recovered as Z + Z̄ (for Z = X − i·IX this is 2X,
/// which has the same properties as X).
pub fn check_parallel_obata_equivalences(
    alg: &LieAlgebraData,
    h: &HypercomplexTriple,
    obata: &ConnectionTable,
    z: &[Scalar],
) -> ObataEquivalences {
    let zbar: Vec<Scalar> = z.iter().map(Scalar::conj).collect();
    let x: Vec<Scalar> = z.iter().zip(&zbar).map(|(a, b)| a + b).collect();
    let ix = h.i().mul_vec(&x);
    let j_zbar = h.j().mul_vec(&zbar);
    ObataEquivalences {
        z_hyperholomorphic: is_hyperholomorphic(alg, h, z),
        x_and_ix_hyperholomorphic: is_hyperholomorphic(alg, h, &x) && is_hyperholomorphic(alg, h, &ix),
        j_zbar_hyperholomorphic: is_hyperholomorphic(alg, h, &j_zbar),
        z_parallel: is_parallel(obata, z),
        x_parallel: is_parallel(obata, &x),
    }
}

/// True when the two lists span the same subspace.
pub fn same_span(dim: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    span_basis(dim, a) == span_basis(dim, b)
}

/// True when span(a) ⊆ span(b).
pub fn contained_in(dim: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let mut joined = b.to_vec();
    joined.extend(a.iter().cloned());
    span_basis(dim, &joined).len() == span_basis(dim, b).len()
}
