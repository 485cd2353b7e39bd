use crate::exact::{ExactMatrix, Scalar};
use crate::operator::{Grade, GradedOperator};

use super::algebra::LieAlgebraData;
use super::forms::{basis, InvariantForm, MultiIndex};

/// de^k = −Σ_{i<j} c^k_{ij} e^i∧e^j on the real coframe.
pub fn differential_images(alg: &LieAlgebraData) -> Vec<InvariantForm> {
    let n = alg.dim();
    let mut images = vec![InvariantForm::zero(n, 2); n];
    for (&(i, j), v) in alg.nonzero_brackets() {
        let m = MultiIndex::single(i).wedge(MultiIndex::single(j)).expect("i < j").1;
        for (k, c) in v.iter().enumerate() {
            images[k].add_term(m, -c);
        }
    }
    images
}

/// Chevalley–Eilenberg differential on a form in the real coframe.
pub fn ce_d(alg: &LieAlgebraData, form: &InvariantForm) -> InvariantForm {
    form.apply_derivation(&differential_images(alg), 1)
}

/// Matrix of d: Λ^k → Λ^{k+1} in lexicographic bases.
pub fn ce_differential(alg: &LieAlgebraData, k: usize) -> GradedOperator {
    let n = alg.dim();
    let images = differential_images(alg);
    let src = basis(n, k);
    let tgt = basis(n, k + 1);
    let cols: Vec<InvariantForm> =
        src.iter().map(|m| InvariantForm::monomial(n, *m, Scalar::one()).apply_derivation(&images, 1)).collect();
    GradedOperator::from_images(Grade::Degree(k), Grade::Degree(k + 1), &tgt, &cols)
}

/// L_X e^m = −Σ_j (ad_X)_{mj} e^j, i.e. (L_X α)(Y) = −α([X, Y]).
pub fn lie_derivative_images(alg: &LieAlgebraData, x: &[Scalar]) -> Vec<InvariantForm> {
    let n = alg.dim();
    let ad = alg.ad(x);
    (0..n)
        .map(|m| {
            let row: Vec<Scalar> = ad.row(m).iter().map(|c| -c).collect();
            InvariantForm::from_covector(&row)
        })
        .collect()
}

pub fn lie_derivative_form(alg: &LieAlgebraData, x: &[Scalar], form: &InvariantForm) -> InvariantForm {
    form.apply_derivation(&lie_derivative_images(alg, x), 0)
}

/// (L_X L)(Y) = [X, LY] − L[X, Y], i.e. ad_X·L − L·ad_X.
pub fn lie_derivative_endo(alg: &LieAlgebraData, x: &[Scalar], l: &ExactMatrix) -> ExactMatrix {
    let ad = alg.ad(x);
    ad.mul(l).sub(&l.mul(&ad))
}

/// (L_X g)(Y, W) = −g([X,Y], W) − g(Y, [X,W]).
pub fn lie_derivative_metric(alg: &LieAlgebraData, x: &[Scalar], g: &ExactMatrix) -> ExactMatrix {
    let ad = alg.ad(x);
    ad.transpose().mul(g).add(&g.mul(&ad)).scale(&Scalar::from_int(-1))
}

/// Matrix of ι_X: Λ^k → Λ^{k−1}.
pub fn interior_operator(dim: usize, x: &[Scalar], k: usize) -> GradedOperator {
    assert!(k >= 1, "interior product needs degree ≥ 1");
    let cols: Vec<InvariantForm> =
        basis(dim, k).iter().map(|m| InvariantForm::monomial(dim, *m, Scalar::one()).interior(x)).collect();
    GradedOperator::from_images(Grade::Degree(k), Grade::Degree(k - 1), &basis(dim, k - 1), &cols)
}

pub fn lie_derivative_operator(alg: &LieAlgebraData, x: &[Scalar], k: usize) -> GradedOperator {
    let n = alg.dim();
    let images = lie_derivative_images(alg, x);
    let cols: Vec<InvariantForm> = basis(n, k)
        .iter()
        .map(|m| InvariantForm::monomial(n, *m, Scalar::one()).apply_derivation(&images, 0))
        .collect();
    GradedOperator::from_images(Grade::Degree(k), Grade::Degree(k), &basis(n, k), &cols)
}

/// Basis forms of Λ^k whose Cartan residual L_X α − ι_X dα − d ι_X α is nonzero.
pub fn cartan_violations(alg: &LieAlgebraData, x: &[Scalar], k: usize) -> Vec<MultiIndex> {
    let n = alg.dim();
    let d_images = differential_images(alg);
    let l_images = lie_derivative_images(alg, x);
    basis(n, k)
        .into_iter()
        .filter(|m| {
            let a = InvariantForm::monomial(n, *m, Scalar::one());
            let lhs = a.apply_derivation(&l_images, 0);
            let i_d = a.apply_derivation(&d_images, 1).interior(x);
            let d_i = if k == 0 { InvariantForm::zero(n, 0) } else { a.interior(x).apply_derivation(&d_images, 1) };
            !lhs.sub(&i_d).sub(&d_i).is_zero()
        })
        .collect()
}

/// Basis forms of Λ^k with d(dα) ≠ 0.
pub fn d_squared_violations(alg: &LieAlgebraData, k: usize) -> Vec<MultiIndex> {
    let n = alg.dim();
    let images = differential_images(alg);
    basis(n, k)
        .into_iter()
        .filter(|m| {
            let a = InvariantForm::monomial(n, *m, Scalar::one());
            !a.apply_derivation(&images, 1).apply_derivation(&images, 1).is_zero()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_i64;
    use crate::lie::StructureEntry;

    fn hopf() -> LieAlgebraData {
        let e = |i, j, k, c| StructureEntry { i, j, k, c: rational_from_i64(c) };
        LieAlgebraData::from_maurer_cartan(4, &[e(2, 3, 1, -2), e(1, 3, 2, 2), e(1, 2, 3, -2)]).unwrap()
    }

    #[test]
    fn maurer_cartan_round_trip() {
        let d = differential_images(&hopf());
        assert_eq!(d[0], InvariantForm::basis_form(4, &[1, 2]).scale(&Scalar::from_int(-2)));
        assert!(d[3].is_zero());
    }

    #[test]
    fn d_squared_and_cartan() {
        let alg = hopf();
        for k in 0..=4 {
            assert!(d_squared_violations(&alg, k).is_empty());
            for i in 0..4 {
                let mut x = vec![Scalar::zero(); 4];
                x[i] = Scalar::one();
                assert!(cartan_violations(&alg, &x, k).is_empty(), "k={k} i={i}");
            }
        }
        let d1 = ce_differential(&alg, 1);
        let d2 = ce_differential(&alg, 2);
        assert!(d2.compose(&d1).is_zero());
    }

    #[test]
    fn abelian_is_trivial() {
        let alg = LieAlgebraData::abelian(4);
        assert!(ce_differential(&alg, 2).is_zero());
        let x = vec![Scalar::one(); 4];
        assert!(lie_derivative_operator(&alg, &x, 2).is_zero());
        assert!(lie_derivative_metric(&alg, &x, &ExactMatrix::identity(4)).is_zero());
    }
}
