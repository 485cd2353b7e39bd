#![allow(dead_code)]

use hkt_core::exact::{rational_frac, ExactMatrix, Scalar};
use hkt_core::hypercomplex::{endo_from_pairs, HypercomplexTriple};
use hkt_core::lie::{LieAlgebraData, StructureEntry};

pub fn entry(i: usize, j: usize, k: usize, c: i64) -> StructureEntry {
    StructureEntry { i, j, k, c: rational_frac(c, 1) }
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub struct Fixture {
    pub alg: LieAlgebraData,
    pub triple: HypercomplexTriple,
    pub metric: ExactMatrix,
}

fn diag(d: &[i64]) -> ExactMatrix {
    ExactMatrix::diagonal(&d.iter().map(|&x| s(x)).collect::<Vec<_>>())
}

pub fn hopf() -> Fixture {
    let alg =
        LieAlgebraData::from_maurer_cartan(4, &[entry(2, 3, 1, -2), entry(1, 3, 2, 2), entry(1, 2, 3, -2)]).unwrap();
    let i = endo_from_pairs(4, &[(1, 2, s(1)), (3, 4, s(1))]);
    let j = endo_from_pairs(4, &[(1, 3, s(1)), (2, 4, s(-1))]);
    Fixture { alg, triple: HypercomplexTriple::new(i, j).unwrap(), metric: diag(&[2, 2, 2, 2]) }
}

pub fn balanced_hkt() -> Fixture {
    let alg = LieAlgebraData::from_maurer_cartan(
        8,
        &[
            entry(1, 2, 6, 1),
            entry(3, 4, 6, 1),
            entry(1, 3, 7, 1),
            entry(4, 2, 7, 1),
            entry(1, 4, 8, 1),
            entry(2, 3, 8, 1),
        ],
    )
    .unwrap();
    let half = Scalar::frac(1, 2);
    let i = endo_from_pairs(8, &[(1, 2, s(-1)), (3, 4, s(1)), (5, 6, half.clone()), (7, 8, s(1))]);
    let j = endo_from_pairs(8, &[(1, 3, s(-1)), (2, 4, s(-1)), (5, 7, half), (6, 8, s(-1))]);
    Fixture { alg, triple: HypercomplexTriple::new(i, j).unwrap(), metric: diag(&[2, 2, 2, 2, 2, 8, 8, 8]) }
}

fn twelve_triple() -> HypercomplexTriple {
    let i =
        endo_from_pairs(12, &[(1, 2, s(1)), (3, 4, s(1)), (5, 6, s(1)), (7, 8, s(1)), (9, 10, s(1)), (11, 12, s(1))]);
    let j = endo_from_pairs(
        12,
        &[(1, 3, s(1)), (2, 4, s(-1)), (5, 7, s(1)), (6, 8, s(-1)), (9, 11, s(1)), (10, 12, s(-1))],
    );
    HypercomplexTriple::new(i, j).unwrap()
}

pub fn nonhkt() -> Fixture {
    let alg = LieAlgebraData::from_maurer_cartan(
        12,
        &[entry(1, 5, 9, 1), entry(1, 6, 10, 1), entry(1, 7, 11, 1), entry(1, 8, 12, 1)],
    )
    .unwrap();
    Fixture { alg, triple: twelve_triple(), metric: ExactMatrix::identity(12) }
}

pub fn abelian12() -> Fixture {
    let b = |i, j, k, c| entry(i, j, k, c);
    let alg = LieAlgebraData::from_brackets(
        12,
        &[
            b(1, 5, 9, 1),
            b(2, 6, 9, 1),
            b(3, 7, 9, 1),
            b(4, 8, 9, 1),
            b(1, 6, 10, 1),
            b(2, 5, 10, -1),
            b(3, 8, 10, -1),
            b(4, 7, 10, 1),
            b(1, 7, 11, 1),
            b(2, 8, 11, 1),
            b(3, 5, 11, -1),
            b(4, 6, 11, -1),
            b(1, 8, 12, 1),
            b(2, 7, 12, -1),
            b(3, 6, 12, 1),
            b(4, 5, 12, -1),
        ],
    )
    .unwrap();
    Fixture { alg, triple: twelve_triple(), metric: ExactMatrix::identity(12) }
}

/// Barberis–Fino, given on the coframe, with J completed on the last block and
/// the signs of de¹¹, de¹² flipped so that the structure is integrable.
pub fn barberis_fino() -> Fixture {
    let alg = LieAlgebraData::from_maurer_cartan(
        12,
        &[
            entry(5, 6, 2, -1),
            entry(7, 8, 2, 1),
            entry(6, 8, 3, -1),
            entry(5, 7, 3, -1),
            entry(6, 7, 4, 1),
            entry(5, 8, 4, -1),
            entry(1, 10, 9, 1),
            entry(1, 9, 10, -1),
            entry(1, 12, 11, -1),
            entry(1, 11, 12, 1),
        ],
    )
    .unwrap();
    let a_i =
        endo_from_pairs(12, &[(1, 2, s(1)), (3, 4, s(1)), (5, 6, s(1)), (7, 8, s(1)), (9, 10, s(1)), (11, 12, s(1))]);
    let a_j = endo_from_pairs(
        12,
        &[(1, 3, s(1)), (2, 4, s(-1)), (5, 7, s(1)), (6, 8, s(-1)), (9, 11, s(1)), (10, 12, s(-1))],
    );
    Fixture { alg, triple: HypercomplexTriple::from_coframe(&a_i, &a_j).unwrap(), metric: ExactMatrix::identity(12) }
}

pub fn torus4() -> Fixture {
    let i = endo_from_pairs(4, &[(1, 2, s(1)), (3, 4, s(1))]);
    let j = endo_from_pairs(4, &[(1, 3, s(1)), (2, 4, s(-1))]);
    Fixture {
        alg: LieAlgebraData::abelian(4),
        triple: HypercomplexTriple::new(i, j).unwrap(),
        metric: ExactMatrix::identity(4),
    }
}

pub fn all() -> Vec<(&'static str, Fixture)> {
    vec![
        ("balanced_hkt", balanced_hkt()),
        ("nonhkt", nonhkt()),
        ("hopf", hopf()),
        ("abelian12", abelian12()),
        ("barberis_fino", barberis_fino()),
        ("torus4", torus4()),
    ]
}

pub fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

impl Fixture {
    pub fn hermitian(&self) -> hkt_core::hermitian::Hyperhermitian {
        hkt_core::hermitian::Hyperhermitian::from_metric(&self.alg, &self.triple, &self.metric).unwrap()
    }
}
