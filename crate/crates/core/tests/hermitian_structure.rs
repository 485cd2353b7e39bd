mod common;

use common::s;
use hkt_core::exact::{ExactMatrix, Scalar};
use hkt_core::hermitian::{HermitianError, Hyperhermitian};
use hkt_core::hypercomplex::Which;
use hkt_core::lie::{InvariantForm, MultiIndex};

fn factorial(k: usize) -> Scalar {
    s((1..=k as i64).product())
}

#[test]
fn qform_round_trip() {
    for (name, fx) in common::all() {
        let h = fx.hermitian();
        let back = Hyperhermitian::from_qform(&fx.alg, &fx.triple, h.omega()).unwrap();
        assert_eq!(back.metric(), &fx.metric, "{name}");
        assert_eq!(back.omega(), h.omega(), "{name}");
    }
}

#[test]
fn negative_qform_is_rejected() {
    let fx = common::torus4();
    let h = fx.hermitian();
    let neg = h.omega().scale(&s(-1));
    assert!(matches!(Hyperhermitian::from_qform(&fx.alg, &fx.triple, &neg), Err(HermitianError::NotQPositive)));
    let rotated = h.omega().scale(&Scalar::i());
    assert!(matches!(Hyperhermitian::from_qform(&fx.alg, &fx.triple, &rotated), Err(HermitianError::NotQReal)));
}

#[test]
fn incompatible_metric_is_rejected() {
    let fx = common::torus4();
    let g = ExactMatrix::diagonal(&[s(1), s(2), s(1), s(2)]);
    assert!(matches!(Hyperhermitian::from_metric(&fx.alg, &fx.triple, &g), Err(HermitianError::NotCompatible(_))));
    let g = ExactMatrix::diagonal(&[s(-1), s(-1), s(-1), s(-1)]);
    assert!(matches!(Hyperhermitian::from_metric(&fx.alg, &fx.triple, &g), Err(HermitianError::NotPositive)));
}

#[test]
fn omega_recovers_the_fundamental_forms() {
    // 2Ω = F_J − iF_K over the real coframe.
    for (name, fx) in common::all() {
        let h = fx.hermitian();
        let lhs = h.omega_real().scale(&s(2));
        let rhs = h.fundamental_form(Which::J).sub(&h.fundamental_form(Which::K).scale(&Scalar::i()));
        assert_eq!(lhs, rhs, "{name}");
    }
}

#[test]
fn volume_is_normalized() {
    for (name, fx) in common::all() {
        let h = fx.hermitian();
        let vol = h.vol();
        assert_eq!(h.norm_sqr(&vol), s(1), "{name}");
        // *1 = vol.
        let one = InvariantForm::constant(h.dim(), s(1));
        assert_eq!(h.apply_op(&h.star(0, 0).unwrap(), &one), vol, "{name}");
    }
}

#[test]
fn star_on_one_forms_matches_the_closed_formula() {
    for (name, fx) in common::all() {
        let h = fx.hermitian();
        let f = h.frame();
        let n = h.n();
        let tail = h
            .omega_power(n - 1)
            .wedge(&f.conj(&h.omega_power(n)))
            .scale(&(factorial(n - 1) * factorial(n)).inv().unwrap());
        let star = h.star(1, 0).unwrap();
        for m in f.basis_pq(1, 0) {
            let a = InvariantForm::monomial(h.dim(), m, Scalar::gaussian(2, -3));
            let expected = f.act(Which::J, &f.conj(&a)).wedge(&tail);
            assert_eq!(h.apply_op(&star, &a), expected, "{name}");
        }
    }
}

#[test]
fn lambda_of_omega_is_n() {
    for (name, fx) in common::all() {
        let h = fx.hermitian();
        let l = h.lambda_form(h.omega()).unwrap();
        assert_eq!(l, InvariantForm::constant(h.dim(), s(h.n() as i64)), "{name}");
    }
}

#[test]
fn lambda_is_the_adjoint_of_lefschetz() {
    let h = common::balanced_hkt().hermitian();
    let f = h.frame();
    let b1 = f.basis_pq(1, 1);
    let b3 = f.basis_pq(3, 1);
    let a = InvariantForm::monomial(h.dim(), b1[1], Scalar::gaussian(1, 1));
    let b = InvariantForm::monomial(h.dim(), b3[2], s(3)).add(&InvariantForm::monomial(h.dim(), b3[0], Scalar::i()));
    let lhs = h.inner(&h.omega().wedge(&a), &b);
    let rhs = h.inner(&a, &h.lambda_form(&b).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn gram_is_hermitian_positive() {
    let h = common::hopf().hermitian();
    for p in 0..=h.half() {
        for q in 0..=h.half() {
            let g = h.gram(p, q);
            assert_eq!(g.adjoint(), g);
            assert!(g.rows() == 0 || g.is_positive_definite().unwrap());
        }
    }
}

#[test]
fn chern_scalar_formulas_agree() {
    for (name, fx) in common::all() {
        let c = fx.hermitian().classify().unwrap();
        assert_eq!(c.chern_scalar, c.chern_scalar_trace, "{name}");
        assert!(c.consistent(fx.triple.n()), "{name}");
    }
}

#[test]
fn sl_certificate_for_the_flat_torus() {
    let fx = common::torus4();
    let h = fx.hermitian();
    let c = h.classify().unwrap();
    assert!(c.hkt && c.balanced && c.sl.certified && c.hkt_einstein);
    let top = MultiIndex::from_mask(0b11);
    assert_eq!(h.phi0().coeff(top), s(1));
}

#[test]
fn non_unimodular_algebras_have_no_l2_adjoint() {
    use hkt_core::hypercomplex::{endo_from_pairs, HypercomplexTriple};
    use hkt_core::lie::LieAlgebraData;
    // [e4, e_k] = e_k for k = 1..3: the real hyperbolic space as a solvable group.
    let alg = LieAlgebraData::from_brackets(
        4,
        &[common::entry(4, 1, 1, 1), common::entry(4, 2, 2, 1), common::entry(4, 3, 3, 1)],
    )
    .unwrap();
    assert!(!alg.is_unimodular());
    let i = endo_from_pairs(4, &[(1, 2, s(1)), (3, 4, s(1))]);
    let j = endo_from_pairs(4, &[(1, 3, s(1)), (2, 4, s(-1))]);
    let t = HypercomplexTriple::new(i, j).unwrap();
    t.check_integrable(&alg).unwrap();
    let h = Hyperhermitian::from_metric(&alg, &t, &ExactMatrix::identity(4)).unwrap();
    assert!(matches!(h.dolbeault_star(hkt_core::hermitian::Dolbeault::Del, 1, 0), Err(HermitianError::NotUnimodular)));
}
