mod common;

use common::{s, unit};
use hkt_core::exact::{ExactMatrix, Scalar};
use hkt_core::hermitian::{Dolbeault, LaplacianKind};
use hkt_core::hypercomplex::{
    check_parallel_obata_equivalences, contained_in, hyperholomorphic_10, hyperholomorphic_real, killing_fields,
    obata_connection, same_span, Which,
};
use hkt_core::lie::{lie_derivative_metric, InvariantForm, MultiIndex};

fn units(dim: usize, idx: &[usize]) -> Vec<Vec<Scalar>> {
    idx.iter().map(|&i| unit(dim, i - 1)).collect()
}

/// e^a + c·e^b as a complex 1-form.
fn one_form(dim: usize, a: usize, b: usize, c: Scalar) -> InvariantForm {
    let mut f = InvariantForm::zero(dim, 1);
    f.add_term(MultiIndex::single(a - 1), Scalar::one());
    f.add_term(MultiIndex::single(b - 1), c);
    f
}

/// Z = e_a + c·e_b as a complex vector.
fn vector(dim: usize, a: usize, b: usize, c: Scalar) -> Vec<Scalar> {
    let mut v = unit(dim, a - 1);
    v[b - 1] = c;
    v
}

#[test]
fn balanced_hkt_nil8() {
    let fx = common::balanced_hkt();
    let h = fx.hermitian();
    let f = h.frame();
    let c = h.classify().unwrap();
    assert!(c.hkt && c.balanced);
    assert_eq!(c.lambda, Some(Scalar::zero()));

    let i = Scalar::i();
    let phis = [
        one_form(8, 1, 2, i.clone()),
        one_form(8, 3, 4, -i.clone()),
        one_form(8, 5, 6, s(-2) * i.clone()),
        one_form(8, 7, 8, -i.clone()),
    ];
    // Ω = −φ¹∧φ² + 2φ³∧φ⁴ over the real coframe.
    let omega = phis[0].wedge(&phis[1]).scale(&s(-1)).add(&phis[2].wedge(&phis[3]).scale(&s(2)));
    assert_eq!(f.to_real(h.omega()), omega);

    for phi in &phis {
        let fr = f.to_frame(phi);
        assert_eq!(f.pure_bidegree(&fr), Some((1, 0)));
        assert!(f.del(&fr).is_zero());
        assert!(h.del_j_form(&fr).is_zero());
    }
    let harm = h.harmonic_space(LaplacianKind::Del, 1, 0).unwrap();
    assert_eq!(harm.len(), 4);
    let phi3 = f.to_frame(&phis[2]);
    assert!(h.is_harmonic(LaplacianKind::Del, &phi3).unwrap());
    assert!(!f.d(&phi3).is_zero());

    let real = hyperholomorphic_real(&fx.alg, &fx.triple);
    assert!(same_span(8, &real, &units(8, &[5, 6, 7, 8])));
    // φ¹, φ² are harmonic although e1..e4 are not hyperholomorphic.
    for k in 1..=4 {
        assert!(!contained_in(8, &units(8, &[k]), &real));
    }
}

#[test]
fn balanced_nonhkt_nil12() {
    let fx = common::nonhkt();
    let h = fx.hermitian();
    let f = h.frame();
    let c = h.classify().unwrap();
    assert!(!c.hkt && c.balanced);
    assert!(!f.del(h.omega()).is_zero());

    let mi = -Scalar::i();
    let phi = |k: usize| f.to_frame(&one_form(12, 2 * k - 1, 2 * k, mi.clone()));
    let harm = h.harmonic_space(LaplacianKind::Del, 1, 0).unwrap();
    let as_vec = |a: &InvariantForm| f.vector_pq(a, 1, 0);
    let harm_v: Vec<_> = harm.iter().map(as_vec).collect();
    let expected: Vec<_> = (1..=4).map(|k| as_vec(&phi(k))).collect();
    assert!(same_span(6, &harm_v, &expected));
    for k in [5, 6] {
        assert!(!h.is_harmonic(LaplacianKind::Del, &phi(k)).unwrap());
    }

    let real = hyperholomorphic_real(&fx.alg, &fx.triple);
    assert!(same_span(12, &real, &units(12, &[1, 2, 3, 4, 9, 10, 11, 12])));
    let lg = lie_derivative_metric(&fx.alg, &unit(12, 0), &fx.metric);
    assert!(!lg[(4, 8)].is_zero());
}

#[test]
fn hopf_surface() {
    let fx = common::hopf();
    let h = fx.hermitian();
    let f = h.frame();
    let c = h.classify().unwrap();
    assert!(c.hkt && !c.balanced);
    let mut theta = InvariantForm::zero(4, 1);
    theta.add_term(MultiIndex::single(3), s(-2));
    assert_eq!(c.theta, theta);
    assert_eq!(c.lambda, Some(s(1)));
    assert!(c.hkt_einstein);
    assert_eq!(c.chern_scalar, s(2));
    assert_eq!(c.chern_scalar, c.lambda.clone().unwrap() * s(2 * h.n() as i64));
    assert!(c.consistent(h.n()));
    assert!(!c.sl.certified);
    assert!(!h.has_holomorphic_phi());

    // Ω = φ¹∧φ² with φ¹ = e¹ − ie², φ² = e³ − ie⁴.
    let mi = -Scalar::i();
    let omega = one_form(4, 1, 2, mi.clone()).wedge(&one_form(4, 3, 4, mi));
    assert_eq!(f.to_real(h.omega()), omega);

    let real = hyperholomorphic_real(&fx.alg, &fx.triple);
    assert!(contained_in(4, &units(4, &[4]), &real));
    assert!(!contained_in(4, &units(4, &[3]), &real));
    assert!(hyperholomorphic_10(&fx.alg, &fx.triple).is_empty());
    assert!(same_span(4, &killing_fields(&fx.alg, &fx.metric), &units(4, &[1, 2, 3, 4])));

    // (e⁴)^{1,0} = (i/2)φ² and dφ² = −2e¹² is of type (1,1).
    let e4_10 = f.project(&f.to_frame(&InvariantForm::generator(4, 3)), 1, 0);
    assert!(f.del(&e4_10).is_zero());
    assert!(!f.delbar(&e4_10).is_zero());
}

#[test]
fn abelian_nil12() {
    let fx = common::abelian12();
    let v = fx.triple.validate(&fx.alg);
    assert!(v.is_valid() && v.abelian);
    let t = &fx.triple;
    let e = |k: usize| unit(12, k - 1);

    // [e2, Je5] − J[e2, e5] = −2e12.
    let lhs = fx.alg.bracket(&e(2), &t.j().mul_vec(&e(5)));
    let rhs = t.j().mul_vec(&fx.alg.bracket(&e(2), &e(5)));
    let diff: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    assert_eq!(diff, e(12).iter().map(|x| x * &s(-2)).collect::<Vec<_>>());

    let lg = lie_derivative_metric(&fx.alg, &e(1), &fx.metric);
    assert_eq!(lg[(4, 8)], s(-1));

    let mi = -Scalar::i();
    let center_10 = vec![vector(12, 9, 10, mi.clone()), vector(12, 11, 12, mi)];
    assert!(same_span(12, &hyperholomorphic_10(&fx.alg, t), &center_10));

    let c = fx.hermitian().classify().unwrap();
    assert!(c.hkt && c.balanced);

    let obata = obata_connection(&fx.alg, t).unwrap();
    let z1 = vector(12, 1, 2, -Scalar::i());
    let eq = check_parallel_obata_equivalences(&fx.alg, t, &obata, &z1);
    assert_eq!(eq.values(), [false; 5]);
    let z9 = vector(12, 9, 10, -Scalar::i());
    assert_eq!(check_parallel_obata_equivalences(&fx.alg, t, &obata, &z9).values(), [true; 5]);
}

#[test]
fn barberis_fino_gap() {
    let fx = common::barberis_fino();
    let v = fx.triple.validate(&fx.alg);
    assert!(v.is_valid() && !v.abelian);
    let mi = -Scalar::i();
    let z = vector(12, 3, 4, mi);
    // (1,0)-part of the complexified center.
    let center = fx.alg.center();
    let i_mat = fx.triple.i().sub(&ExactMatrix::identity(12).scale(&Scalar::i()));
    let center_10: Vec<Vec<Scalar>> = {
        let mut sys = ExactMatrix::from_columns(12, &center);
        sys = i_mat.mul(&sys);
        sys.kernel_basis().iter().map(|c| ExactMatrix::from_columns(12, &center).mul_vec(c)).collect()
    };
    assert!(same_span(12, &center_10, std::slice::from_ref(&z)));

    let hh = hyperholomorphic_10(&fx.alg, &fx.triple);
    let zbar: Vec<Scalar> = z.iter().map(Scalar::conj).collect();
    let jzbar = fx.triple.j().mul_vec(&zbar);
    assert!(contained_in(12, std::slice::from_ref(&jzbar), &hh));
    assert!(contained_in(12, &center_10, &hh));
    assert!(hh.len() > center_10.len());

    let c = fx.hermitian().classify().unwrap();
    assert!(c.hkt && c.balanced && c.sl.certified);
}

#[test]
fn obata_preserves_the_triple() {
    for (name, fx) in common::all() {
        let obata = obata_connection(&fx.alg, &fx.triple).unwrap();
        assert!(obata.torsion_failures(&fx.alg).is_empty(), "{name}");
        for w in Which::ALL {
            assert!(obata.preserves(fx.triple.get(w)), "{name} {w}");
        }
    }
}

#[test]
fn ceiling_on_bidegrees() {
    let h = common::hopf().hermitian();
    assert!(h.dolbeault(Dolbeault::Del, 3, 0).is_err());
    assert!(h.dolbeault(Dolbeault::Del, 2, 0).unwrap().matrix.rows() == 0);
}
