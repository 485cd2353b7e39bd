//! Library against oracle on corpus-derived and random inputs.

use hkt_core::exact::{rational_frac, ExactMatrix, Scalar};
use hkt_core::hermitian::{Dolbeault, Hyperhermitian, LaplacianKind};
use hkt_core::hypercomplex::Which;
use hkt_core::lie::{basis, ce_d, InvariantForm};
use hkt_workbench::Scene;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{self, Form, Rows};

pub const MAX_SIZE: usize = 20;
pub const RANDOM_PER_SHAPE: usize = 50;
pub const SHAPES: [(usize, usize); 7] = [(1, 1), (3, 3), (4, 6), (6, 4), (5, 5), (8, 8), (7, 10)];
pub const WEDGE_SHAPES: [(usize, usize, usize); 4] = [(6, 1, 2), (6, 2, 2), (8, 2, 3), (8, 3, 3)];

#[derive(Debug, Default)]
pub struct Tally {
    pub kernels: usize,
    pub grams: usize,
    pub wedges: usize,
    pub failures: Vec<String>,
}

fn rows(m: &ExactMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

pub fn check_kernel(t: &mut Tally, label: &str, m: &ExactMatrix) {
    t.kernels += 1;
    let r = rows(m);
    let n = m.cols();
    let lib = m.kernel_basis();
    let orc = oracle::kernel(&r, n);
    let ok = lib.len() == orc.len()
        && m.rank() == oracle::rank(&r, n)
        && lib.iter().all(|v| oracle::apply(&r, v).iter().all(Scalar::is_zero))
        && oracle::same_span(&lib, &orc, n)
        && (!(m.is_square() && n <= 7) || oracle::det(&r).is_zero() == !orc.is_empty());
    if !ok {
        t.failures.push(format!("kernel {label}"));
    }
}

fn covectors(h: &Hyperhermitian) -> Rows {
    let b1 = basis(h.dim(), 1);
    (0..h.dim()).map(|a| h.frame().to_real(&InvariantForm::generator(h.dim(), a)).to_vector(&b1)).collect()
}

pub fn check_grams(t: &mut Tally, name: &str, h: &Hyperhermitian) {
    let ginv = oracle::inverse(&rows(h.metric()));
    let psi = covectors(h);
    let h1: Rows = psi.iter().map(|x| psi.iter().map(|y| oracle::covector_inner(&ginv, x, y)).collect()).collect();
    let minor = |s: &hkt_core::lie::MultiIndex, u: &hkt_core::lie::MultiIndex| {
        let m: Rows = s.indices().map(|a| u.indices().map(|b| h1[a][b].clone()).collect()).collect();
        oracle::det(&m)
    };
    for p in 0..=h.half() {
        for q in 0..=h.half() {
            let b = h.frame().basis_pq(p, q);
            if b.len() > MAX_SIZE {
                continue;
            }
            t.grams += 1;
            let g = h.gram(p, q);
            let mut ok = true;
            for (i, s) in b.iter().enumerate() {
                for (j, u) in b.iter().enumerate() {
                    let want = minor(s, u);
                    ok &= g.row(i)[j] == want;
                    // `inner` goes through the same matrix; spot-check it on the first row.
                    if i == 0 {
                        let a = InvariantForm::monomial(h.dim(), *s, Scalar::one());
                        let c = InvariantForm::monomial(h.dim(), *u, Scalar::one());
                        ok &= h.inner(&a, &c) == want;
                    }
                }
            }
            if !ok {
                t.failures.push(format!("gram {name} ({p},{q})"));
            }
        }
    }
    let e: Rows = (0..h.dim()).map(|a| (0..h.dim()).map(|b| Scalar::from_int((a == b) as i64)).collect()).collect();
    for k in 0..=h.dim() {
        let b = h.real_basis(k);
        if b.len() > MAX_SIZE {
            continue;
        }
        t.grams += 1;
        let g = h.real_gram(k);
        let pick = |m: &hkt_core::lie::MultiIndex| m.indices().map(|a| e[a].clone()).collect::<Vec<_>>();
        let ok = b.iter().enumerate().all(|(i, s)| {
            b.iter().enumerate().all(|(j, u)| g.row(i)[j] == oracle::decomposable_inner(&ginv, &pick(s), &pick(u)))
        });
        if !ok {
            t.failures.push(format!("real gram {name} {k}"));
        }
    }
}

fn to_oracle(f: &InvariantForm) -> Form {
    f.terms().map(|(m, c)| (m.indices().collect(), c.clone())).collect()
}

pub fn check_wedge(t: &mut Tally, label: &str, a: &InvariantForm, b: &InvariantForm) {
    if a.degree() + b.degree() > a.dim() {
        return;
    }
    t.wedges += 1;
    let want = oracle::wedge(a.dim(), &to_oracle(a), a.degree(), &to_oracle(b), b.degree());
    if to_oracle(&a.wedge(b)) != want {
        t.failures.push(format!("wedge {label}"));
    }
}

/// Matrices a scene gives rise to, at most `MAX_SIZE` in each direction.
pub fn scene_matrices(scene: &Scene) -> Vec<(String, ExactMatrix)> {
    let n = scene.dim();
    let mut out = Vec::new();
    for i in 0..n {
        out.push((format!("ad e{}", i + 1), scene.algebra.ad_basis(i)));
    }
    for w in Which::ALL {
        let l = scene.triple.get(w);
        out.push((format!("{w} - i"), l.sub(&ExactMatrix::identity(n).scale(&Scalar::i()))));
        out.push((format!("{w} + i"), l.add(&ExactMatrix::identity(n).scale(&Scalar::i()))));
    }
    if let Some(h) = scene.hermitian() {
        out.push(("metric".into(), h.metric().clone()));
        let size = |p: usize, q: usize| h.frame().basis_pq(p, q).len();
        for p in 0..=h.half() {
            for q in 0..=h.half() {
                if size(p, q) > MAX_SIZE {
                    continue;
                }
                for kind in [LaplacianKind::Del, LaplacianKind::DelJ, LaplacianKind::DelPhi, LaplacianKind::BottChern] {
                    if let Ok(op) = h.laplacian(kind, p, q) {
                        out.push((format!("{} ({p},{q})", kind.name()), op.matrix));
                    }
                }
                for d in [Dolbeault::Del, Dolbeault::DelBar, Dolbeault::DelJ] {
                    if size(p + 1, q).max(size(p, q + 1)) > MAX_SIZE {
                        continue;
                    }
                    if let Ok(op) = h.dolbeault(d, p, q) {
                        out.push((format!("{d:?} ({p},{q})"), op.matrix));
                    }
                }
            }
        }
    }
    out.retain(|(_, m)| m.rows() <= MAX_SIZE && m.cols() <= MAX_SIZE);
    out
}

/// Real forms a scene gives rise to.
pub fn scene_forms(scene: &Scene) -> Vec<(String, InvariantForm)> {
    let n = scene.dim();
    let mut out: Vec<(String, InvariantForm)> =
        (0..n).map(|i| (format!("de{}", i + 1), ce_d(&scene.algebra, &InvariantForm::generator(n, i)))).collect();
    out.push(("e1".into(), InvariantForm::generator(n, 0)));
    if let Some(h) = scene.hermitian() {
        out.push(("omega".into(), h.omega_real()));
        for w in Which::ALL {
            out.push((format!("F_{w}"), h.fundamental_form(w)));
        }
    }
    out
}

pub fn corpus(t: &mut Tally, scene: &Scene) {
    for (label, m) in scene_matrices(scene) {
        check_kernel(t, &format!("{} {label}", scene.name), &m);
    }
    if let Some(h) = scene.hermitian() {
        check_grams(t, &scene.name, h);
    }
    let forms = scene_forms(scene);
    for (la, a) in &forms {
        for (lb, b) in &forms {
            check_wedge(t, &format!("{} {la}∧{lb}", scene.name), a, b);
        }
    }
}

fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.gen_bool(0.3) {
        return Scalar::zero();
    }
    let d = rng.gen_range(1..=4);
    Scalar::new(rational_frac(rng.gen_range(-5..=5), d), rational_frac(rng.gen_range(-5..=5), d))
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> ExactMatrix {
    ExactMatrix::from_entries(r, c, (0..r * c).map(|_| scalar(rng)).collect()).unwrap()
}

pub fn random(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (r, c) in SHAPES {
        for k in 0..RANDOM_PER_SHAPE {
            // Every other sample is a product through a thin middle, so rank drops.
            let m = if k % 2 == 0 {
                random_matrix(&mut rng, r, c)
            } else {
                let mid = rng.gen_range(0..=r.min(c));
                random_matrix(&mut rng, r, mid).mul(&random_matrix(&mut rng, mid, c))
            };
            check_kernel(t, &format!("random {r}x{c} #{k}"), &m);
        }
    }
    for (dim, ka, kb) in WEDGE_SHAPES {
        let (ba, bb) = (basis(dim, ka), basis(dim, kb));
        for k in 0..RANDOM_PER_SHAPE {
            let va: Vec<Scalar> = ba.iter().map(|_| scalar(&mut rng)).collect();
            let vb: Vec<Scalar> = bb.iter().map(|_| scalar(&mut rng)).collect();
            let a = InvariantForm::from_vector(dim, ka, &ba, &va);
            let b = InvariantForm::from_vector(dim, kb, &bb, &vb);
            check_wedge(t, &format!("random Λ{ka}∧Λ{kb} in {dim} #{k}"), &a, &b);
        }
    }
}

pub fn everything() -> Tally {
    let mut t = Tally::default();
    for path in super::corpus() {
        corpus(&mut t, &Scene::load(&path).unwrap());
    }
    random(&mut t, 0x6b74);
    t
}
