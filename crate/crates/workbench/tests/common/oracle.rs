//! Brute-force reference implementations. Only field arithmetic on `Scalar`
//! is shared with the library; elimination, determinants, inner products of
//! exterior powers and wedge products are written out from scratch here.

use std::collections::BTreeMap;

use hkt_core::exact::Scalar;

pub type Rows = Vec<Vec<Scalar>>;

/// Reduced row echelon form, pivoting on the last usable row.
pub fn rref(m: &Rows, cols: usize) -> (Rows, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(p) = (top..a.len()).rev().find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(top, p);
        let inv = a[top][c].inv().unwrap();
        for x in a[top].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != top && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[top].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row).take(cols) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Rows, cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Null space of a `cols`-column matrix given by rows.
pub fn kernel(m: &Rows, cols: usize) -> Rows {
    let (a, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

pub fn apply(m: &Rows, v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Equal spans: both ranks equal the rank of the union.
pub fn same_span(a: &Rows, b: &Rows, n: usize) -> bool {
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    let r = rank(&both, n);
    rank(a, n) == r && rank(b, n) == r
}

/// Laplace expansion along the first row.
pub fn det(m: &Rows) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Rows = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &det(&minor);
        if j % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

/// Inverse by Gauss-Jordan on [m | 1].
pub fn inverse(m: &Rows) -> Rows {
    let n = m.len();
    let aug: Rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let (a, pivots) = rref(&aug, 2 * n);
    assert_eq!(&pivots[..n], &(0..n).collect::<Vec<_>>()[..], "singular");
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// ⟨α, β⟩ = Σ α_a ḡ^{ab} conj(β_b) for real-coframe covectors.
pub fn covector_inner(ginv: &Rows, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            s += &(&(x * &ginv[i][j]) * &y.conj());
        }
    }
    s
}

/// ⟨α¹∧…∧αᵏ, β¹∧…∧βᵏ⟩ = det⟨αⁱ, βʲ⟩.
pub fn decomposable_inner(ginv: &Rows, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Scalar {
    let m: Rows = a.iter().map(|x| b.iter().map(|y| covector_inner(ginv, x, y)).collect()).collect();
    det(&m)
}

pub type Form = BTreeMap<Vec<usize>, Scalar>;

fn sign_of_merge(s: &[usize], t: &[usize]) -> bool {
    let mut inversions = 0;
    for a in s {
        inversions += t.iter().filter(|b| *b < a).count();
    }
    inversions % 2 == 1
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    out.extend(subsets(&items[1..], k));
    out
}

/// (α∧β)_K = Σ over k-subsets S ⊂ K of sign(S, K∖S) α_S β_{K∖S}.
pub fn wedge(dim: usize, a: &Form, ka: usize, b: &Form, kb: usize) -> Form {
    let zero = Scalar::zero();
    let mut out = Form::new();
    for big in subsets(&(0..dim).collect::<Vec<_>>(), ka + kb) {
        let mut c = Scalar::zero();
        for s in subsets(&big, ka) {
            let t: Vec<usize> = big.iter().copied().filter(|x| !s.contains(x)).collect();
            let x = a.get(&s).unwrap_or(&zero);
            let y = b.get(&t).unwrap_or(&zero);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let p = x * y;
            if sign_of_merge(&s, &t) {
                c -= &p;
            } else {
                c += &p;
            }
        }
        if !c.is_zero() {
            out.insert(big, c);
        }
    }
    out
}
