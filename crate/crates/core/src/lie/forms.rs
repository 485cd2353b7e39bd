use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Scalar;

/// Largest supported number of generators.
pub const MAX_DIM: usize = 32;

/// Strictly increasing multi-index, stored as a bitmask over generator slots.
/// Ordered lexicographically on the increasing index sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u32) -> Self {
        MultiIndex(mask)
    }

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_DIM, "index {i} out of range");
        MultiIndex(1 << i)
    }

    /// Builds a multi-index from distinct indices in any order, returning the
    /// permutation sign needed to sort them, or None on a repeated index.
    pub fn from_indices(indices: &[usize]) -> Option<(i32, MultiIndex)> {
        let mut acc = MultiIndex::EMPTY;
        let mut sign = 1;
        for &i in indices {
            let (s, m) = acc.wedge(MultiIndex::single(i))?;
            sign *= s;
            acc = m;
        }
        Some((sign, acc))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// Sign and result of e^self ∧ e^other; None if they overlap.
    pub fn wedge(self, other: MultiIndex) -> Option<(i32, MultiIndex)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> j).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, MultiIndex(self.0 | other.0)))
    }

    /// Sign and remainder of removing slot i (moved to the front first).
    pub fn remove(self, i: usize) -> Option<(i32, MultiIndex)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u32 << i) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, MultiIndex(self.0 & !(1 << i))))
    }

    /// Number of slots in `[lo, hi)`.
    pub fn count_in(self, lo: usize, hi: usize) -> usize {
        let width = hi - lo;
        let window = if width >= 32 { u32::MAX } else { (1u32 << width) - 1 };
        ((self.0 >> lo) & window).count_ones() as usize
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.indices().map(|i| i + 1).collect();
        write!(f, "{v:?}")
    }
}

/// All k-subsets of `slots` (given in increasing order), lexicographically.
pub fn subsets_of(slots: &[usize], k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(slots: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if pick.len() == k {
            out.push(MultiIndex(pick.iter().fold(0, |m, &i| m | 1 << i)));
            return;
        }
        let need = k - pick.len();
        for s in start..=slots.len().saturating_sub(need) {
            if s >= slots.len() {
                break;
            }
            pick.push(slots[s]);
            rec(slots, s + 1, k, pick, out);
            pick.pop();
        }
    }
    if k <= slots.len() {
        rec(slots, 0, k, &mut pick, &mut out);
    }
    out
}

/// Lexicographic basis of Λ^k on `dim` generators.
pub fn basis(dim: usize, k: usize) -> Vec<MultiIndex> {
    subsets_of(&(0..dim).collect::<Vec<_>>(), k)
}

/// Form of fixed degree with exact coefficients over `dim` generators.
/// The generators are the real coframe e^1..e^dim unless a caller attaches a
/// different frame.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl InvariantForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        InvariantForm { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    pub fn monomial(dim: usize, m: MultiIndex, c: Scalar) -> Self {
        let mut f = Self::zero(dim, m.degree());
        f.add_term(m, c);
        f
    }

    /// Generator e^i (0-based).
    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i < dim, "generator {i} out of range");
        Self::monomial(dim, MultiIndex::single(i), Scalar::one())
    }

    /// Wedge of generators in the given (not necessarily sorted) order.
    pub fn basis_form(dim: usize, indices: &[usize]) -> Self {
        match MultiIndex::from_indices(indices) {
            Some((s, m)) => Self::monomial(dim, m, Scalar::from_int(s as i64)),
            None => Self::zero(dim, indices.len()),
        }
    }

    /// 1-form Σ c_i e^i.
    pub fn from_covector(c: &[Scalar]) -> Self {
        let mut f = Self::zero(c.len(), 1);
        for (i, v) in c.iter().enumerate() {
            f.add_term(MultiIndex::single(i), v.clone());
        }
        f
    }

    pub fn from_vector(dim: usize, degree: usize, basis: &[MultiIndex], v: &[Scalar]) -> Self {
        assert_eq!(basis.len(), v.len(), "basis/vector length mismatch");
        let mut f = Self::zero(dim, degree);
        for (m, c) in basis.iter().zip(v) {
            f.add_term(*m, c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: MultiIndex) -> Scalar {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        assert_eq!(m.degree(), self.degree, "term degree mismatch");
        assert!(m.mask().checked_shr(self.dim as u32).unwrap_or(0) == 0, "term outside the generator range");
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn to_vector(&self, basis: &[MultiIndex]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(*m)).collect()
    }

    /// Coefficients with all multi-indices confined to `basis`; None if a
    /// term falls outside.
    pub fn to_vector_checked(&self, basis: &[MultiIndex]) -> Option<Vec<Scalar>> {
        if self.coeffs.keys().any(|m| basis.binary_search(m).is_err()) {
            return None;
        }
        Some(self.to_vector(basis))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        let mut f = self.clone();
        for (m, c) in &other.coeffs {
            f.add_term(*m, c.clone());
        }
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut f = Self::zero(self.dim, self.degree);
        if s.is_zero() {
            return f;
        }
        for (m, c) in &self.coeffs {
            f.coeffs.insert(*m, c * s);
        }
        f
    }

    /// Conjugates the coefficients (the generators are taken as real).
    pub fn conj_coeffs(&self) -> Self {
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Exterior product. If the degrees overflow `dim` the result is the zero
    /// form of the nominal degree, which keeps degree bookkeeping uniform.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "wedge across dimensions");
        let mut f = Self::zero(self.dim, self.degree + other.degree);
        if self.degree + other.degree > self.dim {
            return f;
        }
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((s, m)) = a.wedge(*b) {
                    let c = ca * cb;
                    f.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        f
    }

    /// ι_X with X given by its components along the dual frame.
    pub fn interior(&self, x: &[Scalar]) -> Self {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        if self.degree == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut f = Self::zero(self.dim, self.degree - 1);
        for (m, c) in &self.coeffs {
            for i in m.indices() {
                if x[i].is_zero() {
                    continue;
                }
                let (s, rest) = m.remove(i).expect("slot present");
                let t = c * &x[i];
                f.add_term(rest, if s < 0 { -t } else { t });
            }
        }
        f
    }

    /// α(X_1, …, X_k) with the determinant convention e^I(X_1..X_k) = det[e^{i_a}(X_b)].
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let mut f = self.clone();
        for v in vectors {
            f = f.interior(v);
        }
        // ι_{X_k}…ι_{X_1}α = α(X_1,…,X_k)
        f.coeff(MultiIndex::EMPTY)
    }

    /// Extends e^i ↦ images[i] multiplicatively.
    pub fn pullback(&self, images: &[InvariantForm]) -> Self {
        assert_eq!(images.len(), self.dim, "one image per generator");
        let target_dim = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Self::zero(target_dim, self.degree);
        for (m, c) in &self.coeffs {
            let mut acc = Self::constant(target_dim, c.clone());
            for i in m.indices() {
                acc = acc.wedge(&images[i]);
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.coeffs {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Extends e^i ↦ images[i] as a derivation. Images of odd degree shift
    /// act as antiderivations, even ones as derivations.
    pub fn apply_derivation(&self, images: &[InvariantForm], shift: usize) -> Self {
        assert_eq!(images.len(), self.dim, "one image per generator");
        let mut out = Self::zero(self.dim, self.degree + shift);
        if self.degree + shift > self.dim {
            return out;
        }
        for (m, c) in &self.coeffs {
            let idx: Vec<usize> = m.indices().collect();
            for (pos, &i) in idx.iter().enumerate() {
                if images[i].is_zero() {
                    continue;
                }
                let left = Self::basis_form(self.dim, &idx[..pos]);
                let right = Self::basis_form(self.dim, &idx[pos + 1..]);
                let mut t = left.wedge(&images[i]).wedge(&right);
                if shift % 2 == 1 && pos % 2 == 1 {
                    t = t.scale(&Scalar::from_int(-1));
                }
                for (mm, cc) in t.coeffs {
                    out.add_term(mm, &cc * c);
                }
            }
        }
        out
    }
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("{c}·e{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct FormTerm {
    index: Vec<usize>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    dim: usize,
    degree: usize,
    terms: Vec<FormTerm>,
}

/// Serialized with 1-based multi-indices.
impl Serialize for InvariantForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .coeffs
                .iter()
                .map(|(m, c)| FormTerm { index: m.indices().map(|i| i + 1).collect(), coeff: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InvariantForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = FormRepr::deserialize(deserializer)?;
        if r.dim > MAX_DIM || r.degree > r.dim {
            return Err(D::Error::custom("form degree/dimension out of range"));
        }
        let mut f = InvariantForm::zero(r.dim, r.degree);
        for t in r.terms {
            if t.index.len() != r.degree || t.index.iter().any(|&i| i == 0 || i > r.dim) {
                return Err(D::Error::custom(format!("bad multi-index {:?}", t.index)));
            }
            let zero_based: Vec<usize> = t.index.iter().map(|i| i - 1).collect();
            let Some((s, m)) = MultiIndex::from_indices(&zero_based) else {
                return Err(D::Error::custom(format!("repeated index in {:?}", t.index)));
            };
            f.add_term(m, if s < 0 { -t.coeff } else { t.coeff });
        }
        Ok(f)
    }
}

/// Vector in the complexified algebra, components along e_1..e_dim.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantVector {
    pub coeffs: Vec<Scalar>,
}

impl InvariantVector {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        InvariantVector { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        InvariantVector { coeffs: vec![Scalar::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coeffs[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn conj(&self) -> Self {
        InvariantVector { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        InvariantVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        InvariantVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        InvariantVector { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }
}
