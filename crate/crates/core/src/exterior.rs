//! Alternating forms on the six-dimensional coordinate space.
//!
//! Conventions: `α_I = α_{i1}∧…∧α_{ik}` for `I = (i1 < … < ik)`, and
//! `α_I(e_{j1},…,e_{jk}) = δ_{IJ}` on increasing tuples (determinant
//! normalisation, no `1/k!`). Interior product inserts into the first slot.
//! All coordinate layouts order multi-indices lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{LinMap, Matrix};
use crate::scalar::Scalar;
use crate::{Error, Result, DIM};

/// An increasing tuple of basis indices, stored as a bitmask over `0..6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    /// Builds from one-based indices, which must be strictly increasing and
    /// lie in `1..=6`.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        let mut last = 0usize;
        for &i in indices {
            if !(1..=DIM).contains(&i) {
                return Err(Error::IndexOutOfRange(i));
            }
            if i <= last {
                return Err(Error::NotIncreasing(indices.to_vec()));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(MultiIndex(mask))
    }

    pub(crate) fn from_mask(mask: u8) -> Self {
        debug_assert!(mask < 1 << DIM);
        MultiIndex(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Zero-based indices in increasing order.
    pub fn slots(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// One-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        self.slots().map(|i| i + 1).collect()
    }

    pub fn contains(self, slot: usize) -> bool {
        self.0 & (1 << slot) != 0
    }

    /// All multi-indices of grade `k` in lexicographic order.
    pub fn all(k: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0u8..1 << DIM)
            .filter(|m| m.count_ones() as usize == k)
            .map(MultiIndex)
            .collect();
        out.sort();
        out
    }

    /// Position within [`MultiIndex::all`] for its grade.
    pub fn position(self) -> usize {
        MultiIndex::all(self.grade())
            .iter()
            .position(|m| *m == self)
            .expect("multi-index enumerated")
    }

    /// Sign of the shuffle taking `self ++ other` to increasing order, or
    /// `None` if the index sets overlap.
    pub fn merge_sign(self, other: MultiIndex) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other
            .slots()
            .map(|j| (self.0 >> (j + 1)).count_ones())
            .sum();
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn complement(self) -> MultiIndex {
        MultiIndex(!self.0 & ((1 << DIM) - 1))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.slots().cmp(other.slots()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A homogeneous alternating form. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    grade: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl KForm {
    pub fn zero(grade: usize) -> Self {
        assert!(grade <= DIM, "grade {grade} exceeds {DIM}");
        KForm {
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    /// `α_I` for one-based indices.
    pub fn monomial(indices: &[usize]) -> Result<Self> {
        let idx = MultiIndex::new(indices)?;
        Ok(Self::basis(idx))
    }

    pub fn basis(idx: MultiIndex) -> Self {
        let mut f = KForm::zero(idx.grade());
        f.coeffs.insert(idx, Scalar::one());
        f
    }

    /// Builds from `(coefficient, one-based indices)` terms, summing repeats.
    pub fn from_terms<S: Into<Scalar>>(
        grade: usize,
        terms: impl IntoIterator<Item = (S, Vec<usize>)>,
    ) -> Result<Self> {
        let mut f = KForm::zero(grade);
        for (c, idx) in terms {
            let mi = MultiIndex::new(&idx)?;
            if mi.grade() != grade {
                return Err(Error::WrongGrade {
                    expected: grade,
                    found: mi.grade(),
                });
            }
            f.add_term(mi, &c.into());
        }
        Ok(f)
    }

    /// The top form `α_{123456}`.
    pub fn volume() -> Self {
        Self::basis(MultiIndex::from_mask((1 << DIM) - 1))
    }

    /// One-form with the given coordinates.
    pub fn covector(coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), DIM);
        let mut f = KForm::zero(1);
        for (i, c) in coords.iter().enumerate() {
            f.add_term(MultiIndex::from_mask(1 << i), c);
        }
        f
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: MultiIndex) -> Scalar {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: &Scalar) {
        debug_assert_eq!(idx.grade(), self.grade);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    /// Dense coordinates in lexicographic multi-index order.
    pub fn to_coords(&self) -> Vec<Scalar> {
        MultiIndex::all(self.grade)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn from_coords(grade: usize, coords: &[Scalar]) -> Self {
        let basis = MultiIndex::all(grade);
        assert_eq!(basis.len(), coords.len(), "coordinate length");
        let mut f = KForm::zero(grade);
        for (m, c) in basis.into_iter().zip(coords) {
            f.add_term(m, c);
        }
        f
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = KForm::zero(self.grade);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.coeffs {
            out.coeffs.insert(*m, x * c);
        }
        out
    }

    pub fn add(&self, other: &KForm) -> KForm {
        assert_eq!(self.grade, other.grade, "adding forms of different grade");
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &KForm) -> KForm {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Exterior product, with grade overflow rejected.
    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        let grade = self.grade + other.grade;
        if grade > DIM {
            return Err(Error::GradeOverflow(grade));
        }
        let mut out = KForm::zero(grade);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some(sign) = a.merge_sign(*b) {
                    let c = x * y;
                    let c = if sign < 0 { -c } else { c };
                    out.add_term(a.union(*b), &c);
                }
            }
        }
        Ok(out)
    }

    /// `ι_v`, insertion into the first slot.
    pub fn interior(&self, v: &[Scalar]) -> Result<KForm> {
        assert_eq!(v.len(), DIM);
        if self.grade == 0 {
            return Err(Error::WrongGrade {
                expected: 1,
                found: 0,
            });
        }
        let mut out = KForm::zero(self.grade - 1);
        for (m, c) in &self.coeffs {
            for (pos, slot) in m.slots().enumerate() {
                if v[slot].is_zero() {
                    continue;
                }
                let rest = MultiIndex::from_mask(m.mask() & !(1 << slot));
                let term = c * &v[slot];
                let term = if pos % 2 == 1 { -term } else { term };
                out.add_term(rest, &term);
            }
        }
        Ok(out)
    }

    /// `ι_{e_i}` for a zero-based basis index.
    pub fn interior_basis(&self, slot: usize) -> Result<KForm> {
        self.interior(&unit(slot))
    }

    /// Value on `grade` vectors.
    pub fn evaluate(&self, vectors: &[&[Scalar]]) -> Scalar {
        assert_eq!(vectors.len(), self.grade, "argument count");
        let mut total = Scalar::zero();
        for (m, c) in &self.coeffs {
            let rows: Vec<usize> = m.slots().collect();
            let minor = Matrix::from_fn(self.grade, self.grade, |r, k| vectors[k][rows[r]].clone());
            let d = minor.determinant();
            if !d.is_zero() {
                total += &(c * &d);
            }
        }
        total
    }

    /// `g^*Ω`, i.e. `(v_1,…,v_k) ↦ Ω(g v_1,…,g v_k)`.
    pub fn pullback(&self, g: &LinMap) -> KForm {
        let mut out = KForm::zero(self.grade);
        let targets = MultiIndex::all(self.grade);
        for (i, c) in &self.coeffs {
            let rows: Vec<usize> = i.slots().collect();
            for j in &targets {
                let cols: Vec<usize> = j.slots().collect();
                let minor = Matrix::from_fn(self.grade, self.grade, |r, k| {
                    g.matrix().get(rows[r], cols[k]).clone()
                });
                let d = minor.determinant();
                if !d.is_zero() {
                    out.add_term(*j, &(c * &d));
                }
            }
        }
        out
    }

    /// `Σ_{|T| = count} Ω(…)` with `a` inserted in the slots of `T`.
    ///
    /// `count = 1` is the derivation `D_A`, `count = grade` is the pullback
    /// by `A`. The sum is alternating, so it is determined by its values on
    /// increasing basis tuples.
    pub fn insert_operator(&self, a: &LinMap, count: usize) -> KForm {
        assert!(count <= self.grade);
        let k = self.grade;
        let subsets: Vec<u8> = (0u8..1 << k)
            .filter(|s| s.count_ones() as usize == count)
            .collect();
        let mut out = KForm::zero(k);
        for target in MultiIndex::all(k) {
            let slots: Vec<usize> = target.slots().collect();
            let mut value = Scalar::zero();
            for &subset in &subsets {
                let args: Vec<Vec<Scalar>> = slots
                    .iter()
                    .enumerate()
                    .map(|(pos, &s)| {
                        if subset & (1 << pos) != 0 {
                            a.column(s)
                        } else {
                            unit(s)
                        }
                    })
                    .collect();
                let refs: Vec<&[Scalar]> = args.iter().map(|v| v.as_slice()).collect();
                value += &self.evaluate(&refs);
            }
            out.add_term(target, &value);
        }
        out
    }

    /// `D_A Ω = Σ_i Ω(…, A v_i, …)`.
    pub fn derivation(&self, a: &LinMap) -> KForm {
        self.insert_operator(a, 1)
    }

    /// True when every coefficient lies in a field compatible with `x`.
    pub fn same_field(&self, x: &Scalar) -> bool {
        self.coeffs.values().all(|c| c.same_field(x))
    }
}

/// Zero-based standard basis vector.
pub fn unit(slot: usize) -> Vec<Scalar> {
    (0..DIM)
        .map(|i| if i == slot { Scalar::one() } else { Scalar::zero() })
        .collect()
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){m:?}")?;
        }
        Ok(())
    }
}
