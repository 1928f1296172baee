//! Dense exact linear algebra over [`Scalar`].
//!
//! Elimination is Gauss–Jordan over the field; every rational stays in
//! lowest terms so there is no rounding path anywhere.

use std::fmt;

use crate::scalar::Scalar;
use crate::{Error, Result, DIM};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], height: usize) -> Self {
        assert!(cols.iter().all(|c| c.len() == height), "ragged columns");
        Self::from_fn(height, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn same_field(&self, x: &Scalar) -> bool {
        self.data.iter().all(|a| a.same_field(x))
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let pj = m.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&factor * pj);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Null space `{x : M x = 0}` as a subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let vectors: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -ech.reduced.get(row, f);
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.transpose().row_vectors())
    }

    /// Exact solution of `M x = b`; `Inconsistent` when `b` is outside the
    /// column space. With a nontrivial kernel the particular solution with
    /// free variables set to zero is returned.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced.get(row, self.cols).clone();
        }
        Ok(x)
    }

    /// Like [`Matrix::solve`] but requires a unique solution.
    pub fn solve_unique(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let x = self.solve(b)?;
        let rank = self.rank();
        if rank < self.cols {
            return Err(Error::RankDeficient {
                rank,
                expected: self.cols,
            });
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| ech.reduced.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        match self.rows {
            0 => Scalar::one(),
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            3 => {
                let g = |i, j| self.get(i, j);
                g(0, 0) * &(g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                    - g(0, 1) * &(g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * &(g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
            n => {
                let mut m = self.clone();
                let mut det = Scalar::one();
                for c in 0..n {
                    let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                        return Scalar::zero();
                    };
                    if p != c {
                        m.swap_rows(p, c);
                        det = -det;
                    }
                    let pivot = m.get(c, c).clone();
                    det *= &pivot;
                    let inv = pivot.inverse().expect("nonzero pivot");
                    for i in c + 1..n {
                        if m.get(i, c).is_zero() {
                            continue;
                        }
                        let factor = m.get(i, c) * &inv;
                        for j in c..n {
                            let x = m.get(i, j) - &(&factor * m.get(c, j));
                            m.set(i, j, x);
                        }
                    }
                }
                det
            }
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Endomorphism of the six-dimensional space; column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinMap(Matrix);

impl LinMap {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::WrongDimension {
                expected: DIM,
                found: m.rows().max(m.cols()),
            });
        }
        Ok(LinMap(m))
    }

    pub fn identity() -> Self {
        LinMap(Matrix::identity(DIM))
    }

    pub fn zero() -> Self {
        LinMap(Matrix::zeros(DIM, DIM))
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        assert_eq!(d.len(), DIM);
        LinMap(Matrix::from_fn(DIM, DIM, |i, j| {
            if i == j {
                d[i].clone()
            } else {
                Scalar::zero()
            }
        }))
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        assert_eq!(cols.len(), DIM);
        LinMap(Matrix::from_columns(cols, DIM))
    }

    /// Sends `e_i` to `e_{perm[i]}` (zero-based).
    pub fn permutation(perm: &[usize; DIM]) -> Self {
        LinMap(Matrix::from_fn(DIM, DIM, |i, j| {
            if perm[j] == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }))
    }

    /// `I + c·E_{row,col}`.
    pub fn shear(row: usize, col: usize, c: Scalar) -> Self {
        assert_ne!(row, col);
        let mut m = Matrix::identity(DIM);
        m.set(row, col, c);
        LinMap(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.0.column(j)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.0.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        LinMap(self.0.mul(&other.0))
    }

    pub fn square(&self) -> LinMap {
        self.compose(self)
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        LinMap(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        LinMap(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap(self.0.scale(c))
    }

    pub fn neg(&self) -> LinMap {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn inverse(&self) -> Option<LinMap> {
        self.0.inverse().map(LinMap)
    }

    pub fn determinant(&self) -> Scalar {
        self.0.determinant()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn kernel(&self) -> Subspace {
        self.0.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.0.image()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// `Some(c)` when `self = c·I`.
    pub fn scalar_multiple_of_identity(&self) -> Option<Scalar> {
        let c = self.0.get(0, 0).clone();
        (*self == LinMap::identity().scale(&c)).then_some(c)
    }

    /// `Some(c)` with `self = c·other`, for `other ≠ 0`.
    pub fn ratio_to(&self, other: &LinMap) -> Option<Scalar> {
        let (i, j) = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .find(|&(i, j)| !other.0.get(i, j).is_zero())?;
        let c = self.0.get(i, j) / other.0.get(i, j);
        (*self == other.scale(&c)).then_some(c)
    }

    pub fn same_field(&self, x: &Scalar) -> bool {
        self.0.same_field(x)
    }

    /// First field-extension radicand appearing in the entries, if any.
    pub fn field(&self) -> Option<Scalar> {
        self.0.entries().find(|x| !x.is_rational()).cloned()
    }
}

/// Linear subspace of an `ambient`-dimensional coordinate space, kept as the
/// rows of its reduced row echelon basis, which is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::identity(ambient).row_vectors())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors);
        assert_eq!(m.cols(), ambient);
        let ech = m.echelon();
        let basis = (0..ech.pivots.len()).map(|i| ech.reduced.row(i)).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as matrix rows.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(&self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut vectors = self.basis.clone();
        vectors.push(v.to_vec());
        Matrix::from_rows(&vectors).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [U^T | -W^T] (a,b) = 0
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let k = self.dim();
        let m = Matrix::from_fn(self.ambient, k + other.dim(), |i, j| {
            if j < k {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - k][i]
            }
        });
        let vectors: Vec<Vec<Scalar>> = m
            .kernel()
            .basis()
            .iter()
            .map(|coef| {
                (0..self.ambient)
                    .map(|i| (0..k).map(|j| &coef[j] * &self.basis[j][i]).sum())
                    .collect()
            })
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Greedy completion: standard basis vectors `e_1, e_2, …` not already
    /// in the span, in scan order, until the whole space is reached.
    pub fn complement_from_standard(&self) -> Vec<Vec<Scalar>> {
        let mut current = self.clone();
        let mut picked = Vec::new();
        for i in 0..self.ambient {
            let e: Vec<Scalar> = (0..self.ambient)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect();
            if !current.contains(&e) {
                current = current.sum(&Subspace::span(self.ambient, &[e.clone()]));
                picked.push(e);
            }
        }
        picked
    }
}

/// `ker(Q - λI)`. Rejects `λ` from a field different from `Q`'s entries.
pub fn eigenspace(q: &LinMap, lambda: &Scalar) -> Result<Subspace> {
    if !q.same_field(lambda) {
        return Err(Error::MixedExtension);
    }
    Ok(q.sub(&LinMap::identity().scale(lambda)).kernel())
}
