//! Operators on the tangent spaces of the three orbits.
//!
//! The product and complex orbits are open, so their tangent space is all of
//! `Λ³V*` (20-dimensional, lexicographic basis). The tangent orbit is a
//! hypersurface with 19-dimensional tangent space `D₃`.

pub mod complex;
pub mod product;
pub mod tangent;

use std::fmt;

use crate::exterior::{KForm, MultiIndex};
use crate::linalg::{LinMap, Matrix};
use crate::scalar::Scalar;

pub use complex::{complex_table, script_j_matrix, ComplexTable};
pub use product::{involution_table, script_p_matrix, type_projectors, InvolutionTable, TypeBasis, TypeLabel};
pub use tangent::{
    k_endo, n_filtration, n_operator, tangent_space_basis, witness_nonintegrable, FiltrationReport, KEndo,
    TangentSpaces, WitnessKind,
};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Quadruple {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Quadruple {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Quadruple { a, b, c, d }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_ratios(r: [(i64, i64); 4]) -> Self {
        let [a, b, c, d] = r.map(|(n, m)| Scalar::ratio(n, m));
        Quadruple { a, b, c, d }
    }

    pub fn from_slice(v: &[Scalar]) -> Self {
        assert_eq!(v.len(), 4);
        Quadruple::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    /// Coefficients of the three-, two-, one- and zero-slot insertions.
    pub fn coefficients(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        self.coefficients().into_iter().cloned().collect()
    }

    pub fn unit(k: usize) -> Self {
        let mut v = vec![Scalar::zero(); 4];
        v[k] = Scalar::one();
        Quadruple::from_slice(&v)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Exact square matrix of an operator, with a label per basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorMatrix {
    pub matrix: Matrix,
    pub basis_labels: Vec<String>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn square(&self) -> Matrix {
        self.matrix.mul(&self.matrix)
    }
}

pub(crate) fn lambda3_labels() -> Vec<String> {
    MultiIndex::all(3).into_iter().map(|m| format!("{m:?}")).collect()
}

/// Matrices of `Ω ↦ Σ_{|T|=k} Ω(…A in slots T…)` on `Λ³`, `k = 3, 2, 1, 0`.
#[derive(Clone, Debug)]
pub struct InsertionOperators {
    pub(crate) by_count: [Matrix; 4],
}

impl InsertionOperators {
    pub fn new(a: &LinMap) -> Self {
        let basis = MultiIndex::all(3);
        let build = |count: usize| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|&m| KForm::basis(m).insert_operator(a, count).to_coords())
                .collect();
            Matrix::from_columns(&cols, basis.len())
        };
        InsertionOperators {
            by_count: [build(3), build(2), build(1), Matrix::identity(basis.len())],
        }
    }

    pub fn combine(&self, q: &Quadruple) -> OperatorMatrix {
        let mut m = Matrix::zeros(20, 20);
        for (coef, op) in q.coefficients().into_iter().zip(&self.by_count) {
            if !coef.is_zero() {
                m = m.add(&op.scale(coef));
            }
        }
        OperatorMatrix {
            matrix: m,
            basis_labels: lambda3_labels(),
        }
    }
}

/// The sixteen quadruples listed for the product orbit.
pub fn listed_product_quadruples() -> Vec<Quadruple> {
    listed_product_correspondence().into_iter().map(|(q, _)| q).collect()
}

/// The sixteen quadruples with the `+1`-eigenspace of `𝒫` as listed.
pub fn listed_product_correspondence() -> Vec<(Quadruple, Vec<TypeLabel>)> {
    use TypeLabel::*;
    let q = Quadruple::from_ratios;
    vec![
        (q([(1, 1), (0, 1), (0, 1), (0, 1)]), vec![D30, D12]),
        (q([(-1, 1), (0, 1), (0, 1), (0, 1)]), vec![D21, D03]),
        (q([(1, 2), (0, 1), (-1, 2), (0, 1)]), vec![D12, D03]),
        (q([(-1, 2), (0, 1), (1, 2), (0, 1)]), vec![D30, D21]),
        (q([(0, 1), (1, 2), (0, 1), (-1, 2)]), vec![D30, D03]),
        (q([(0, 1), (-1, 2), (0, 1), (1, 2)]), vec![D21, D12]),
        (q([(0, 1), (0, 1), (0, 1), (1, 1)]), vec![D30, D21, D12, D03]),
        (q([(0, 1), (0, 1), (0, 1), (-1, 1)]), vec![]),
        (q([(1, 4), (1, 4), (1, 4), (-3, 4)]), vec![D30]),
        (q([(1, 4), (-1, 4), (1, 4), (3, 4)]), vec![D30, D21, D12]),
        (q([(-1, 4), (-1, 4), (-1, 4), (3, 4)]), vec![D21, D12, D03]),
        (q([(-1, 4), (1, 4), (-1, 4), (-3, 4)]), vec![D03]),
        (q([(3, 4), (1, 4), (-1, 4), (1, 4)]), vec![D30, D12, D03]),
        (q([(3, 4), (-1, 4), (-1, 4), (-1, 4)]), vec![D12]),
        (q([(-3, 4), (1, 4), (1, 4), (1, 4)]), vec![D30, D21, D03]),
        (q([(-3, 4), (-1, 4), (1, 4), (-1, 4)]), vec![D21]),
    ]
}

/// Every sign choice in the two families listed for the complex orbit.
pub fn complex_candidates() -> Vec<Quadruple> {
    let q = Quadruple::from_ratios;
    vec![
        q([(1, 1), (0, 1), (0, 1), (0, 1)]),
        q([(-1, 1), (0, 1), (0, 1), (0, 1)]),
        q([(1, 2), (0, 1), (1, 2), (0, 1)]),
        q([(1, 2), (0, 1), (-1, 2), (0, 1)]),
        q([(-1, 2), (0, 1), (1, 2), (0, 1)]),
        q([(-1, 2), (0, 1), (-1, 2), (0, 1)]),
    ]
}
