//! Product points: the type decomposition `Λ³ = D^{3,0} ⊕ D^{2,1} ⊕ D^{1,2} ⊕ D^{0,3}`
//! and the operators `𝒫(a,b,c,d)`.

use std::collections::BTreeSet;
use std::fmt;

use super::{listed_product_correspondence, InsertionOperators, OperatorMatrix, Quadruple};
use crate::classify::require_orbit_structure;
use crate::exterior::{KForm, MultiIndex};
use crate::linalg::{eigenspace, LinMap, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::{Error, OrbitType, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TypeLabel {
    D30,
    D21,
    D12,
    D03,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 4] = [TypeLabel::D30, TypeLabel::D21, TypeLabel::D12, TypeLabel::D03];

    /// Number of arguments from the `+1`-eigenspace.
    pub fn r(self) -> usize {
        3 - self.s()
    }

    /// Number of arguments from the `-1`-eigenspace.
    pub fn s(self) -> usize {
        self.index()
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_s(s: usize) -> Self {
        Self::ALL[s]
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{{{},{}}}", self.r(), self.s())
    }
}

/// Dual bases adapted to `V' ⊕ V''`. The adapted basis `B` has the reduced
/// echelon bases of `ker(S-I)` and `ker(S+I)` as its columns, and
/// `β_I = (B⁻¹)^* α_I` is dual to it.
#[derive(Clone, Debug)]
pub struct TypeBasis {
    pub adapted: LinMap,
    pub components: [Vec<(MultiIndex, KForm)>; 4],
    inverse: LinMap,
}

impl TypeBasis {
    pub fn dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.components[i].len())
    }

    pub fn component(&self, label: TypeLabel) -> &[(MultiIndex, KForm)] {
        &self.components[label.index()]
    }

    pub fn subspace(&self, label: TypeLabel) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = self.component(label).iter().map(|(_, f)| f.to_coords()).collect();
        Subspace::span(20, &vectors)
    }

    /// Split into `(3,0), (2,1), (1,2), (0,3)` parts.
    pub fn decompose(&self, omega: &KForm) -> [KForm; 4] {
        let local = omega.pullback(&self.adapted);
        let mut parts = [0, 1, 2, 3].map(|_| KForm::zero(3));
        for (m, c) in local.terms() {
            parts[type_of(*m).index()].add_term(*m, c);
        }
        parts.map(|p| p.pullback(&self.inverse))
    }
}

fn type_of(m: MultiIndex) -> TypeLabel {
    TypeLabel::from_s(m.slots().filter(|&s| s >= 3).count())
}

pub fn type_projectors(omega: &KForm) -> Result<TypeBasis> {
    let r = require_orbit_structure(omega, OrbitType::Product)?;
    let plus = eigenspace(&r.structure, &Scalar::one())?;
    let minus = eigenspace(&r.structure, &Scalar::from_int(-1))?;
    let mut columns = plus.basis().to_vec();
    columns.extend(minus.basis().iter().cloned());
    let adapted = LinMap::from_columns(&columns);
    let inverse = adapted
        .inverse()
        .ok_or_else(|| Error::InternalInvariant("eigenspaces are not transversal".into()))?;
    let mut components: [Vec<(MultiIndex, KForm)>; 4] = Default::default();
    for m in MultiIndex::all(3) {
        components[type_of(m).index()].push((m, KForm::basis(m).pullback(&inverse)));
    }
    Ok(TypeBasis {
        adapted,
        components,
        inverse,
    })
}

pub fn script_p_matrix(omega: &KForm, q: &Quadruple) -> Result<OperatorMatrix> {
    let r = require_orbit_structure(omega, OrbitType::Product)?;
    Ok(InsertionOperators::new(&r.structure).combine(q))
}

#[derive(Clone, Debug)]
pub struct InvolutionRow {
    pub quadruple: Quadruple,
    pub squares_to_identity: bool,
    pub plus_dim: usize,
    pub composition: Option<Vec<TypeLabel>>,
    pub expected: Vec<TypeLabel>,
}

impl InvolutionRow {
    pub fn matches(&self) -> bool {
        self.squares_to_identity && self.composition.as_ref() == Some(&self.expected)
    }
}

#[derive(Clone, Debug)]
pub struct InvolutionTable {
    /// Row `D^{r,s}`, column `k`: the scalar by which the `k`-th unit
    /// quadruple acts on `D^{r,s}`.
    pub block_map: Matrix,
    /// Solutions of `block_map · q = σ` with the sign vector `σ`.
    pub regenerated: Vec<(Quadruple, [i8; 4])>,
    pub rows: Vec<InvolutionRow>,
    pub regenerated_matches_listed: bool,
    pub discrepancies: Vec<String>,
}

impl InvolutionTable {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn proportionality(y: &[Scalar], x: &[Scalar]) -> Option<Scalar> {
    let k = x.iter().position(|v| !v.is_zero())?;
    let t = &y[k] / &x[k];
    x.iter().zip(y).all(|(xi, yi)| &(xi * &t) == yi).then_some(t)
}

/// Plus-eigenspace of an involution expressed as a sum of type components.
fn composition(plus: &Subspace, types: &TypeBasis) -> Option<Vec<TypeLabel>> {
    let mut labels = Vec::new();
    let mut sum = Subspace::zero(20);
    for label in TypeLabel::ALL {
        let comp = types.subspace(label);
        if comp.is_subspace_of(plus) {
            labels.push(label);
            sum = sum.sum(&comp);
        }
    }
    (sum == *plus).then_some(labels)
}

pub fn involution_table(omega: &KForm) -> Result<InvolutionTable> {
    let r = require_orbit_structure(omega, OrbitType::Product)?;
    let types = type_projectors(omega)?;
    let ops = InsertionOperators::new(&r.structure);
    let mut discrepancies = Vec::new();

    let mut block_map = Matrix::zeros(4, 4);
    for label in TypeLabel::ALL {
        for (k, op) in ops.by_count.iter().enumerate() {
            let mut scalar: Option<Scalar> = None;
            for (_, form) in types.component(label) {
                let x = form.to_coords();
                let t = proportionality(&op.apply(&x), &x).ok_or_else(|| {
                    Error::InternalInvariant(format!("insertion operator {k} is not scalar on {label}"))
                })?;
                if scalar.as_ref().is_some_and(|s| *s != t) {
                    return Err(Error::InternalInvariant(format!(
                        "insertion operator {k} has two eigenvalues on {label}"
                    )));
                }
                scalar = Some(t);
            }
            block_map.set(label.index(), k, scalar.expect("nonempty component"));
        }
    }

    let mut regenerated = Vec::with_capacity(16);
    for bits in 0..16u8 {
        let sigma: [i8; 4] = [0, 1, 2, 3].map(|i| if bits & (1 << (3 - i)) == 0 { 1 } else { -1 });
        let rhs: Vec<Scalar> = sigma.iter().map(|&s| Scalar::from_int(s as i64)).collect();
        let q = block_map.solve_unique(&rhs)?;
        regenerated.push((Quadruple::from_slice(&q), sigma));
    }

    let listed = listed_product_correspondence();
    let listed_set: BTreeSet<Quadruple> = listed.iter().map(|(q, _)| q.clone()).collect();
    let regen_set: BTreeSet<Quadruple> = regenerated.iter().map(|(q, _)| q.clone()).collect();
    let regenerated_matches_listed = listed_set == regen_set;
    for q in regen_set.difference(&listed_set) {
        discrepancies.push(format!("regenerated {q} is not listed"));
    }
    for q in listed_set.difference(&regen_set) {
        discrepancies.push(format!("listed {q} is not regenerated"));
    }

    let identity = Matrix::identity(20);
    let mut rows = Vec::with_capacity(listed.len());
    for (q, expected) in listed {
        let p = ops.combine(&q).matrix;
        let squares_to_identity = p.mul(&p) == identity;
        let plus = p.sub(&identity).kernel();
        let row = InvolutionRow {
            squares_to_identity,
            plus_dim: plus.dim(),
            composition: composition(&plus, &types),
            expected,
            quadruple: q,
        };
        if !row.squares_to_identity {
            discrepancies.push(format!("{} does not square to the identity", row.quadruple));
        } else if !row.matches() {
            discrepancies.push(format!("{} has a different +1-eigenspace", row.quadruple));
        }
        rows.push(row);
    }

    Ok(InvolutionTable {
        block_map,
        regenerated,
        rows,
        regenerated_matches_listed,
        discrepancies,
    })
}
