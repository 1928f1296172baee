//! Complex points: the operators `𝒥(a,b,c,d)` built from `J`.

use super::{complex_candidates, InsertionOperators, OperatorMatrix, Quadruple};
use crate::classify::require_orbit_structure;
use crate::exterior::KForm;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::{OrbitType, Result};

pub fn script_j_matrix(omega: &KForm, q: &Quadruple) -> Result<OperatorMatrix> {
    let r = require_orbit_structure(omega, OrbitType::Complex)?;
    Ok(InsertionOperators::new(&r.structure).combine(q))
}

#[derive(Clone, Debug)]
pub struct ComplexTable {
    /// Every scanned sign choice with its verdict on `𝒥² = -I`.
    pub candidates: Vec<(Quadruple, bool)>,
    pub passing: Vec<Quadruple>,
    /// `(½,0,½,0)` and `(-½,0,-½,0)` both pass.
    pub linked_signs_pass: bool,
    /// `(½,0,-½,0)` or `(-½,0,½,0)` passes.
    pub opposite_signs_pass: bool,
}

pub fn complex_table(omega: &KForm) -> Result<ComplexTable> {
    let r = require_orbit_structure(omega, OrbitType::Complex)?;
    let ops = InsertionOperators::new(&r.structure);
    let minus_identity = Matrix::identity(20).scale(&Scalar::from_int(-1));
    let candidates: Vec<(Quadruple, bool)> = complex_candidates()
        .into_iter()
        .map(|q| {
            let pass = ops.combine(&q).square() == minus_identity;
            (q, pass)
        })
        .collect();
    let passing: Vec<Quadruple> = candidates.iter().filter(|(_, p)| *p).map(|(q, _)| q.clone()).collect();
    let half = |q: &Quadruple| !q.c.is_zero();
    let linked = |q: &Quadruple| q.a == q.c;
    let linked_signs_pass = candidates
        .iter()
        .filter(|(q, _)| half(q) && linked(q))
        .all(|(_, p)| *p);
    let opposite_signs_pass = candidates
        .iter()
        .any(|(q, p)| half(q) && !linked(q) && *p);
    Ok(ComplexTable {
        candidates,
        passing,
        linked_signs_pass,
        opposite_signs_pass,
    })
}
