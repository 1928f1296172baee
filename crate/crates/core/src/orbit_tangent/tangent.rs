//! Tangent points: the filtration `D₁ ⊂ D₂ ⊂ D₃ = T_ζU₀`, the nilpotent
//! operator `𝒩 = D_F` and the endomorphisms `k_Ω`.
//!
//! `D₃` is coordinatised by the 20 lexicographic coordinates with one pivot
//! dropped: the single condition `ℓ(Ω) = Ω(v₁,v₂,v₃) = 0` on a basis of `V₀`
//! determines the pivot coefficient from the other nineteen.

use super::product::TypeLabel;
use super::{type_projectors, OperatorMatrix};
use crate::classify::require_orbit_structure;
use crate::exterior::{KForm, MultiIndex};
use crate::linalg::{LinMap, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::{Error, OrbitType, Result};

#[derive(Clone, Debug)]
pub struct TangentSpaces {
    pub f: LinMap,
    pub v0: Subspace,
    pub complement: Vec<Vec<Scalar>>,
    /// In the 20 lexicographic coordinates of `Λ³`.
    pub d1: Subspace,
    pub d2: Subspace,
    pub d3: Subspace,
    pub pivot: usize,
    ell: Vec<Scalar>,
}

impl TangentSpaces {
    pub fn to_d3_coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        x.iter()
            .enumerate()
            .filter(|(i, _)| *i != self.pivot)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn from_d3_coords(&self, y: &[Scalar]) -> Vec<Scalar> {
        let mut x = Vec::with_capacity(20);
        let mut rest = y.iter();
        for i in 0..20 {
            x.push(if i == self.pivot {
                Scalar::zero()
            } else {
                rest.next().expect("19 coordinates").clone()
            });
        }
        let s: Scalar = x.iter().zip(&self.ell).map(|(a, l)| a * l).sum();
        x[self.pivot] = -(&s / &self.ell[self.pivot]);
        x
    }

    pub fn in_d3(&self, x: &[Scalar]) -> bool {
        x.iter().zip(&self.ell).map(|(a, l)| a * l).sum::<Scalar>().is_zero()
    }

    /// A subspace of `D₃` in the 19 tangent coordinates.
    pub fn restrict(&self, s: &Subspace) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = s.basis().iter().map(|v| self.to_d3_coords(v)).collect();
        Subspace::span(19, &vectors)
    }

    pub fn d3_labels(&self) -> Vec<String> {
        let all = MultiIndex::all(3);
        let p = all[self.pivot];
        (0..20)
            .filter(|&i| i != self.pivot)
            .map(|i| {
                let r = &self.ell[i] / &self.ell[self.pivot];
                if r.is_zero() {
                    format!("{:?}", all[i])
                } else {
                    format!("{:?} - ({})·{:?}", all[i], r, p)
                }
            })
            .collect()
    }
}

fn vanishing_conditions(adapted: &[Vec<Scalar>], min_in_v0: usize) -> Matrix {
    let basis = MultiIndex::all(3);
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .filter(|t| t.slots().filter(|&s| s < 3).count() >= min_in_v0)
        .map(|t| {
            let args: Vec<&[Scalar]> = t.slots().map(|s| adapted[s].as_slice()).collect();
            basis.iter().map(|&m| KForm::basis(m).evaluate(&args)).collect()
        })
        .collect();
    Matrix::from_rows(&rows)
}

pub fn tangent_space_basis(omega: &KForm) -> Result<TangentSpaces> {
    let r = require_orbit_structure(omega, OrbitType::Tangent)?;
    let v0 = r.structure.image();
    let complement = v0.complement_from_standard();
    let mut adapted = v0.basis().to_vec();
    adapted.extend(complement.iter().cloned());
    let d1 = vanishing_conditions(&adapted, 1).kernel();
    let d2 = vanishing_conditions(&adapted, 2).kernel();
    let cond3 = vanishing_conditions(&adapted, 3);
    let d3 = cond3.kernel();
    let ell = cond3.row(0);
    let pivot = ell
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::InternalInvariant("V₀ carries no volume".into()))?;
    Ok(TangentSpaces {
        f: r.structure,
        v0,
        complement,
        d1,
        d2,
        d3,
        pivot,
        ell,
    })
}

fn n_matrix(spaces: &TangentSpaces) -> Result<Matrix> {
    let mut cols = Vec::with_capacity(19);
    for k in 0..19 {
        let mut e = vec![Scalar::zero(); 19];
        e[k] = Scalar::one();
        let form = KForm::from_coords(3, &spaces.from_d3_coords(&e));
        let image = form.derivation(&spaces.f).to_coords();
        if !spaces.in_d3(&image) {
            return Err(Error::InternalInvariant("D_F leaves the tangent space".into()));
        }
        cols.push(spaces.to_d3_coords(&image));
    }
    Ok(Matrix::from_columns(&cols, 19))
}

pub fn n_operator(omega: &KForm) -> Result<OperatorMatrix> {
    let spaces = tangent_space_basis(omega)?;
    Ok(OperatorMatrix {
        matrix: n_matrix(&spaces)?,
        basis_labels: spaces.d3_labels(),
    })
}

/// `k_Ω = κ_ζ⁻¹ ∘ κ_Ω` on `V₀`, as a 3×3 matrix in the echelon basis of `V₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEndo {
    pub v0: Subspace,
    pub matrix: Matrix,
    pub trace: Scalar,
}

fn kappa0(omega: &KForm, v0: &Subspace) -> Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = v0
        .basis()
        .iter()
        .map(|u| omega.interior(u).map(|f| f.to_coords()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(&cols, 15))
}

fn k_endo_in(spaces: &TangentSpaces, k0: &Matrix, big_omega: &KForm) -> Result<KEndo> {
    if big_omega.grade() != 3 || !spaces.d2.contains(&big_omega.to_coords()) {
        return Err(Error::OutsideD2);
    }
    let mut cols = Vec::with_capacity(3);
    for v in spaces.v0.basis() {
        let target = big_omega.interior(v)?.to_coords();
        let coef = k0
            .solve_unique(&target)
            .map_err(|_| Error::InternalInvariant("ι_vΩ is outside the image of κ₀".into()))?;
        cols.push(coef);
    }
    let matrix = Matrix::from_columns(&cols, 3);
    Ok(KEndo {
        v0: spaces.v0.clone(),
        trace: matrix.trace(),
        matrix,
    })
}

pub fn k_endo(omega: &KForm, big_omega: &KForm) -> Result<KEndo> {
    let spaces = tangent_space_basis(omega)?;
    let k0 = kappa0(omega, &spaces.v0)?;
    k_endo_in(&spaces, &k0, big_omega)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub dim_d1: usize,
    pub dim_d2: usize,
    pub dim_d3: usize,
    pub dim_im_n: usize,
    pub dim_im_n2: usize,
    pub dim_ker_n: usize,
    pub dim_ker_n2: usize,
    /// `D₁ ⊂ D₂ ⊂ D₃`.
    pub d_chain: bool,
    /// `im 𝒩² ⊂ ker 𝒩 ⊂ im 𝒩 ⊂ ker 𝒩²`.
    pub n_chain: bool,
    pub im_n_is_d2: bool,
    pub im_n2_is_d1: bool,
    pub n_cubed_zero: bool,
    pub omega_in_d2: bool,
    /// `ker 𝒩² = {Ω ∈ D₃ : ω∧Ω = 0}`.
    pub ker_n2_is_wedge_annihilator: bool,
    /// `ker 𝒩 = {Ω ∈ D₂ : Tr k_Ω = 0}` and `𝒩Ω = ⅓·Tr(k_Ω)·𝒩ω` on a basis of `D₂`.
    pub trace_criterion: bool,
    pub k_omega_identity: bool,
    pub k_vanishes_on_d1: bool,
}

impl FiltrationReport {
    pub const EXPECTED_DIMS: [usize; 5] = [1, 9, 10, 18, 19];

    /// `(D₁, ker 𝒩, im 𝒩, ker 𝒩², D₃)`.
    pub fn profile(&self) -> [usize; 5] {
        [self.dim_d1, self.dim_ker_n, self.dim_im_n, self.dim_ker_n2, self.dim_d3]
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.profile() != Self::EXPECTED_DIMS || self.dim_d2 != 10 || self.dim_im_n2 != 1 {
            out.push(format!("dimension profile {:?}", self.profile()));
        }
        let checks = [
            (self.d_chain, "D1 ⊂ D2 ⊂ D3"),
            (self.n_chain, "im N² ⊂ ker N ⊂ im N ⊂ ker N²"),
            (self.im_n_is_d2, "im N = D2"),
            (self.im_n2_is_d1, "im N² = D1"),
            (self.n_cubed_zero, "N³ = 0"),
            (self.omega_in_d2, "ω ∈ D2"),
            (self.ker_n2_is_wedge_annihilator, "ker N² = {Ω : ω∧Ω = 0}"),
            (self.trace_criterion, "trace criterion"),
            (self.k_omega_identity, "k(ω) = I"),
            (self.k_vanishes_on_d1, "k = 0 on D1"),
        ];
        out.extend(checks.iter().filter(|(ok, _)| !ok).map(|(_, name)| format!("{name} fails")));
        out
    }
}

fn wedge_annihilator(omega: &KForm, spaces: &TangentSpaces) -> Result<Subspace> {
    let row: Vec<Scalar> = MultiIndex::all(3)
        .into_iter()
        .map(|m| omega.wedge(&KForm::basis(m)).map(|w| w.coeff(MultiIndex::all(6)[0])))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(&[spaces.ell.clone(), row]).kernel())
}

pub fn n_filtration(omega: &KForm) -> Result<FiltrationReport> {
    let spaces = tangent_space_basis(omega)?;
    let n = n_matrix(&spaces)?;
    let n2 = n.mul(&n);
    let n3 = n2.mul(&n);
    let (im_n, im_n2) = (n.image(), n2.image());
    let (ker_n, ker_n2) = (n.kernel(), n2.kernel());
    let d1 = spaces.restrict(&spaces.d1);
    let d2 = spaces.restrict(&spaces.d2);

    let k0 = kappa0(omega, &spaces.v0)?;
    let n_omega = omega.derivation(&spaces.f);
    let third = Scalar::ratio(1, 3);
    let mut trace_row = Vec::with_capacity(spaces.d2.dim());
    let mut identity_holds = true;
    for v in spaces.d2.basis() {
        let form = KForm::from_coords(3, v);
        let k = k_endo_in(&spaces, &k0, &form)?;
        let lhs = form.derivation(&spaces.f);
        let rhs = n_omega.scale(&(&third * &k.trace));
        identity_holds &= lhs == rhs && (lhs.is_zero() == k.trace.is_zero());
        trace_row.push(k.trace);
    }
    // Trace-zero part of D₂, mapped into tangent coordinates.
    let trace_kernel = Matrix::from_rows(&[trace_row]).kernel();
    let trace_zero: Vec<Vec<Scalar>> = trace_kernel
        .basis()
        .iter()
        .map(|c| {
            let x: Vec<Scalar> = (0..20)
                .map(|i| c.iter().zip(spaces.d2.basis()).map(|(a, b)| a * &b[i]).sum())
                .collect();
            spaces.to_d3_coords(&x)
        })
        .collect();
    let trace_criterion = identity_holds && Subspace::span(19, &trace_zero) == ker_n;

    let k_omega = k_endo_in(&spaces, &k0, omega)?;
    let k_omega_identity = k_omega.matrix.is_identity() && k_omega.trace == Scalar::from_int(3);
    let mut k_vanishes_on_d1 = true;
    for v in spaces.d1.basis() {
        k_vanishes_on_d1 &= k_endo_in(&spaces, &k0, &KForm::from_coords(3, v))?.matrix.is_zero();
    }

    Ok(FiltrationReport {
        dim_d1: spaces.d1.dim(),
        dim_d2: spaces.d2.dim(),
        dim_d3: spaces.d3.dim(),
        dim_im_n: im_n.dim(),
        dim_im_n2: im_n2.dim(),
        dim_ker_n: ker_n.dim(),
        dim_ker_n2: ker_n2.dim(),
        d_chain: spaces.d1.is_subspace_of(&spaces.d2) && spaces.d2.is_subspace_of(&spaces.d3),
        n_chain: im_n2.is_subspace_of(&ker_n) && ker_n.is_subspace_of(&im_n) && im_n.is_subspace_of(&ker_n2),
        im_n_is_d2: im_n == d2,
        im_n2_is_d1: im_n2 == d1,
        n_cubed_zero: n3.is_zero(),
        omega_in_d2: spaces.d2.contains(&omega.to_coords()),
        ker_n2_is_wedge_annihilator: spaces.restrict(&wedge_annihilator(omega, &spaces)?) == ker_n2,
        trace_criterion,
        k_omega_identity,
        k_vanishes_on_d1,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WitnessKind {
    /// A `(2,1)` and a `(1,2)` form at a product point.
    D21xD12,
    /// Two forms in `ker 𝒩²` at a tangent point.
    KerN2,
}

fn first_nonzero_pair(candidates: &[KForm]) -> Result<Option<(KForm, KForm, KForm)>> {
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            let w = a.wedge(b)?;
            if !w.is_zero() {
                return Ok(Some((a.clone(), b.clone(), w)));
            }
        }
    }
    Ok(None)
}

/// A pair `(Ω, Ω̃)` in the named subspaces with `Ω∧Ω̃ ≠ 0`.
pub fn witness_nonintegrable(omega: &KForm, which: WitnessKind) -> Result<(KForm, KForm, KForm)> {
    match which {
        WitnessKind::D21xD12 => {
            let types = type_projectors(omega)?;
            for (_, a) in types.component(TypeLabel::D21) {
                for (_, b) in types.component(TypeLabel::D12) {
                    let w = a.wedge(b)?;
                    if !w.is_zero() {
                        return Ok((a.clone(), b.clone(), w));
                    }
                }
            }
            Err(Error::InternalInvariant("no (2,1)×(1,2) witness".into()))
        }
        WitnessKind::KerN2 => {
            let spaces = tangent_space_basis(omega)?;
            let kernel = wedge_annihilator(omega, &spaces)?;
            let in_ker_n2 = |f: &KForm| {
                let n2 = f.derivation(&spaces.f).derivation(&spaces.f);
                spaces.in_d3(&f.to_coords()) && n2.is_zero()
            };
            let monomials: Vec<KForm> = MultiIndex::all(3)
                .into_iter()
                .map(KForm::basis)
                .filter(|f| kernel.contains(&f.to_coords()))
                .collect();
            let found = match first_nonzero_pair(&monomials)? {
                Some(w) => Some(w),
                None => {
                    let basis: Vec<KForm> = kernel.basis().iter().map(|v| KForm::from_coords(3, v)).collect();
                    first_nonzero_pair(&basis)?
                }
            };
            let (a, b, w) = found.ok_or_else(|| Error::InternalInvariant("no ker N² witness".into()))?;
            if !(in_ker_n2(&a) && in_ker_n2(&b)) {
                return Err(Error::InternalInvariant(
                    "wedge annihilator disagrees with ker N²".into(),
                ));
            }
            Ok((a, b, w))
        }
    }
}
