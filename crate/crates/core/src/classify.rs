//! Orbit classification and the canonical structure of a multisymplectic form.
//!
//! For a 3-form `ω` and a volume form `θ` there is a unique endomorphism `Q`
//! with `(ι_v ω) ∧ ω = ι_{Qv} θ`. On multisymplectic forms `Q² = μ·I`, and the
//! sign of `μ` decides the orbit: product for `μ > 0`, complex for `μ < 0`,
//! tangent for `μ = 0`. The normalised structure is `S = Q/√μ`,
//! `J = Q/√(-μ)` or `F = Q` respectively.

use std::cmp::Ordering;

use crate::exterior::{unit, KForm, MultiIndex};
use crate::linalg::{eigenspace, LinMap, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::{Error, Result, DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    Product,
    Complex,
    Tangent,
    NotMultisymplectic,
}

impl OrbitType {
    pub fn tag(self) -> &'static str {
        match self {
            OrbitType::Product => "product",
            OrbitType::Complex => "complex",
            OrbitType::Tangent => "tangent",
            OrbitType::NotMultisymplectic => "none",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "product" => Some(OrbitType::Product),
            "complex" => Some(OrbitType::Complex),
            "tangent" => Some(OrbitType::Tangent),
            "none" => Some(OrbitType::NotMultisymplectic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureResult {
    pub orbit: OrbitType,
    /// `Q² = μ·I`.
    pub mu: Scalar,
    /// `√|μ|`; zero for tangent forms.
    pub lambda: Scalar,
    /// `S`, `J` or `F`.
    pub structure: LinMap,
    pub theta_used: KForm,
    pub sign_convention: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delta2Kind {
    TransversalPair,
    ZeroOnly,
    SingleSubspace,
}

/// Shape of the set of vectors `v` with `(ι_v ω) ∧ (ι_v ω) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta2Description {
    pub kind: Delta2Kind,
    pub spaces: Vec<Subspace>,
}

pub const PRODUCT_SIGN_CONVENTION: &str =
    "S chosen so that ker(S-I) precedes ker(S+I): reduced-echelon pivot columns compared first, then entries";
pub const COMPLEX_SIGN_CONVENTION: &str =
    "J chosen so that its first nonzero entry in row-major order is positive (basis-dependent)";
pub const TANGENT_SCALE_CONVENTION: &str = "F = Q for the volume form used, no rescaling";

fn require_grade(form: &KForm, grade: usize) -> Result<()> {
    if form.grade() != grade {
        return Err(Error::WrongGrade {
            expected: grade,
            found: form.grade(),
        });
    }
    Ok(())
}

/// The 15×6 matrix whose columns are the coordinates of `ι_{e_i} ω`.
pub fn kappa_matrix(omega: &KForm) -> Result<Matrix> {
    require_grade(omega, 3)?;
    let cols: Vec<Vec<Scalar>> = (0..DIM)
        .map(|i| omega.interior_basis(i).map(|f| f.to_coords()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(&cols, 15))
}

pub fn is_multisymplectic(omega: &KForm) -> Result<bool> {
    Ok(kappa_matrix(omega)?.rank() == DIM)
}

/// Vectors annihilating a form: `{x : ι_x a = 0}`.
pub fn form_kernel(a: &KForm) -> Subspace {
    if a.grade() == 0 {
        return Subspace::full(DIM);
    }
    let cols: Vec<Vec<Scalar>> = (0..DIM)
        .map(|i| a.interior_basis(i).expect("grade ≥ 1").to_coords())
        .collect();
    let height = cols[0].len();
    Matrix::from_columns(&cols, height).kernel()
}

/// `(ι_v ω) ∧ (ι_v ω) = 0`, i.e. `ι_v ω` is decomposable.
pub fn in_delta2(omega: &KForm, v: &[Scalar]) -> Result<bool> {
    let a = omega.interior(v)?;
    Ok(a.wedge(&a)?.is_zero())
}

/// The unique `Q` with `(ι_v ω) ∧ ω = ι_{Qv} θ`, found by six exact solves.
pub fn q_endo(omega: &KForm, theta: &KForm) -> Result<LinMap> {
    require_grade(omega, 3)?;
    require_grade(theta, 6)?;
    if theta.is_zero() {
        return Err(Error::ZeroVolume);
    }
    let contraction_cols: Vec<Vec<Scalar>> = (0..DIM)
        .map(|j| theta.interior_basis(j).map(|f| f.to_coords()))
        .collect::<Result<_>>()?;
    let contraction = Matrix::from_columns(&contraction_cols, DIM);
    let mut columns = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let rhs = omega.interior_basis(i)?.wedge(omega)?.to_coords();
        columns.push(contraction.solve_unique(&rhs)?);
    }
    Ok(LinMap::from_columns(&columns))
}

/// `μ` with `Q² = μ·I`.
pub fn mu_invariant(omega: &KForm, theta: &KForm) -> Result<Scalar> {
    if !is_multisymplectic(omega)? {
        return Err(Error::NotMultisymplectic);
    }
    let q = q_endo(omega, theta)?;
    q.square().scalar_multiple_of_identity().ok_or(Error::NotScalar)
}

fn orbit_from_mu(mu: &Scalar) -> OrbitType {
    match mu.signum() {
        1 => OrbitType::Product,
        -1 => OrbitType::Complex,
        _ => OrbitType::Tangent,
    }
}

/// Orbit of `ω`, with `θ = α123456`. Anything that is not a multisymplectic
/// 3-form is reported as [`OrbitType::NotMultisymplectic`].
pub fn orbit_type(omega: &KForm) -> OrbitType {
    match mu_invariant(omega, &KForm::volume()) {
        Ok(mu) => orbit_from_mu(&mu),
        Err(_) => OrbitType::NotMultisymplectic,
    }
}

/// Order on reduced echelon bases: pivot columns first, then entries.
fn echelon_cmp(a: &Subspace, b: &Subspace) -> Ordering {
    let pivots = |s: &Subspace| -> Vec<usize> {
        s.basis()
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    };
    pivots(a)
        .cmp(&pivots(b))
        .then_with(|| a.basis().cmp(b.basis()))
}

pub fn structure_extract(omega: &KForm) -> Result<StructureResult> {
    structure_extract_with_theta(omega, &KForm::volume())
}

pub fn structure_extract_with_theta(omega: &KForm, theta: &KForm) -> Result<StructureResult> {
    let mu = mu_invariant(omega, theta)?;
    let q = q_endo(omega, theta)?;
    let orbit = orbit_from_mu(&mu);
    let mu_q = mu.as_rational().expect("Q has rational entries").clone();
    let (lambda, structure, convention) = match orbit {
        OrbitType::Product => {
            let lambda = Scalar::sqrt_rational(&mu_q).expect("μ > 0");
            let s = q.scale(&lambda.inverse().expect("λ ≠ 0"));
            let plus = eigenspace(&s, &Scalar::one())?;
            let minus = eigenspace(&s, &Scalar::from_int(-1))?;
            if plus.dim() != 3 || minus.dim() != 3 {
                return Err(Error::InternalInvariant(format!(
                    "product structure eigenspaces have dimensions {} and {}",
                    plus.dim(),
                    minus.dim()
                )));
            }
            let s = match echelon_cmp(&plus, &minus) {
                Ordering::Greater => s.neg(),
                _ => s,
            };
            (lambda, s, PRODUCT_SIGN_CONVENTION)
        }
        OrbitType::Complex => {
            let lambda = Scalar::sqrt_rational(&-mu_q).expect("μ < 0");
            let j = q.scale(&lambda.inverse().expect("λ ≠ 0"));
            let first = j
                .matrix()
                .entries()
                .find(|x| !x.is_zero())
                .expect("J is invertible")
                .signum();
            let j = if first < 0 { j.neg() } else { j };
            (lambda, j, COMPLEX_SIGN_CONVENTION)
        }
        OrbitType::Tangent => (Scalar::zero(), q, TANGENT_SCALE_CONVENTION),
        OrbitType::NotMultisymplectic => unreachable!("mu_invariant checked injectivity"),
    };
    let result = StructureResult {
        orbit,
        mu,
        lambda,
        structure,
        theta_used: theta.clone(),
        sign_convention: convention,
    };
    verify_structure(&result)?;
    if !check_compatibility(omega, &result.structure) {
        return Err(Error::InternalInvariant(
            "structure violates the three-slot compatibility identity".into(),
        ));
    }
    Ok(result)
}

/// Checks the defining identities of the extracted structure.
pub fn verify_structure(r: &StructureResult) -> Result<()> {
    let sq = r.structure.square();
    let ok = match r.orbit {
        OrbitType::Product => {
            sq.is_identity()
                && eigenspace(&r.structure, &Scalar::one())?.dim() == 3
                && eigenspace(&r.structure, &Scalar::from_int(-1))?.dim() == 3
        }
        OrbitType::Complex => sq == LinMap::identity().neg(),
        OrbitType::Tangent => is_tangent_structure(&r.structure),
        OrbitType::NotMultisymplectic => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariant(format!(
            "{} structure fails its square identity",
            r.orbit.tag()
        )))
    }
}

/// `F² = 0`, rank 3 and `im F = ker F`.
pub fn is_tangent_structure(f: &LinMap) -> bool {
    f.square().is_zero() && f.rank() == 3 && f.image() == f.kernel()
}

/// `ω(Av₁,v₂,v₃) = ω(v₁,Av₂,v₃) = ω(v₁,v₂,Av₃)` on all ordered basis triples.
pub fn check_compatibility(omega: &KForm, a: &LinMap) -> bool {
    if omega.grade() != 3 {
        return false;
    }
    let images: Vec<Vec<Scalar>> = (0..DIM).map(|i| a.column(i)).collect();
    let basis: Vec<Vec<Scalar>> = (0..DIM).map(unit).collect();
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let first = omega.evaluate(&[&images[i], &basis[j], &basis[k]]);
                let second = omega.evaluate(&[&basis[i], &images[j], &basis[k]]);
                if first != second {
                    return false;
                }
                let third = omega.evaluate(&[&basis[i], &basis[j], &images[k]]);
                if first != third {
                    return false;
                }
            }
        }
    }
    true
}

pub fn delta2(omega: &KForm) -> Result<Delta2Description> {
    let r = structure_extract(omega)?;
    let desc = match r.orbit {
        OrbitType::Product => Delta2Description {
            kind: Delta2Kind::TransversalPair,
            spaces: vec![
                eigenspace(&r.structure, &Scalar::one())?,
                eigenspace(&r.structure, &Scalar::from_int(-1))?,
            ],
        },
        OrbitType::Complex => Delta2Description {
            kind: Delta2Kind::ZeroOnly,
            spaces: vec![],
        },
        OrbitType::Tangent => Delta2Description {
            kind: Delta2Kind::SingleSubspace,
            spaces: vec![r.structure.kernel()],
        },
        OrbitType::NotMultisymplectic => return Err(Error::NotMultisymplectic),
    };
    for space in &desc.spaces {
        for v in space.basis() {
            if !in_delta2(omega, v)? {
                return Err(Error::InternalInvariant(
                    "reported Δ² vector has an indecomposable contraction".into(),
                ));
            }
        }
    }
    if desc.kind == Delta2Kind::TransversalPair
        && desc.spaces[0].intersection(&desc.spaces[1]).dim() != 0
    {
        return Err(Error::InternalInvariant("Δ² subspaces are not transversal".into()));
    }
    Ok(desc)
}

fn require_orbit(omega: &KForm, expected: OrbitType) -> Result<StructureResult> {
    let r = structure_extract(omega)?;
    if r.orbit != expected {
        return Err(Error::WrongOrbit {
            expected,
            found: r.orbit,
        });
    }
    Ok(r)
}

pub(crate) fn require_orbit_structure(omega: &KForm, expected: OrbitType) -> Result<StructureResult> {
    if omega.grade() == 3 && orbit_type(omega) == OrbitType::NotMultisymplectic {
        return Err(Error::WrongOrbit {
            expected,
            found: OrbitType::NotMultisymplectic,
        });
    }
    require_orbit(omega, expected)
}

/// Whether `ι_v ι_{v'} ω = 0` on `R`; a positive answer is cross-checked
/// against `R = im F`.
pub fn isotropic_space_check(omega: &KForm, r: &Subspace) -> Result<bool> {
    let s = require_orbit_structure(omega, OrbitType::Tangent)?;
    if r.ambient() != DIM || r.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: r.dim(),
        });
    }
    for v in r.basis() {
        let iv = omega.interior(v)?;
        for w in r.basis() {
            if !iv.interior(w)?.is_zero() {
                return Ok(false);
            }
        }
    }
    if *r != s.structure.image() {
        return Err(Error::InternalInvariant(
            "isotropic 3-space differs from im F".into(),
        ));
    }
    Ok(true)
}

/// The chain `V → V/V₀ → Λ²(V/V₀)* → V₀` built from a 3-form `η` on the
/// quotient (given as a form on `V` annihilated by `V₀`). Returns `(C, a)`
/// with `C = a·F`.
pub fn c_construction(omega: &KForm, eta: &KForm) -> Result<(LinMap, Scalar)> {
    let s = require_orbit_structure(omega, OrbitType::Tangent)?;
    require_grade(eta, 3)?;
    let v0 = s.structure.image();
    if eta.is_zero() {
        return Err(Error::NotBasic);
    }
    for u in v0.basis() {
        if !eta.interior(u)?.is_zero() {
            return Err(Error::NotBasic);
        }
    }
    let kappa0_cols: Vec<Vec<Scalar>> = v0
        .basis()
        .iter()
        .map(|u| omega.interior(u).map(|f| f.to_coords()))
        .collect::<Result<_>>()?;
    let kappa0 = Matrix::from_columns(&kappa0_cols, 15);
    let mut columns = Vec::with_capacity(DIM);
    for j in 0..DIM {
        let target = eta.interior_basis(j)?.to_coords();
        let coef = kappa0.solve_unique(&target).map_err(|_| {
            Error::InternalInvariant("ι_v η is not in the image of κ₀".into())
        })?;
        let image: Vec<Scalar> = (0..DIM)
            .map(|i| (0..3).map(|a| &coef[a] * &v0.basis()[a][i]).sum())
            .collect();
        columns.push(image);
    }
    let c = LinMap::from_columns(&columns);
    let a = c
        .ratio_to(&s.structure)
        .filter(|a| !a.is_zero())
        .ok_or_else(|| Error::InternalInvariant("C is not a multiple of F".into()))?;
    Ok((c, a))
}

/// Monomial indices of the grade-3 basis, re-exported for reporting.
pub fn grade3_labels() -> Vec<String> {
    MultiIndex::all(3)
        .into_iter()
        .map(|m| m.indices().iter().map(|i| i.to_string()).collect())
        .collect()
}
