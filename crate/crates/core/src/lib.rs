//! Exact classification of 3-forms on a six-dimensional real vector space.
//!
//! A 3-form `ω` is multisymplectic when `v ↦ ι_v ω` is injective. Such forms
//! fall into three `GL(6)` orbits, represented by [`omega_plus`],
//! [`omega_minus`] and [`omega_zero`]. Every orbit carries a canonical
//! endomorphism: a product structure, a complex structure or a tangent
//! structure. This crate computes those structures, explicit normal-form
//! certificates, and the operators on the orbit tangent spaces, all in exact
//! arithmetic over `ℚ` or a quadratic extension `ℚ(√d)`.

pub mod classify;
pub mod exterior;
pub mod linalg;
pub mod normal_form;
pub mod orbit_tangent;
pub mod sampling;
pub mod scalar;

pub use classify::{OrbitType, StructureResult};
pub use exterior::{KForm, MultiIndex};
pub use linalg::{LinMap, Matrix, Subspace};
pub use scalar::Scalar;

/// Dimension of the underlying vector space.
pub const DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {0} outside 1..=6")]
    IndexOutOfRange(usize),
    #[error("indices {0:?} are not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("grade {0} exceeds 6")]
    GradeOverflow(usize),
    #[error("expected a form of grade {expected}, found grade {found}")]
    WrongGrade { expected: usize, found: usize },
    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("operands live in different quadratic extensions")]
    MixedExtension,
    #[error("the volume form is zero")]
    ZeroVolume,
    #[error("form is not multisymplectic")]
    NotMultisymplectic,
    #[error("operation requires a {expected:?} form, found {found:?}")]
    WrongOrbit { expected: OrbitType, found: OrbitType },
    #[error("form is zero or does not descend to the quotient by V0")]
    NotBasic,
    #[error("form does not lie in D2")]
    OutsideD2,
    #[error("Q² is not a scalar multiple of the identity")]
    NotScalar,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn rep(terms: &[(i64, [usize; 3])]) -> KForm {
    KForm::from_terms(3, terms.iter().map(|(c, ix)| (*c, ix.to_vec()))).expect("valid representative")
}

/// `α123 + α456`, representative of the product orbit.
pub fn omega_plus() -> KForm {
    rep(&[(1, [1, 2, 3]), (1, [4, 5, 6])])
}

/// `α123 + α145 + α246 − α356`, representative of the complex orbit.
pub fn omega_minus() -> KForm {
    rep(&[(1, [1, 2, 3]), (1, [1, 4, 5]), (1, [2, 4, 6]), (-1, [3, 5, 6])])
}

/// `α145 + α246 + α356`, representative of the tangent orbit.
pub fn omega_zero() -> KForm {
    rep(&[(1, [1, 4, 5]), (1, [2, 4, 6]), (1, [3, 5, 6])])
}

/// Canonical representative of a multisymplectic orbit.
pub fn representative(orbit: OrbitType) -> Option<KForm> {
    match orbit {
        OrbitType::Product => Some(omega_plus()),
        OrbitType::Complex => Some(omega_minus()),
        OrbitType::Tangent => Some(omega_zero()),
        OrbitType::NotMultisymplectic => None,
    }
}
