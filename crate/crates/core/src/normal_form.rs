//! Explicit change-of-basis certificates `g` with `g^* ω_orbit = ω`.
//!
//! Each construction finds an adapted basis `B` (as columns) with
//! `B^* ω = ω_orbit`; the certificate stores `g = B⁻¹`.

use crate::classify::{structure_extract, StructureResult};
use crate::exterior::KForm;
use crate::linalg::{eigenspace, LinMap, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::{representative, Error, OrbitType, Result, DIM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormCertificate {
    pub orbit: OrbitType,
    pub g: LinMap,
    pub canonical: KForm,
    pub residual_zero: bool,
}

pub fn verify_certificate(omega: &KForm, cert: &NormalFormCertificate) -> bool {
    if cert.g.determinant().is_zero() || cert.canonical.grade() != omega.grade() {
        return false;
    }
    cert.canonical.pullback(&cert.g) == *omega
}

pub fn normal_form(omega: &KForm) -> Result<NormalFormCertificate> {
    let r = structure_extract(omega)?;
    let basis = match r.orbit {
        OrbitType::Product => product_basis(omega, &r)?,
        OrbitType::Complex => complex_basis(omega, &r)?,
        OrbitType::Tangent => tangent_basis(omega, &r)?,
        OrbitType::NotMultisymplectic => return Err(Error::NotMultisymplectic),
    };
    let b = LinMap::from_columns(&basis);
    let g = b
        .inverse()
        .ok_or_else(|| Error::InternalInvariant("adapted basis is singular".into()))?;
    let canonical = representative(r.orbit).expect("multisymplectic orbit");
    let mut cert = NormalFormCertificate {
        orbit: r.orbit,
        g,
        canonical,
        residual_zero: false,
    };
    cert.residual_zero = verify_certificate(omega, &cert);
    if !cert.residual_zero {
        return Err(Error::InternalInvariant(format!(
            "{} normal form leaves a nonzero residual",
            r.orbit.tag()
        )));
    }
    Ok(cert)
}

fn scaled(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

fn combine(a: &Scalar, v: &[Scalar], b: &Scalar, w: &[Scalar]) -> Vec<Scalar> {
    v.iter().zip(w).map(|(x, y)| a * x + b * y).collect()
}

fn eval3(omega: &KForm, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Scalar {
    omega.evaluate(&[a, b, c])
}

fn normalised_triple(omega: &KForm, space: &Subspace) -> Result<Vec<Vec<Scalar>>> {
    let mut v = space.basis().to_vec();
    let vol = eval3(omega, &v[0], &v[1], &v[2]);
    let inv = vol
        .inverse()
        .ok_or_else(|| Error::InternalInvariant("eigenspace carries no volume".into()))?;
    v[2] = scaled(&v[2], &inv);
    Ok(v)
}

fn product_basis(omega: &KForm, r: &StructureResult) -> Result<Vec<Vec<Scalar>>> {
    let plus = eigenspace(&r.structure, &Scalar::one())?;
    let minus = eigenspace(&r.structure, &Scalar::from_int(-1))?;
    let mut basis = normalised_triple(omega, &plus)?;
    basis.extend(normalised_triple(omega, &minus)?);
    Ok(basis)
}

/// Uses the complex volume `Ψ = ω − i·ω(J·,·,·)`, with `i` acting as `J`.
/// In a complex basis `f₁,f₂,f₃` with `Ψ(f₁,f₂,f₃) = 1`, the real basis
/// `(f₁, f₂, f₃, Jf₃, Jf₂, −Jf₁)` carries `ω` to `ω_−`.
fn complex_basis(omega: &KForm, r: &StructureResult) -> Result<Vec<Vec<Scalar>>> {
    let j = &r.structure;
    let mut f: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Subspace::zero(DIM);
    for i in 0..DIM {
        if f.len() == 3 {
            break;
        }
        let e = crate::exterior::unit(i);
        if !span.contains(&e) {
            let je = j.apply(&e);
            span = span.sum(&Subspace::span(DIM, &[e.clone(), je]));
            f.push(e);
        }
    }
    if f.len() != 3 {
        return Err(Error::InternalInvariant("no complex basis found".into()));
    }
    let jf0 = j.apply(&f[0]);
    let p = eval3(omega, &f[0], &f[1], &f[2]);
    let q = -eval3(omega, &jf0, &f[1], &f[2]);
    let n = &p * &p + &q * &q;
    let n_inv = n
        .inverse()
        .ok_or_else(|| Error::InternalInvariant("complex volume vanishes".into()))?;
    let a = &p * &n_inv;
    let b = -(&q * &n_inv);
    let jf2 = j.apply(&f[2]);
    f[2] = combine(&a, &f[2], &b, &jf2);
    let jf = |v: &[Scalar]| j.apply(v);
    let (f1, f2, f3) = (f[0].clone(), f[1].clone(), f[2].clone());
    let minus_jf1: Vec<Scalar> = jf(&f1).iter().map(|x| -x).collect();
    Ok(vec![f1.clone(), f2.clone(), f3.clone(), jf(&f3), jf(&f2), minus_jf1])
}

/// Complement `w₁,w₂,w₃` of `V₀ = im F`, dual `V₀` basis through `κ₀⁻¹`, and
/// the residual `b·(w-volume)` removed by the shear `w₁ ← w₁ − b·u₃`.
fn tangent_basis(omega: &KForm, r: &StructureResult) -> Result<Vec<Vec<Scalar>>> {
    let v0 = r.structure.image();
    let w = v0.complement_from_standard();
    if w.len() != 3 {
        return Err(Error::InternalInvariant("V0 is not 3-dimensional".into()));
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    // Row (a,b), column k: ω(v_k, w_a, w_b).
    let m = Matrix::from_fn(3, 3, |row, k| {
        let (a, b) = pairs[row];
        eval3(omega, &v0.basis()[k], &w[a], &w[b])
    });
    let mut u = Vec::with_capacity(3);
    for target in 0..3 {
        let rhs: Vec<Scalar> = (0..3)
            .map(|i| if i == target { Scalar::one() } else { Scalar::zero() })
            .collect();
        let coef = m
            .solve_unique(&rhs)
            .map_err(|_| Error::InternalInvariant("κ₀ is not invertible".into()))?;
        let vec: Vec<Scalar> = (0..DIM)
            .map(|i| (0..3).map(|k| &coef[k] * &v0.basis()[k][i]).sum())
            .collect();
        u.push(vec);
    }
    let b = eval3(omega, &w[0], &w[1], &w[2]);
    let w1 = combine(&Scalar::one(), &w[0], &-b, &u[2]);
    Ok(vec![
        u[0].clone(),
        u[1].clone(),
        u[2].clone(),
        w1,
        w[1].clone(),
        w[2].clone(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{omega_minus, omega_plus, omega_zero};

    #[test]
    fn representatives_give_identity() {
        for w in [omega_plus(), omega_minus(), omega_zero()] {
            let cert = normal_form(&w).unwrap();
            assert!(cert.residual_zero);
            assert!(cert.g.is_identity(), "{w}");
        }
    }

    #[test]
    fn tangent_residual_volume_single_shear() {
        let w = omega_zero().add(&KForm::monomial(&[4, 5, 6]).unwrap().scale(&Scalar::from_int(5)));
        let cert = normal_form(&w).unwrap();
        assert_eq!(cert.orbit, OrbitType::Tangent);
        assert!(cert.residual_zero);
        assert_eq!(cert.g, LinMap::shear(2, 3, Scalar::from_int(5)));
    }

    #[test]
    fn wrong_canonical_fails() {
        let cert = NormalFormCertificate {
            orbit: OrbitType::Product,
            g: LinMap::identity(),
            canonical: omega_zero(),
            residual_zero: false,
        };
        assert!(!verify_certificate(&omega_plus(), &cert));
        let singular = NormalFormCertificate {
            g: LinMap::zero(),
            canonical: KForm::zero(3),
            ..cert
        };
        assert!(!verify_certificate(&KForm::zero(3), &singular));
    }

    #[test]
    fn degenerate_rejected() {
        let w = KForm::monomial(&[1, 2, 3]).unwrap();
        assert!(matches!(normal_form(&w), Err(Error::NotMultisymplectic)));
    }
}
