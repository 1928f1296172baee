//! Seeded random points of an orbit, `g^* ω_orbit` for unimodular integer `g`.
//!
//! Each item draws from its own ChaCha stream keyed by `(seed, index)`, so a
//! batch can be generated in any order or in parallel with identical output.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::KForm;
use crate::linalg::LinMap;
use crate::scalar::Scalar;
use crate::{representative, OrbitType, DIM};

pub const SHEAR_COUNT: usize = 12;

fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A diagonal `±1` map times 12 elementary shears `I + c·E_{ij}`,
/// `c ∈ {±1, ±2}`. Determinant `±1`, integer entries both ways.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> LinMap {
    let signs: Vec<Scalar> = (0..DIM)
        .map(|_| Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    let mut g = LinMap::diagonal(&signs);
    for _ in 0..SHEAR_COUNT {
        let row = rng.gen_range(0..DIM);
        let col = (row + rng.gen_range(1..DIM)) % DIM;
        let magnitude = rng.gen_range(1..=2);
        let c = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
        g = g.compose(&LinMap::shear(row, col, Scalar::from_int(c)));
    }
    g
}

/// The transform used for item `index` of a batch with the given seed.
pub fn sample_transform(seed: u64, index: u64) -> LinMap {
    random_unimodular(&mut item_rng(seed, index))
}

/// `g_i^* ω_orbit` for `i = 0..count`; `None` for the degenerate tag.
pub fn sample_orbit(orbit: OrbitType, seed: u64, count: usize) -> Option<Vec<KForm>> {
    let rep = representative(orbit)?;
    Some(
        (0..count as u64)
            .map(|i| rep.pullback(&sample_transform(seed, i)))
            .collect(),
    )
}

/// One sampled point together with its transform.
pub fn sample_point(orbit: OrbitType, seed: u64, index: u64) -> Option<(LinMap, KForm)> {
    let rep = representative(orbit)?;
    let g = sample_transform(seed, index);
    let form = rep.pullback(&g);
    Some((g, form))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular() {
        for i in 0..20 {
            let g = sample_transform(3, i);
            assert_eq!(g.determinant().abs(), Scalar::one());
            let inv = g.inverse().unwrap();
            assert!(inv.matrix().entries().all(|x| x.is_rational()
                && x.as_rational().unwrap().is_integer()));
        }
    }

    #[test]
    fn order_independent() {
        let batch = sample_orbit(OrbitType::Tangent, 7, 4).unwrap();
        assert_eq!(batch[3], sample_point(OrbitType::Tangent, 7, 3).unwrap().1);
        assert_eq!(batch, sample_orbit(OrbitType::Tangent, 7, 4).unwrap());
        assert!(sample_orbit(OrbitType::NotMultisymplectic, 7, 1).is_none());
    }
}
