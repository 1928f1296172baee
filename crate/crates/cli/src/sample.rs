//! Batch sampling over a thread pool. Each item depends only on
//! `(seed, index)`, and results are collected in index order.

use msforms::sampling::sample_point;
use msforms::{KForm, OrbitType};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::format::write_form;

/// `count` pullbacks of the orbit representative, or `None` for
/// [`OrbitType::NotMultisymplectic`].
pub fn sample_orbit(orbit: OrbitType, seed: u64, count: usize, pool: &ThreadPool) -> Option<Vec<KForm>> {
    msforms::representative(orbit)?;
    let forms = pool.install(|| {
        (0..count as u64)
            .into_par_iter()
            .map(|i| sample_point(orbit, seed, i).expect("representative exists").1)
            .collect()
    });
    Some(forms)
}

pub fn file_name(orbit: OrbitType, seed: u64, index: usize) -> String {
    format!("{}-{seed}-{index:04}.form", orbit.tag())
}

pub fn file_text(orbit: OrbitType, seed: u64, index: usize, form: &KForm) -> String {
    let header = [format!("{} orbit sample, seed {seed}, index {index}", orbit.tag())];
    write_form(form, &header).expect("samples have rational coefficients")
}
