//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Sample sizes and time limits are fixed below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use msforms::classify::{
    c_construction, check_compatibility, is_tangent_structure, orbit_type, structure_extract,
};
use msforms::linalg::eigenspace;
use msforms::normal_form::{normal_form, verify_certificate};
use msforms::orbit_tangent::{
    complex_table, involution_table, k_endo, n_filtration, tangent_space_basis, type_projectors,
    witness_nonintegrable, FiltrationReport, Quadruple, TypeLabel, WitnessKind,
};
use msforms::sampling::{sample_point, sample_transform};
use msforms::{omega_minus, omega_plus, omega_zero, KForm, LinMap, OrbitType, Scalar};

const INVARIANCE_SAMPLES: u64 = 200;
const SAMPLES: u64 = 50;
const CANONICAL_LIMIT: Duration = Duration::from_secs(1);
const INVARIANCE_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(300);

const SEED_INVARIANCE: u64 = 2;
const SEED_STRUCTURE: u64 = 3;
const SEED_FILTRATION: u64 = 7;
const SEED_WITNESS: u64 = 9;
const SEED_NORMAL: u64 = 10;
const SEED_QUOTIENT: u64 = 11;

const ORBITS: [OrbitType; 3] = [OrbitType::Product, OrbitType::Complex, OrbitType::Tangent];

type Outcome = Result<String, String>;

fn mono(ix: &[usize]) -> KForm {
    KForm::monomial(ix).unwrap()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn samples(orbit: OrbitType, seed: u64, n: u64) -> impl Iterator<Item = (u64, LinMap, KForm)> {
    (0..n).map(move |i| {
        let (g, w) = sample_point(orbit, seed, i).unwrap();
        (i, g, w)
    })
}

fn canonical() -> Outcome {
    let start = Instant::now();
    let cases = [
        (omega_plus(), OrbitType::Product),
        (omega_minus(), OrbitType::Complex),
        (omega_zero(), OrbitType::Tangent),
        (mono(&[1, 2, 3]), OrbitType::NotMultisymplectic),
    ];
    for (w, want) in &cases {
        let got = orbit_type(w);
        check(got == *want, || format!("expected {want:?}, got {got:?}"))?;
    }
    let t = start.elapsed();
    check(t < CANONICAL_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("4 forms in {t:.2?}"))
}

fn invariance() -> Outcome {
    let start = Instant::now();
    for orbit in ORBITS {
        for (i, _, w) in samples(orbit, SEED_INVARIANCE, INVARIANCE_SAMPLES) {
            let got = orbit_type(&w);
            check(got == orbit, || format!("{orbit:?} sample {i} classified {got:?}"))?;
        }
    }
    let t = start.elapsed();
    check(t < INVARIANCE_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{} pullbacks in {t:.2?}", 3 * INVARIANCE_SAMPLES))
}

fn structure_laws() -> Outcome {
    let minus_identity = LinMap::identity().neg();
    for orbit in ORBITS {
        for (i, _, w) in samples(orbit, SEED_STRUCTURE, SAMPLES) {
            let s = structure_extract(&w).map_err(|e| format!("{orbit:?} sample {i}: {e}"))?.structure;
            let ok = match orbit {
                OrbitType::Product => {
                    let plus = eigenspace(&s, &Scalar::one()).map_err(|e| e.to_string())?;
                    let minus = eigenspace(&s, &Scalar::from_int(-1)).map_err(|e| e.to_string())?;
                    s.square().is_identity() && plus.dim() == 3 && minus.dim() == 3
                }
                OrbitType::Complex => s.square() == minus_identity,
                _ => s.square().is_zero() && s.rank() == 3 && s.image() == s.kernel(),
            };
            check(ok, || format!("{orbit:?} sample {i}: structure law fails"))?;
            check(check_compatibility(&w, &s), || format!("{orbit:?} sample {i}: compatibility fails"))?;
        }
    }
    Ok(format!("{} samples, all basis triples", 3 * SAMPLES))
}

fn transport() -> Outcome {
    for orbit in ORBITS {
        let base = structure_extract(&msforms::representative(orbit).unwrap()).unwrap().structure;
        for (i, g, w) in samples(orbit, SEED_STRUCTURE, SAMPLES) {
            let moved = structure_extract(&w).map_err(|e| e.to_string())?.structure;
            let transported = g.inverse().unwrap().compose(&base).compose(&g);
            let ratio = moved.ratio_to(&transported);
            let ok = match (&ratio, orbit) {
                (Some(r), OrbitType::Tangent) => !r.is_zero(),
                (Some(r), _) => r.is_one() || *r == Scalar::from_int(-1),
                (None, _) => false,
            };
            check(ok, || format!("{orbit:?} sample {i}: ratio {ratio:?}"))?;
        }
    }
    Ok(format!("{SAMPLES} samples per orbit"))
}

fn product_table() -> Outcome {
    let t = involution_table(&omega_plus()).map_err(|e| e.to_string())?;
    check(t.rows.len() == 16, || format!("{} rows", t.rows.len()))?;
    check(t.rows.iter().all(|r| r.squares_to_identity), || "a listed quadruple is not an involution".into())?;
    check(t.regenerated_matches_listed, || "regenerated set differs from the list".into())?;
    check(t.rows.iter().all(|r| r.matches()), || format!("{:?}", t.discrepancies))?;
    check(t.is_consistent(), || format!("{:?}", t.discrepancies))?;
    Ok("16 involutions, regenerated set equal, 16 eigenspace lines match".into())
}

fn complex_pairing() -> Outcome {
    let t = complex_table(&omega_minus()).map_err(|e| e.to_string())?;
    check(t.passing.len() == 4, || format!("{} quadruples pass", t.passing.len()))?;
    let neg = Quadruple::from_ratios([(-1, 1), (0, 1), (0, 1), (0, 1)]);
    check(t.passing.contains(&Quadruple::unit(0)) && t.passing.contains(&neg), || {
        "(±1,0,0,0) missing".into()
    })?;
    let passing: Vec<String> = t.passing.iter().map(|q| q.to_string()).collect();
    Ok(format!(
        "passing {}; linked half signs pass: {}, opposite half signs pass: {}",
        passing.join(" "),
        t.linked_signs_pass,
        t.opposite_signs_pass
    ))
}

fn tangent_points(seed: u64) -> impl Iterator<Item = (String, KForm)> {
    std::iter::once(("ω0".to_string(), omega_zero()))
        .chain(samples(OrbitType::Tangent, seed, SAMPLES).map(|(i, _, w)| (format!("sample {i}"), w)))
}

fn filtration() -> Outcome {
    for (name, w) in tangent_points(SEED_FILTRATION) {
        let r = n_filtration(&w).map_err(|e| format!("{name}: {e}"))?;
        check(r.profile() == FiltrationReport::EXPECTED_DIMS, || format!("{name}: profile {:?}", r.profile()))?;
        let ok = r.d_chain && r.n_chain && r.im_n_is_d2 && r.ker_n2_is_wedge_annihilator && r.n_cubed_zero;
        check(ok, || format!("{name}: {:?}", r.violations()))?;
    }
    Ok(format!("ω0 and {SAMPLES} samples, profile {:?}", FiltrationReport::EXPECTED_DIMS))
}

fn trace_criterion() -> Outcome {
    let w = omega_zero();
    let f = structure_extract(&w).unwrap().structure;
    let spaces = tangent_space_basis(&w).map_err(|e| e.to_string())?;
    let mut zero_trace = 0;
    for (j, v) in spaces.d2.basis().iter().enumerate() {
        let omega = KForm::from_coords(3, v);
        let k = k_endo(&w, &omega).map_err(|e| e.to_string())?;
        let n_zero = omega.derivation(&f).is_zero();
        check(n_zero == k.trace.is_zero(), || format!("basis vector {j}: N zero {n_zero}, trace {}", k.trace))?;
        zero_trace += usize::from(n_zero);
    }
    let k = k_endo(&w, &w).map_err(|e| e.to_string())?;
    check(k.matrix.is_identity() && k.trace == Scalar::from_int(3), || "k(ω) is not the identity".into())?;
    for (name, w) in tangent_points(SEED_FILTRATION).take(11) {
        let r = n_filtration(&w).map_err(|e| e.to_string())?;
        check(r.trace_criterion && r.k_omega_identity, || format!("{name}: {:?}", r.violations()))?;
    }
    Ok(format!("{} basis vectors of D2 ({zero_trace} with zero trace), k(ω) = I", spaces.d2.dim()))
}

fn witnesses() -> Outcome {
    let w = omega_zero();
    let f = structure_extract(&w).unwrap().structure;
    let spaces = tangent_space_basis(&w).map_err(|e| e.to_string())?;
    let (a, b) = (mono(&[1, 2, 5]), mono(&[3, 4, 6]));
    for x in [&a, &b] {
        check(spaces.in_d3(&x.to_coords()), || format!("{x:?} not in D3"))?;
        check(x.derivation(&f).derivation(&f).is_zero(), || format!("{x:?} not in ker N²"))?;
    }
    check(!a.wedge(&b).unwrap().is_zero(), || "α125∧α346 = 0".into())?;
    for (i, _, p) in samples(OrbitType::Product, SEED_WITNESS, SAMPLES) {
        let (x, y, wedge) = witness_nonintegrable(&p, WitnessKind::D21xD12).map_err(|e| format!("sample {i}: {e}"))?;
        let t = type_projectors(&p).map_err(|e| e.to_string())?;
        let typed = t.decompose(&x)[TypeLabel::D21.index()] == x && t.decompose(&y)[TypeLabel::D12.index()] == y;
        check(typed && !wedge.is_zero(), || format!("product sample {i}: bad witness"))?;
    }
    Ok(format!("(α125, α346) at ω0; {SAMPLES} product samples"))
}

fn normal_forms() -> Outcome {
    let mut count = 0;
    for orbit in ORBITS {
        for (i, _, w) in samples(orbit, SEED_NORMAL, SAMPLES) {
            let cert = normal_form(&w).map_err(|e| format!("{orbit:?} sample {i}: {e}"))?;
            check(cert.residual_zero && verify_certificate(&w, &cert), || format!("{orbit:?} sample {i}"))?;
            count += 1;
        }
    }
    for i in 0..SAMPLES {
        let b = Scalar::from_int([1, -1, 2, -3, 5][i as usize % 5]);
        let w = omega_zero().add(&mono(&[4, 5, 6]).scale(&b)).pullback(&sample_transform(SEED_NORMAL, i));
        let cert = normal_form(&w).map_err(|e| format!("b-sample {i}: {e}"))?;
        let ok = cert.residual_zero && verify_certificate(&w, &cert) && cert.orbit == OrbitType::Tangent;
        check(ok, || format!("tangent sample {i} with b = {b}"))?;
        count += 1;
    }
    Ok(format!("{count} certificates, {SAMPLES} with b ≠ 0"))
}

fn quotient_volume() -> Outcome {
    let f0 = structure_extract(&omega_zero()).unwrap().structure;
    for i in 0..SAMPLES {
        let g = if i == 0 { LinMap::identity() } else { sample_transform(SEED_QUOTIENT, i) };
        let w = omega_zero().pullback(&g);
        let eta = mono(&[4, 5, 6]).scale(&Scalar::from_int(i as i64 % 3 + 1)).pullback(&g);
        let (c, a) = c_construction(&w, &eta).map_err(|e| format!("sample {i}: {e}"))?;
        let f = if i == 0 { f0.clone() } else { structure_extract(&w).unwrap().structure };
        let ok = !a.is_zero() && c == f.scale(&a) && is_tangent_structure(&c) && check_compatibility(&w, &c);
        check(ok, || format!("sample {i}: a = {a}"))?;
    }
    Ok(format!("ω0 and {} pullbacks", SAMPLES - 1))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("canonical classification", canonical),
        ("orbit invariance", invariance),
        ("structure laws", structure_laws),
        ("uniqueness transport", transport),
        ("product involution table", product_table),
        ("complex structure table", complex_pairing),
        ("tangent filtration", filtration),
        ("trace criterion", trace_criterion),
        ("non-integrability witnesses", witnesses),
        ("normal form residual", normal_forms),
        ("quotient volume construction", quotient_volume),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {:.2?})", n + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", n + 1);
            }
        }
    }
    let total = start.elapsed();
    if total >= SUITE_LIMIT {
        failed += 1;
        println!("FAIL runtime: {total:.2?} exceeds {SUITE_LIMIT:?}");
    } else {
        println!("PASS runtime: {total:.2?} under {SUITE_LIMIT:?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
