//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Randomized criteria use a fixed ChaCha seed so runs are reproducible.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use immclass_core::classification::{classify, classify_chi, ImmersionClass, ManifoldAlgebra};
use immclass_core::complex::{validate_closed_oriented, ChainPresentation, OrientationFailure, SimplicialComplex3};
use immclass_core::homology::{divisibility, halves};
use immclass_core::ledger::{
    closed_cusp_check, invariant_I, invariant_i_from_I, invariant_j, lift_check, seifert_consistency, smale_invariant,
    takase_i, FramedCurveRecord, SeifertData,
};
use immclass_core::library::{builtin, standard_names};
use immclass_core::matrix::IntMatrix;
use immclass_core::semigroup::{HomologySummary, SemigroupElement};
use immclass_core::snf::smith_normal_form;

use common::invariant_factors_by_minors;

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra(name: &str) -> ManifoldAlgebra {
    ManifoldAlgebra::from_builtin(&builtin(name).expect("builtin")).expect("algebra")
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

/// Classification of the four reference manifolds, each under one second.
fn criterion_classify() -> Outcome {
    let limit = Duration::from_secs(1);
    let mut slowest = Duration::ZERO;
    let mut timed = |name: &str, window: u32| -> Result<(ManifoldAlgebra, _), String> {
        let start = Instant::now();
        let a = algebra(name);
        let t = classify(&a, window).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        check(took < limit, || format!("{name} took {took:?}"))?;
        check(t.check_consistency(&a).map_err(|e| e.to_string())?, || format!("{name} table inconsistent"))?;
        Ok((a, t))
    };

    let (_, s3) = timed("S3", 3)?;
    check(s3.wu_rows.len() == 1 && s3.wu_rows[0].fiber_modulus.is_zero(), || {
        "S3: expected one row with fiber Z".into()
    })?;

    let (a, t) = timed("S1xS2", 3)?;
    for k in -3i64..=3 {
        let c = a.h2().express(&big(&[k])).map_err(|e| e.to_string())?;
        let row = t.wu_rows.iter().find(|r| r.c == c).ok_or(format!("S1xS2: no row for {k}g"))?;
        check(row.fiber_modulus == BigInt::from(4 * k.abs()), || {
            format!("S1xS2: c = {k}g has Z_{}", row.fiber_modulus)
        })?;
    }

    let (a, t) = timed("L(2,1)", 3)?;
    check(t.wu_rows.len() == 2 && t.wu_rows.iter().all(|r| r.fiber_modulus.is_zero()), || {
        "L(2,1): expected two rows with fiber Z".into()
    })?;
    let zero_row = classify_chi(&a, &a.h2().zero()).map_err(|e| e.to_string())?;
    check(zero_row.halves.len() == 2, || "L(2,1): chi = 0 should have two Wu classes".into())?;

    let (a, t) = timed("T3", 2)?;
    for row in &t.wu_rows {
        let v = a.h2().reconstruct(&row.c).map_err(|e| e.to_string())?;
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        check(row.fiber_modulus == &g * 4, || {
            format!("T3: c = {} has Z_{}, want Z_{}", row.c, row.fiber_modulus, &g * 4)
        })?;
    }
    Ok(format!("S3, S1xS2, L(2,1), T3 fibers exact; slowest {slowest:?}"))
}

/// Index of `2χ ∪ H¹` equals `2d(χ)` on every builtin, coordinates bounded by 3.
fn criterion_duality() -> Outcome {
    let start = Instant::now();
    let mut count = 0usize;
    for name in standard_names() {
        let m = builtin(name).map_err(|e| e.to_string())?;
        let p = m.cup_pairing().map_err(|e| format!("{name}: {e}"))?;
        for chi in p.h2().elements_in_window(3) {
            let index = p.index_two_chi_cup_h1(&chi).map_err(|e| e.to_string())?;
            let d = divisibility(p.h2(), &chi).map_err(|e| e.to_string())?;
            check(index == &d * 2, || format!("{name} chi = {chi}: index {index} vs 2d = {}", &d * 2))?;
            count += 1;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(5), || format!("sweep took {took:?}"))?;
    Ok(format!("{count} classes over {} builtins in {took:?}", standard_names().len()))
}

/// One cell per degree except `k` 1- and 2-cells with `∂₂ = diag(ps)`.
fn lens_sum(ps: &[i64]) -> ChainPresentation {
    let k = ps.len();
    let d2 = IntMatrix::from_fn(k, k, |i, j| if i == j { ps[i].into() } else { BigInt::zero() });
    ChainPresentation::new(IntMatrix::zeros(1, k), d2, IntMatrix::zeros(k, 1), None, vec![1.into()]).expect("valid")
}

/// `|Γ₂(χ)|` is `2^s` on `2H²` and 0 elsewhere, `s` the number of even torsion summands.
fn criterion_halves() -> Outcome {
    let mut presentations: Vec<(String, ChainPresentation)> =
        standard_names().iter().map(|n| (n.to_string(), builtin(n).unwrap().presentation)).collect();
    let moduli = [0i64, 1, 2, 3, 4, 6, 8];
    for &a in &moduli {
        for &b in &moduli {
            presentations.push((format!("sum{:?}", [a, b]), lens_sum(&[a, b])));
            for &c in &[2i64, 4] {
                presentations.push((format!("sum{:?}", [a, b, c]), lens_sum(&[a, b, c])));
            }
        }
    }
    let mut checked = 0usize;
    for (name, p) in &presentations {
        let alg = ManifoldAlgebra::new(p.clone(), None).map_err(|e| e.to_string())?;
        let h2 = alg.h2();
        let s = h2.shape().even_torsion_count();
        let window = h2.elements_in_window(3);
        let doubles: std::collections::BTreeSet<_> =
            window.iter().map(|c| h2.scale(c, &BigInt::from(2)).unwrap()).collect();
        for chi in &window {
            let got = halves(h2, chi).map_err(|e| e.to_string())?.len();
            let want = if doubles.contains(chi) { 1usize << s } else { 0 };
            check(got == want, || format!("{name} chi = {chi}: |halves| = {got}, want {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes over {} presentations", presentations.len()))
}

fn random_element(rng: &mut ChaCha8Rng, algebras: &[ManifoldAlgebra]) -> SemigroupElement {
    if rng.gen_bool(0.2) {
        let d: i64 = rng.gen_range(0..=12);
        return SemigroupElement::raw(HomologySummary::default(), vec![], d, rng.gen_range(-60i64..60));
    }
    let a = &algebras[rng.gen_range(0..algebras.len())];
    let classes = a.h2().elements_in_window(3);
    let c = classes[rng.gen_range(0..classes.len())].clone();
    let class = ImmersionClass::new(a, c, rng.gen_range(-60i64..60)).unwrap();
    SemigroupElement::from_class(a, &class).unwrap()
}

/// Connected-sum laws over random triples and surjectivity of the sphere orbit.
fn criterion_semigroup() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let algebras: Vec<ManifoldAlgebra> =
        ["S3", "S1xS2", "T3", "L(2,1)", "L(4,1)", "L(6,1)"].iter().map(|n| algebra(n)).collect();
    for trial in 0..1000 {
        let a = random_element(&mut rng, &algebras);
        let b = random_element(&mut rng, &algebras);
        let c = random_element(&mut rng, &algebras);
        let n: i64 = rng.gen_range(-100..100);
        let ab = a.connected_sum(&b);
        check(ab == b.connected_sum(&a), || format!("trial {trial}: not commutative"))?;
        check(ab.connected_sum(&c) == a.connected_sum(&b.connected_sum(&c)), || {
            format!("trial {trial}: not associative")
        })?;
        check(ab.i().modulus() == &(a.d().gcd(b.d()) * 2), || format!("trial {trial}: gcd law"))?;
        let shifted = a.sum_with_sphere(n);
        check(shifted.c() == a.c() && shifted.summary() == a.summary(), || {
            format!("trial {trial}: sphere sum moved c")
        })?;
        check(shifted == a.connected_sum(&SemigroupElement::sphere(n)), || {
            format!("trial {trial}: sphere sum disagrees with #")
        })?;
        check(a.connected_sum(&SemigroupElement::sphere(0)) == a, || format!("trial {trial}: sphere not neutral"))?;
    }
    for d in 1..=12i64 {
        let e = SemigroupElement::raw(HomologySummary::default(), vec![], d, 0);
        let mut orbit: Vec<BigInt> = e.sphere_orbit().unwrap().iter().map(|v| v.value().clone()).collect();
        orbit.sort();
        orbit.dedup();
        check(orbit.len() as i64 == 2 * d, || format!("orbit for d = {d} has {} elements", orbit.len()))?;
    }
    Ok("1000 random triples; orbits surjective for d = 1..12".into())
}

/// Ledger identities and parity gates over 10⁴ random cases.
fn criterion_ledger() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let start = Instant::now();
    let b = BigInt::from;
    for case in 0..10_000 {
        let sigma: i64 = rng.gen_range(-50..=50);
        let cusps: i64 = rng.gen_range(-50..=50);
        let alpha: i64 = rng.gen_range(0..=4);
        let d: i64 = rng.gen_range(0..=12);
        let big_r: i64 = rng.gen_range(-100..=100);
        let base = 3 * (sigma - alpha) + cusps;
        let data = SeifertData::new(sigma, cusps, alpha, d, Some(b(big_r)), None).map_err(|e| e.to_string())?;

        let odd = (base + big_r).rem_euclid(2) == 1;
        let big_i = invariant_I(&data);
        check(big_i.is_err() == odd, || format!("case {case}: I gate wrong for total {}", base + big_r))?;
        if let Ok(big_i) = big_i {
            let i = invariant_i_from_I(&big_i).map_err(|e| e.to_string())?;
            let j = invariant_j(&data).map_err(|e| format!("case {case}: {e}"))?;
            check(j == i.scale(&b(2)), || format!("case {case}: j = {j}, i = {i}"))?;
        }

        let smale_bad = (3 * sigma + cusps).rem_euclid(2) == 1;
        check(smale_invariant(&b(sigma), &b(cusps)).is_err() == smale_bad, || format!("case {case}: smale gate"))?;
        check(takase_i(&b(sigma), &b(alpha), &b(cusps)).is_err() == (base.rem_euclid(2) == 1), || {
            format!("case {case}: takase gate")
        })?;

        let pad: i64 = rng.gen_range(-20..=20);
        check(closed_cusp_check(&b(pad), &b(-3 * pad)), || format!("case {case}: closed check"))?;
        let padded = SeifertData::new(sigma + pad, cusps - 3 * pad, alpha, d, Some(b(big_r)), None)
            .map_err(|e| e.to_string())?;
        check(seifert_consistency(&data, &padded), || format!("case {case}: padding rejected"))?;
        let unit = if rng.gen_bool(0.5) { 1 } else { -1 };
        let bumped = SeifertData::new(sigma + pad, cusps - 3 * pad + unit, alpha, d, Some(b(big_r)), None)
            .map_err(|e| e.to_string())?;
        check(!seifert_consistency(&data, &bumped), || format!("case {case}: unit perturbation accepted"))?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(1), || format!("10^4 cases took {took:?}"))?;
    Ok(format!("10^4 cases in {took:?}"))
}

/// Smith form of 500 random matrices against the determinantal-divisor oracle.
fn criterion_snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for trial in 0..500 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = IntMatrix::from_fn(m, n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
        let r = smith_normal_form(&a);
        check(r.invariant_factors() == invariant_factors_by_minors(&a), || {
            format!("trial {trial}: factors differ for {a:?}")
        })?;
        check(r.u.mul(&a).mul(&r.v) == r.s, || format!("trial {trial}: U A V != S"))?;
        check(r.u.determinant().abs() == BigInt::from(1) && r.v.determinant().abs() == BigInt::from(1), || {
            format!("trial {trial}: transforms not unimodular")
        })?;
    }
    Ok("500 random matrices up to 6x6".into())
}

/// Validator accepts the builtins and catches holes and incoherent orientations.
fn criterion_validator() -> Outcome {
    let mut complexes = Vec::new();
    for name in standard_names() {
        let m = builtin(name).map_err(|e| e.to_string())?;
        if let Some(c) = m.complex() {
            let r = validate_closed_oriented(c);
            check(r.is_valid(), || format!("{name} rejected: {r:?}"))?;
            complexes.push((name, c.clone()));
        }
    }
    let s3 = builtin("S3").unwrap().complex().unwrap().listed();
    for drop in 0..s3.len() {
        let rest: Vec<_> = s3.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, t)| *t).collect();
        let c = SimplicialComplex3::new(5, &rest).map_err(|e| e.to_string())?;
        let r = validate_closed_oriented(&c);
        check(!r.is_closed && !r.is_valid(), || format!("deleting tetrahedron {drop} still closed"))?;
    }
    let mut flips = 0;
    for (name, c) in &complexes {
        let listed = c.listed();
        for t in 0..listed.len() {
            let mut relabeled = listed.clone();
            relabeled[t].0.swap(0, 1);
            let bad = SimplicialComplex3::new(c.vertex_count(), &relabeled).map_err(|e| e.to_string())?;
            let r = validate_closed_oriented(&bad);
            let caught = matches!(r.orientation, Err(OrientationFailure::Incoherent { .. }));
            check(caught && r.is_closed && !r.is_valid(), || format!("{name}: relabeling tetrahedron {t} not caught"))?;
            flips += 1;
        }
    }
    Ok(format!("{} triangulations valid; 5 deletions and {flips} relabelings rejected", complexes.len()))
}

/// Coherent rotation records pass the lift check; any odd single-level perturbation fails.
fn criterion_lift() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for trial in 0..2000 {
        let d: i64 = rng.gen_range(0..=12);
        let big_r: i64 = rng.gen_range(-200..=200);
        let r = if d == 0 { big_r } else { big_r.rem_euclid(2 * d) };
        let r2 = big_r.rem_euclid(2);
        let rec = FramedCurveRecord::new("c", d, r, r2, Some(big_r.into())).map_err(|e| e.to_string())?;
        check(lift_check(&rec), || format!("trial {trial}: coherent record rejected"))?;
        let unit = 2 * rng.gen_range(-5i64..5) + 1;
        let level = rng.gen_range(0..3);
        let (mut pr, mut pr2, mut pbig) = (r, r2, big_r);
        match level {
            0 => pbig += unit,
            1 => pr += unit,
            _ => pr2 += unit,
        }
        let bad = FramedCurveRecord::new("c", d, pr, pr2, Some(pbig.into())).map_err(|e| e.to_string())?;
        check(!lift_check(&bad), || format!("trial {trial}: perturbation {unit} at level {level} accepted"))?;
    }
    Ok("2000 coherent records and perturbations".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("classify: exact fibers on S3, S1xS2, L(2,1), T3 within 1 s each", criterion_classify),
        ("cup index of 2chi equals 2d(chi) on all builtins within 5 s", criterion_duality),
        ("|Gamma_2(chi)| = 2^s on 2H^2 and 0 elsewhere", criterion_halves),
        ("connected-sum semigroup laws and sphere-orbit surjectivity", criterion_semigroup),
        ("rotation ledger identities and parity gates, 10^4 cases within 1 s", criterion_ledger),
        ("Smith normal form against minors oracle with unimodular transforms", criterion_snf),
        ("validator: builtins pass, holes and incoherent orientations fail", criterion_validator),
        ("framed-curve lift check accepts coherent and rejects perturbed records", criterion_lift),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {title} -- {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {title} -- {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
