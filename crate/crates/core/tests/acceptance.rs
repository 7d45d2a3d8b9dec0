//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use waveset_core::construct::{self, Depths};
use waveset_core::intervals::{int, pow2, ratio};
use waveset_core::msf2d::{self, Mat2, QuadScalar};
use waveset_core::spectral::{self, CalderonSum, ConditionStatus, MraVerdict};
use waveset_core::{Interval, IntervalSet, Rational, StepFn};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn set(raw: &[(i64, i64, i64, i64)]) -> IntervalSet {
    IntervalSet::normalize(raw.iter().map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

/// `n` points of `[lo, hi)` with denominators divisible by 3, so none is a
/// dyadic rational and none sits on a breakpoint.
fn samples(lo: i64, hi: i64, n: i64) -> impl Iterator<Item = Rational> {
    (0..n).map(move |i| int(lo) + int(hi - lo) * ratio(3 * i + 1, 3 * n))
}

fn translation_count(set: &IntervalSet, x: &Rational) -> usize {
    (-16..=16).filter(|&k| set.contains(&(x + int(k)))).count()
}

/// Sampled magnitudes lie in `[2^-12, 4]` and the sets in `[-1, 1]`, so
/// dilates outside `|j| <= 24` cannot meet them.
fn dilation_count(set: &IntervalSet, x: &Rational) -> usize {
    (-24..=24).filter(|&j| set.contains(&(x * pow2(j)))).count()
}

fn shannon() -> Check {
    let start = Instant::now();
    let g = StepFn::indicator(&IntervalSet::span(ratio(-1, 2), ratio(1, 2)));
    let r = construct::wavelet_set_in_support(&g, Depths::default()).map_err(|e| e.to_string())?;
    ensure(r.s == IntervalSet::span(ratio(-1, 2), ratio(1, 2)), format!("S = {}", r.s))?;
    ensure(r.w == set(&[(-1, 1, -1, 2), (1, 2, 1, 1)]), format!("W = {}", r.w))?;
    ensure(construct::verify_wavelet_set(&r.w).is_pass(), "W fails verification")?;
    ensure(r.contained, "W not inside the wavelet support")?;
    ensure(r.defects.fast_path && r.defects.is_exact(), format!("defects {:?}", r.defects))?;
    let elapsed = start.elapsed();
    within(start, Duration::from_secs(1))?;
    let mut mismatches = 0;
    for x in samples(-4, 4, 10_000) {
        if translation_count(&r.w, &x) != 1 || dilation_count(&r.w, &x) != 1 || translation_count(&r.s, &x) != 1 {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, format!("{mismatches} sampling mismatches"))?;
    Ok(format!("exact S and W, 10000 samples agree (pipeline {elapsed:?})"))
}

fn journe() -> Check {
    let start = Instant::now();
    let w = set(&[(-16, 7, -2, 1), (-1, 2, -2, 7), (2, 7, 1, 2), (2, 1, 16, 7)]);
    ensure(construct::verify_wavelet_set(&w).is_pass(), "verification failed")?;
    ensure(w.measure() == int(1), format!("measure {}", w.measure()))?;
    let h = StepFn::indicator(&w);
    let depth = 20;
    let dim = spectral::dimension_function(&h, depth + 2);
    ensure(dim.dim.values().iter().all(|v| v.is_integer()), "non-integer dimension value")?;
    let report = spectral::check_dimension_conditions(&dim, depth).map_err(|e| e.to_string())?;
    ensure(report.d1 == ConditionStatus::Pass, format!("D1 {:?}", report.d1))?;
    ensure(report.d2 == ConditionStatus::Pass, format!("D2 {:?}", report.d2))?;
    ensure(!report.d2_checked_measure.is_zero(), "D2 checked on an empty window")?;
    let twos = dim.dim.where_value(|v| v == &int(2)).measure();
    ensure(!twos.is_zero(), "dimension never equals 2")?;
    ensure(
        matches!(spectral::mra_check(&h, depth), MraVerdict::NotMra { .. }),
        "mra_check did not report not_mra",
    )?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("verified, |{{D = 2}}| = {twos} ({:?})", start.elapsed()))
}

fn three_level() -> Check {
    let start = Instant::now();
    let g = StepFn::from_pieces([
        (Interval::new(ratio(-5, 8), ratio(-3, 8)).unwrap(), ratio(1, 2)),
        (Interval::new(ratio(-3, 8), ratio(3, 8)).unwrap(), int(1)),
        (Interval::new(ratio(3, 8), ratio(5, 8)).unwrap(), ratio(1, 2)),
    ])
    .unwrap();
    let verdict = spectral::validate_scaling_spectrum(&g).map_err(|e| e.to_string())?;
    ensure(verdict.is_pass(), format!("{verdict:?}"))?;
    let h = spectral::psi_spectrum_from_scaling(&g).map_err(|e| e.to_string())?;
    ensure(h.min_value().map_or(true, |m| m >= &int(0)), "negative wavelet spectrum")?;
    ensure(h.integral() == int(1), format!("integral {}", h.integral()))?;
    let r = construct::wavelet_set_in_support(&g, Depths { n: 40, j: 40 }).map_err(|e| e.to_string())?;
    if r.defects.fast_path {
        ensure(r.outside_measure.is_zero(), format!("outside measure {}", r.outside_measure))?;
    } else {
        ensure(r.outside_measure <= r.outside_bound, format!("{} > {}", r.outside_measure, r.outside_bound))?;
    }
    ensure(construct::verify_wavelet_set(&r.w).is_pass(), "W fails verification")?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "W = {}, outside {} (bound {}, fast path {}) ({:?})",
        r.w,
        r.outside_measure,
        r.outside_bound,
        r.defects.fast_path,
        start.elapsed()
    ))
}

fn brute_calderon(h: &StepFn, x: &Rational) -> Rational {
    (-64..=64).map(|j| h.eval(&(x * pow2(j)))).sum()
}

/// `∫_0^∞ h(ξ) dξ/ξ`, which equals `ln 2` times the dyadic average of the
/// Calderón sum on the positive half-line.
fn log_average(h: &StepFn) -> f64 {
    h.pieces()
        .iter()
        .filter(|(i, _)| i.lo() >= &int(0))
        .map(|(i, v)| v.to_f64().unwrap() * (i.hi() / i.lo()).to_f64().unwrap().ln())
        .sum()
}

fn psi_b() -> Check {
    let mut notes = Vec::new();
    let start = Instant::now();
    let half = spectral::orthonormality_check(&spectral::psi_b_spectrum(&ratio(1, 2)).unwrap()).unwrap();
    ensure(half.passes, "b = 1/2 is not orthonormal")?;
    within(start, Duration::from_secs(2))?;
    for (b, expected) in [(ratio(1, 4), 2), (ratio(1, 8), 3)] {
        let start = Instant::now();
        let h = spectral::psi_b_spectrum(&b).map_err(|e| e.to_string())?;
        let CalderonSum::Finite(profile) = spectral::calderon(&h) else {
            return Err(format!("b = {b}: Calderón sum diverges"));
        };
        ensure(profile.is_constant(&int(expected)), format!("b = {b}: profile {profile:?}"))?;
        within(start, Duration::from_secs(2))?;
        let mut mismatches = 0;
        for x in samples(1, 2, 500) {
            let neg = -x.clone();
            if brute_calderon(&h, &x) != int(expected) || brute_calderon(&h, &neg) != int(expected) {
                mismatches += 1;
            }
        }
        ensure(mismatches == 0, format!("b = {b}: {mismatches} sampling mismatches"))?;
        let avg = log_average(&h);
        let want = expected as f64 * std::f64::consts::LN_2;
        ensure((avg - want).abs() < 1e-12, format!("b = {b}: log average {avg} vs {want}"))?;
        notes.push(format!("b = {b} gives {expected}"));
    }
    Ok(format!("b = 1/2 orthonormal, {}", notes.join(", ")))
}

fn two_dim() -> Check {
    let q = |x: Rational| QuadScalar::rational(x);
    let decide = |m: [[QuadScalar; 2]; 2]| -> Result<bool, String> {
        let start = Instant::now();
        let a = Mat2::new(m).map_err(|e| e.to_string())?;
        let r = msf2d::wavelet_set_exists(&a, &Mat2::identity()).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(1))?;
        Ok(r.exists)
    };
    for alpha in [int(0), int(1), ratio(7, 3)] {
        let exists = decide([[q(int(3)), q(int(0))], [q(alpha.clone()), q(ratio(1, 2))]])?;
        ensure(!exists, format!("alpha = {alpha}: expected not_exists"))?;
    }
    let exists = decide([[q(int(3)), q(int(1))], [q(int(0)), q(ratio(1, 2))]])?;
    ensure(!exists, "transpose with alpha = 1: expected not_exists")?;
    let sqrt2 = QuadScalar::new(int(0), int(1), 2).unwrap();
    let exists = decide([[q(int(3)), sqrt2], [q(int(0)), q(ratio(1, 2))]])?;
    ensure(exists, "transpose with alpha = √2: expected exists")?;
    Ok("alpha in {0, 1, 7/3} and transpose 1 give not_exists, transpose √2 gives exists".into())
}

fn lattice() -> Check {
    let a = Mat2::from_ints([[2, 0], [0, 2]]);
    for (j, expected) in [(0i64, 5i64), (1, 13)] {
        let count = msf2d::lattice_count(&a, &Mat2::identity(), j).map_err(|e| e.to_string())?;
        let r2 = 4i64.pow(j as u32);
        let brute = (-8i64..=8)
            .flat_map(|x| (-8i64..=8).map(move |y| (x, y)))
            .filter(|(x, y)| x * x + y * y <= r2)
            .count() as i64;
        ensure(count == BigInt::from(expected) && brute == expected, format!("j = {j}: {count} vs brute {brute}"))?;
    }
    let report = msf2d::lce_report(&a, &Mat2::identity(), 0, 4, &int(5)).map_err(|e| e.to_string())?;
    ensure(report.holds, format!("lce fails at {:?}", report.witness))?;
    let counts: Vec<String> = report.rows.iter().map(|r| r.count.to_string()).collect();
    Ok(format!("counts {} hold with C = 5", counts.join(", ")))
}

fn properties() -> Check {
    let suites = support::suites();
    for suite in &suites {
        let mut runner = support::runner(100, true);
        (suite.run)(&mut runner).map_err(|e| format!("{}: {e}", suite.name))?;
    }
    Ok(format!("{} suites, 100 cases each", suites.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("Shannon pipeline", shannon),
        ("Journé verification", journe),
        ("three-level MRA", three_level),
        ("psi_b family", psi_b),
        ("2D existence", two_dim),
        ("lattice counting", lattice),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("criterion {}: PASS {name}: {note}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
