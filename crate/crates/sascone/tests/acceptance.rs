//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use sascone::admissible::{build_profile, f_of_k, g_func_dt, ricci_box_check, solve_k, ProfileParams};
use sascone::cone::{positivity_range, PositivityRange};
use sascone::quotient::{orb_fano_predicate, quotient_data};
use sascone::rational::Rational;
use sascone::topology::{
    b_invariant_wcone, bouquet_label, bouquet_level_set, c1_gamma_coeff_sphere_join, torsion_order,
};
use sascone::types::{validate_join, validate_join_relaxed, BaseManifold, JoinParams, ReebRay};

use common::{f_quadrature, oracle_scale, random_params, relative_error, rng};

const ORACLE_TOLERANCE: f64 = 1e-10;
const ENDPOINT_TOLERANCE: f64 = 1e-10;
const SYMMETRIC_K_TOLERANCE: f64 = 1e-14;
const SYMMETRIC_F_TOLERANCE: f64 = 1e-12;
const DOUBLING_TOLERANCE: f64 = 1e-12;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome {
            passed: false,
            detail: format!(
                "{detail}; {} failures, first: {}",
                failures.len(),
                shown.join(" | ")
            ),
        }
    }
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn interval(lower: Rational, upper: Rational) -> PositivityRange {
    PositivityRange::Interval { lower, upper }
}

fn half_line(lower: Rational) -> PositivityRange {
    PositivityRange::HalfLine { lower }
}

fn golden_ranges() -> Outcome {
    let cp1 = BaseManifold::projective_space(1);
    let cp2 = BaseManifold::projective_space(2);
    let mut cases: Vec<(JoinParams, PositivityRange)> = vec![
        (
            validate_join(4, 1, 1, 1, cp1.clone()).unwrap(),
            interval(q(1, 2), q(2, 1)),
        ),
        (
            validate_join(1, 1, 5, 3, cp1.clone()).unwrap(),
            interval(q(1, 1), q(5, 1)),
        ),
        (
            validate_join(2, 1, 3, 1, cp1.clone()).unwrap(),
            half_line(q(2, 1)),
        ),
        (
            validate_join(1, 1, 7, 1, cp1.clone()).unwrap(),
            half_line(q(5, 1)),
        ),
        (
            validate_join(4, 3, 1, 1, cp1.clone()).unwrap(),
            PositivityRange::Entire,
        ),
        (validate_join(1, 3, 7, 1, cp1).unwrap(), half_line(q(1, 1))),
    ];
    for (l2, threshold) in [(1, 9), (2, 6), (3, 3)] {
        let join = validate_join_relaxed(1, l2, 12, 1, cp2.clone()).unwrap();
        cases.push((join, half_line(q(threshold, 1))));
    }
    for l2 in 4..=25 {
        if let Ok(join) = validate_join_relaxed(1, l2, 12, 1, cp2.clone()) {
            cases.push((join, PositivityRange::Entire));
        }
    }
    cases.push((
        validate_join(1, 1, 4, 3, cp2.clone()).unwrap(),
        half_line(q(1, 3)),
    ));
    for l2 in 2..=25 {
        if let Ok(join) = validate_join_relaxed(1, l2, 4, 3, cp2.clone()) {
            cases.push((join, PositivityRange::Entire));
        }
    }

    let failures: Vec<String> = cases
        .iter()
        .filter_map(|(join, want)| {
            let got = positivity_range(join);
            (got != *want).then(|| format!("{join}: expected {want}, got {got}"))
        })
        .collect();
    outcome(&failures, format!("{} ranges, exact", cases.len()))
}

fn invariant_tables() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut expect = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };

    let cp1 = BaseManifold::projective_space(1);
    for (l1, w1, w2, b) in [(4, 1, 1, 4u64), (1, 5, 3, 3), (2, 3, 1, 2), (1, 7, 1, 1)] {
        let join = validate_join(l1, 1, w1, w2, cp1.clone()).unwrap();
        let got = b_invariant_wcone(&join).ok();
        expect(got == Some(b), format!("B of {join}: expected {b}, got {got:?}"));
        let label = bouquet_label(&join).unwrap();
        expect(label.k == 4, format!("k of {join}: got {}", label.k));
        expect(label.j == b, format!("j of {join}: got {}", label.j));
    }
    let level = bouquet_level_set(4, 1, 1);
    expect(
        level == BTreeSet::from([1, 2, 3, 4]),
        format!("g^-1(1) for k=4, l=1: got {level:?}"),
    );

    let cp2 = BaseManifold::projective_space(2);
    for (l1, w1, w2, offset) in [(1i64, 12i64, 1i64, 13i64), (1, 4, 3, 7), (2, 3, 1, 8)] {
        for l2 in 1..=30 {
            let Ok(join) = validate_join(l1, l2, w1, w2, cp2.clone()) else {
                continue;
            };
            let got = c1_gamma_coeff_sphere_join(2, &join).ok();
            let want = 3 * l2 - offset;
            expect(
                got == Some(want),
                format!("c1 of {join}: expected {want}, got {got:?}"),
            );
            let torsion = torsion_order(&join);
            expect(torsion == 12, format!("torsion of {join}: got {torsion}"));
        }
    }
    outcome(&failures, format!("{checks} entries, exact"))
}

/// Every smooth join of the corpus, over all five bases.
fn corpus_joins() -> Vec<JoinParams> {
    let mut joins = Vec::new();
    for b0 in [-2i64, 1, 2, 3, 4] {
        let base = BaseManifold::new(1, b0, format!("b0={b0}")).unwrap();
        for l1 in 1..=10i64 {
            for l2 in 1..=10i64 {
                for w1 in 1..=12i64 {
                    for w2 in 1..=w1 {
                        if let Ok(join) = validate_join(l1, l2, w1, w2, base.clone()) {
                            joins.push(join);
                        }
                    }
                }
            }
        }
    }
    joins
}

fn corpus_rays() -> Vec<ReebRay> {
    let mut rays = Vec::new();
    for v1 in 1..=50i64 {
        for v2 in 1..=50i64 {
            if v1.gcd(&v2) == 1 {
                rays.push(ReebRay::new(v1, v2).unwrap());
            }
        }
    }
    rays
}

fn predicate_equivalence(joins: &[JoinParams], rays: &[ReebRay]) -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for join in joins {
        let range = positivity_range(join);
        for v in rays {
            pairs += 1;
            let in_range = range.contains(v.ratio());
            if in_range != orb_fano_predicate(join, v) {
                failures.push(format!(
                    "{join}, v=({}, {}): range says {in_range}",
                    v.v1(),
                    v.v2()
                ));
            }
        }
    }
    outcome(
        &failures,
        format!(
            "{} joins x {} rays = {pairs} pairs, 100% required",
            joins.len(),
            rays.len()
        ),
    )
}

fn box_equivalence(joins: &[JoinParams], rays: &[ReebRay]) -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0usize;
    for join in joins {
        for v in rays {
            let Ok(quotient) = quotient_data(join, v) else {
                continue;
            };
            if quotient.n == 0 {
                continue;
            }
            compared += 1;
            let params = ProfileParams::from_quotient(&quotient, join.base(), None).unwrap();
            if ricci_box_check(&params) != orb_fano_predicate(join, v) {
                failures.push(format!("{join}, v=({}, {})", v.v1(), v.v2()));
            }
        }
    }
    outcome(&failures, format!("{compared} pairs with n != 0, 100% required"))
}

/// Certifies one tuple; returns the worst relative oracle deviation seen.
fn certify_profile(params: &ProfileParams) -> Result<f64, String> {
    let k_root = solve_k(params).map_err(|e| e.to_string())?;

    // uniqueness: exactly one sign change of f over a 1000-point k-grid
    let half_width = 64.0;
    if k_root.abs() >= half_width {
        return Err(format!("root {k_root} outside the scanned k-grid"));
    }
    let signs: Vec<bool> = (0..1000)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / 999.0)
        .map(|k| f_of_k(k, params) > 0.0)
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    if changes != 1 || !signs[0] {
        return Err(format!("f has {changes} sign changes on the k-grid"));
    }

    let profile = build_profile(params, 10_001).map_err(|e| e.to_string())?;
    let report = &profile.report;
    if report.f_left.abs() > ENDPOINT_TOLERANCE || report.f_right.abs() > ENDPOINT_TOLERANCE {
        return Err(format!("F(±1) = ({}, {})", report.f_left, report.f_right));
    }
    if report.slope_left_residual > ENDPOINT_TOLERANCE || report.slope_right_residual > ENDPOINT_TOLERANCE {
        return Err(format!(
            "slope residuals ({}, {})",
            report.slope_left_residual, report.slope_right_residual
        ));
    }
    let last = profile.samples.len() - 1;
    let min_interior = profile.samples[1..last]
        .iter()
        .map(|s| s.f)
        .fold(f64::INFINITY, f64::min);
    if min_interior <= 0.0 {
        return Err(format!("min interior F = {min_interior}"));
    }
    if let Some(s) = profile
        .samples
        .iter()
        .find(|s| g_func_dt(s.z, profile.k_root, params.m1, params.m2) >= 0.0)
    {
        return Err(format!("dg/dz >= 0 at z = {}", s.z));
    }

    let scale = oracle_scale(params);
    let mut worst: f64 = 0.0;
    for k in [-7.5, -1.3, -1e-3, 0.0, 0.4, 2.5, 11.0, k_root] {
        let err = relative_error(f_of_k(k, params), f_quadrature(1.0, k, params), scale);
        worst = worst.max(err);
        if err > ORACLE_TOLERANCE {
            return Err(format!("f({k}) off the quadrature oracle by {err:e}"));
        }
    }
    for sample in profile.samples.iter().step_by(500) {
        let err = relative_error(sample.f, f_quadrature(sample.z, profile.k_root, params), scale);
        worst = worst.max(err);
        if err > ORACLE_TOLERANCE {
            return Err(format!("F({}) off the quadrature oracle by {err:e}", sample.z));
        }
    }
    Ok(worst)
}

fn profile_certification() -> Outcome {
    let mut rng = rng(0x5a5c_0e01);
    let draws = 240;
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for _ in 0..draws {
        let params = random_params(&mut rng);
        match certify_profile(&params) {
            Ok(err) => worst = worst.max(err),
            Err(e) => failures.push(format!("{params:?}: {e}")),
        }
    }
    outcome(
        &failures,
        format!(
            "{draws} random tuples, endpoint tol {ENDPOINT_TOLERANCE:e}, oracle tol {ORACLE_TOLERANCE:e} rel, worst oracle deviation {worst:.2e}"
        ),
    )
}

fn symmetric_case() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in 1..=9u64 {
        for r in [-0.9, -0.5, -0.05, 0.05, 0.5, 0.9] {
            cases += 1;
            let n = if r > 0.0 { 1 } else { -1 };
            let params = ProfileParams::new(m, m, 0, r, n, 2).unwrap();
            let profile = match build_profile(&params, 10_001) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(format!("m={m}, r={r}: {e}"));
                    continue;
                }
            };
            if profile.k_root.abs() > SYMMETRIC_K_TOLERANCE {
                failures.push(format!("m={m}, r={r}: k = {}", profile.k_root));
            }
            // F = (1 - z^2)/m, which is 1 - z^2 itself for m = 1
            let worst = profile
                .samples
                .iter()
                .map(|s| (m as f64 * s.f - (1.0 - s.z * s.z)).abs())
                .fold(0.0, f64::max);
            if worst > SYMMETRIC_F_TOLERANCE {
                failures.push(format!("m={m}, r={r}: |m F - (1 - z^2)| = {worst:e}"));
            }
        }
    }
    outcome(
        &failures,
        format!("{cases} cases, k tol {SYMMETRIC_K_TOLERANCE:e}, F tol {SYMMETRIC_F_TOLERANCE:e}"),
    )
}

fn doubling() -> Outcome {
    let mut rng = rng(0xd0b1e);
    let mut failures = Vec::new();
    let draws = 50;
    for _ in 0..draws {
        let p = random_params(&mut rng);
        let doubled = ProfileParams::new(2 * p.m1, 2 * p.m2, p.d_n, p.r, p.n, p.fano_index).unwrap();
        let (Ok(a), Ok(b)) = (build_profile(&p, 1001), build_profile(&doubled, 1001)) else {
            failures.push(format!("{p:?}: profile failed"));
            continue;
        };
        let m = p.m1.gcd(&p.m2) as f64;
        let worst = a
            .samples
            .iter()
            .zip(&b.samples)
            .map(|(x, y)| (m * x.theta - 2.0 * m * y.theta).abs())
            .fold(0.0, f64::max);
        if worst > DOUBLING_TOLERANCE {
            failures.push(format!("{p:?}: max |m Θ - 2m Θ'| = {worst:e}"));
        }
    }
    outcome(
        &failures,
        format!("{draws} random profiles, tol {DOUBLING_TOLERANCE:e}"),
    )
}

/// Name, time budget and the check itself.
type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let joins = corpus_joins();
    let rays = corpus_rays();

    let criteria: Vec<Criterion> = vec![
        (
            "1 golden positivity ranges",
            Some(Duration::from_secs(1)),
            Box::new(golden_ranges),
        ),
        ("2 invariant tables", None, Box::new(invariant_tables)),
        (
            "3 predicate/range equivalence",
            Some(Duration::from_secs(30)),
            Box::new(|| predicate_equivalence(&joins, &rays)),
        ),
        (
            "4 admissible profile certification",
            Some(Duration::from_secs(60)),
            Box::new(profile_certification),
        ),
        ("5 symmetric analytic case", None, Box::new(symmetric_case)),
        (
            "6 box/orbifold-Fano equivalence",
            None,
            Box::new(|| box_equivalence(&joins, &rays)),
        ),
        ("7 doubling invariance of m Θ", None, Box::new(doubling)),
    ];

    let mut all_passed = true;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let passed = result.passed && in_time;
        all_passed &= passed;
        let budget_text = budget.map_or(String::new(), |b| format!(", budget {}s", b.as_secs()));
        let timing = if in_time { "" } else { " [over time budget]" };
        println!(
            "criterion {name}: {} ({}; {:.3}s{budget_text}){timing}",
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
