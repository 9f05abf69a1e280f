//! Golden replay of the published bouquet, positivity-range and `c1` tables.
//!
//! Every check recomputes one table entry from the join parameters and
//! compares the rendered value with the published one.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::cone::{classify_ray, positivity_range, PositivityRange, TypeVerdict};
use crate::rational::Rational;
use crate::topology::{
    b_invariant_wcone, bouquet_label, bouquet_level_set, c1_gamma_coeff_sphere_join, spin_check,
    torsion_order,
};
use crate::types::{validate_join, validate_join_relaxed, BaseManifold, JoinParams, ReebRay};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub locator: String,
    pub quantity: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl ReplayReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One line per mismatch.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for c in self.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(
                out,
                "MISMATCH {} [{}]: expected {}, got {}",
                c.locator, c.quantity, c.expected, c.got
            );
        }
        out
    }
}

impl crate::emit::Record for ReplayReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{status} {} [{}] = {}", c.locator, c.quantity, c.got);
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

/// Base invariants the replay runs against. Overriding them is how the
/// replay itself is tested for sensitivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayBases {
    pub cp1: BaseManifold,
    pub cp2: BaseManifold,
}

impl Default for ReplayBases {
    fn default() -> Self {
        ReplayBases {
            cp1: BaseManifold::projective_space(1),
            cp2: BaseManifold::projective_space(2),
        }
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, locator: &str, quantity: &str, expected: impl ToString, got: impl ToString) {
        let expected = expected.to_string();
        let got = got.to_string();
        self.checks.push(Check {
            locator: locator.to_string(),
            quantity: quantity.to_string(),
            passed: expected == got,
            expected,
            got,
        });
    }

    fn check_result<T: ToString, E: ToString>(
        &mut self,
        locator: &str,
        quantity: &str,
        expected: impl ToString,
        got: Result<T, E>,
    ) {
        let got = match got {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {}", e.to_string()),
        };
        self.check(locator, quantity, expected, got);
    }
}

/// `(m, l1, (w1, w2), B, range)` for one row of a bouquet table.
type BouquetRow = (u64, i64, (i64, i64), u64, PositivityRange);

fn interval(lower: Rational, upper: Rational) -> PositivityRange {
    PositivityRange::Interval { lower, upper }
}

fn half_line(lower: Rational) -> PositivityRange {
    PositivityRange::HalfLine { lower }
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn set_text(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn join(l1: i64, l2: i64, w1: i64, w2: i64, base: &BaseManifold) -> JoinParams {
    validate_join(l1, l2, w1, w2, base.clone()).expect("published joins are smooth")
}

/// Replays every table against the standard bases.
pub fn replay_tables() -> ReplayReport {
    replay_tables_with(&ReplayBases::default())
}

pub fn replay_tables_with(bases: &ReplayBases) -> ReplayReport {
    let mut rec = Recorder { checks: Vec::new() };
    let cp1 = &bases.cp1;
    let cp2 = &bases.cp2;

    // 4-bouquet on S^2 x S^3, l2 = 1
    let rows: [BouquetRow; 4] = [
        (0, 4, (1, 1), 4, interval(q(1, 2), q(2, 1))),
        (1, 1, (5, 3), 3, interval(q(1, 1), q(5, 1))),
        (2, 2, (3, 1), 2, half_line(q(2, 1))),
        (3, 1, (7, 1), 1, half_line(q(5, 1))),
    ];
    for (m, l1, (w1, w2), b, range) in rows {
        let loc = format!("4-bouquet on S2xS3, m={m}");
        let j = join(l1, 1, w1, w2, cp1);
        rec.check_result(&loc, "B", b, b_invariant_wcone(&j));
        rec.check(&loc, "positivity range", range, positivity_range(&j));
        rec.check_result(&loc, "c1(D)/gamma", -6, c1_gamma_coeff_sphere_join(1, &j));
        match bouquet_label(&j) {
            Ok(label) => {
                rec.check(&loc, "k", 4, label.k);
                rec.check(&loc, "j = B", b, label.j);
                rec.check(&loc, "g(j)", 1, label.i);
                rec.check(&loc, "B + m", 4, b + m);
            }
            Err(e) => rec.check(&loc, "bouquet label", "(k=4)", format!("error: {e}")),
        }
        let regular = ReebRay::new(1, 1).expect("coprime");
        let expected = if m == 0 {
            TypeVerdict::Positive
        } else {
            TypeVerdict::Indefinite
        };
        rec.check(&loc, "type of v=(1,1)", expected, classify_ray(&j, &regular));
    }
    rec.check(
        "4-bouquet on S2xS3",
        "g^-1(1) for k=4, l=1",
        "{1,2,3,4}",
        set_text(&bouquet_level_set(4, 1, 1)),
    );

    // 2-bouquet on S^2 x S^3, l2 = 3
    let rows: [BouquetRow; 2] = [
        (0, 4, (1, 1), 4, PositivityRange::Entire),
        (3, 1, (7, 1), 1, half_line(q(1, 1))),
    ];
    for (m, l1, (w1, w2), b, range) in rows {
        let loc = format!("2-bouquet on S2xS3, m={m}");
        let j = join(l1, 3, w1, w2, cp1);
        rec.check_result(&loc, "B", b, b_invariant_wcone(&j));
        rec.check(&loc, "positivity range", range, positivity_range(&j));
        rec.check_result(&loc, "c1(D)/gamma", -2, c1_gamma_coeff_sphere_join(1, &j));
    }

    // S^5 joins with w1 w2 l1^2 = 12: (l1, w1, w2, c1 = 3 l2 - offset, spin)
    let families: [(i64, i64, i64, i64, bool); 3] =
        [(1, 12, 1, 13, true), (1, 4, 3, 7, true), (2, 3, 1, 8, false)];
    for (l1, w1, w2, offset, spin) in families {
        for l2 in [1i64, 5, 7, 11] {
            let loc = format!("S5 join M_{{{l1},{l2},{w1},{w2}}}");
            let j = join(l1, l2, w1, w2, cp2);
            rec.check_result(
                &loc,
                "c1(D)/gamma",
                3 * l2 - offset,
                c1_gamma_coeff_sphere_join(2, &j),
            );
            rec.check_result(&loc, "spin", spin, spin_check(2, &j));
            rec.check(&loc, "torsion order", 12, torsion_order(&j));
        }
    }

    // positivity thresholds of M_{1,l2,12,1} and M_{1,l2,4,3}
    let thresholds: [(i64, i64, i64, PositivityRange); 7] = [
        (12, 1, 1, half_line(q(9, 1))),
        (12, 1, 2, half_line(q(6, 1))),
        (12, 1, 3, half_line(q(3, 1))),
        (12, 1, 4, PositivityRange::Entire),
        (12, 1, 5, PositivityRange::Entire),
        (4, 3, 1, half_line(q(1, 3))),
        (4, 3, 2, PositivityRange::Entire),
    ];
    for (w1, w2, l2, range) in thresholds {
        let loc = format!("S5 join M_{{1,{l2},{w1},{w2}}}");
        let j = validate_join_relaxed(1, l2, w1, w2, cp2.clone()).expect("coprime data");
        rec.check(&loc, "positivity range", range, positivity_range(&j));
    }

    // c1(D) = 0 via l1 = p + 1, l2 = |w|
    let j = join(3, 13, 12, 1, cp2);
    rec.check_result(
        "S5 join M_{3,13,12,1}",
        "c1(D)/gamma",
        0,
        c1_gamma_coeff_sphere_join(2, &j),
    );
    rec.check(
        "S5 join M_{3,13,12,1}",
        "positivity range",
        PositivityRange::Entire,
        positivity_range(&j),
    );

    let passed = rec.checks.iter().filter(|c| c.passed).count();
    let failed = rec.checks.len() - passed;
    ReplayReport {
        checks: rec.checks,
        passed,
        failed,
    }
}
