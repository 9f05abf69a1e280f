//! Type classification in the w-Sasaki cone.
//!
//! Rays are parametrized by the slope `v1/v2 > 0`. Over a Fano base with
//! index `I`, put `ρ = l2 I / (l1 w2)`. The positive rays then form
//!
//! * every ray, when `l2 I >= l1 w1`;
//! * the interval `w1/w2 - ρ < v1/v2 < (w1/w2) / (1 - ρ)`, when `ρ < 1`;
//! * the half-line `w1/w2 - ρ < v1/v2` otherwise.
//!
//! Over a base that is not Fano no ray is positive. All bounds are open.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotient::orb_fano_predicate;
use crate::rational::Rational;
use crate::topology::c1_gamma_coeff_sphere_join;
use crate::types::{JoinParams, ReebRay};

/// The set of positive rays in slope coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PositivityRange {
    Empty,
    Entire,
    #[serde(rename = "halfline")]
    HalfLine {
        lower: Rational,
    },
    Interval {
        lower: Rational,
        upper: Rational,
    },
}

impl PositivityRange {
    /// Strict membership of a slope.
    pub fn contains(&self, ratio: Rational) -> bool {
        match *self {
            PositivityRange::Empty => false,
            PositivityRange::Entire => ratio.signum() > 0,
            PositivityRange::HalfLine { lower } => ratio > lower,
            PositivityRange::Interval { lower, upper } => ratio > lower && ratio < upper,
        }
    }

    /// Distance from `ratio` to the nearest finite bound, if there is one.
    pub fn distance_to_boundary(&self, ratio: Rational) -> Option<Rational> {
        match *self {
            PositivityRange::Empty | PositivityRange::Entire => None,
            PositivityRange::HalfLine { lower } => Some((ratio - lower).abs()),
            PositivityRange::Interval { lower, upper } => {
                Some((ratio - lower).abs().min((upper - ratio).abs()))
            }
        }
    }

    pub fn lower(&self) -> Option<Rational> {
        match *self {
            PositivityRange::HalfLine { lower } | PositivityRange::Interval { lower, .. } => Some(lower),
            _ => None,
        }
    }

    pub fn upper(&self) -> Option<Rational> {
        match *self {
            PositivityRange::Interval { upper, .. } => Some(upper),
            _ => None,
        }
    }
}

impl fmt::Display for PositivityRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityRange::Empty => write!(f, "p+_w is empty (every ray is indefinite)"),
            PositivityRange::Entire => write!(f, "p+_w = t+_w (entire w-cone)"),
            PositivityRange::HalfLine { lower } => write!(f, "{lower} < v1/v2"),
            PositivityRange::Interval { lower, upper } => write!(f, "{lower} < v1/v2 < {upper}"),
        }
    }
}

/// Positive or indefinite; with a Sasaki cone of dimension at least two no
/// other type occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeVerdict {
    Positive,
    Indefinite,
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeVerdict::Positive => "positive",
            TypeVerdict::Indefinite => "indefinite",
        })
    }
}

/// `l2 I / (l1 w2)`, or `None` if the base is not Fano.
pub fn rho_hat(join: &JoinParams) -> Option<Rational> {
    let index = join.base().fano_index()?;
    Some(Rational::new(
        (join.l2() * index) as i128,
        (join.l1() * join.w2()) as i128,
    ))
}

/// Exact range of positive slopes.
///
/// At `l2 I = l1 w1` the lower bound of the half-line collapses to zero, so
/// the cone is reported as entire.
pub fn positivity_range(join: &JoinParams) -> PositivityRange {
    let Some(rho) = rho_hat(join) else {
        return PositivityRange::Empty;
    };
    let index = join.base().c1_coeff as u64;
    if join.l2() * index >= join.l1() * join.w1() {
        return PositivityRange::Entire;
    }
    let w = join.w_ratio();
    let lower = w - rho;
    if rho < Rational::ONE {
        PositivityRange::Interval {
            lower,
            upper: w / (Rational::ONE - rho),
        }
    } else {
        PositivityRange::HalfLine { lower }
    }
}

/// Positive iff the slope lies strictly inside [`positivity_range`].
pub fn classify_ray(join: &JoinParams, v: &ReebRay) -> TypeVerdict {
    classify_ratio(join, v.ratio())
}

pub fn classify_ratio(join: &JoinParams, ratio: Rational) -> TypeVerdict {
    if positivity_range(join).contains(ratio) {
        TypeVerdict::Positive
    } else {
        TypeVerdict::Indefinite
    }
}

/// Verdict for a ray together with where it sits relative to the range.
///
/// `tolerance` is the distance the caller allows between an irregular ray
/// and its rational approximant; a ray within that distance of a bound is
/// flagged as undecided.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub ratio: Rational,
    pub verdict: TypeVerdict,
    pub range: PositivityRange,
    pub distance_to_boundary: Option<Rational>,
    pub on_boundary: bool,
    pub near_boundary: bool,
}

pub fn classify(join: &JoinParams, ratio: Rational, tolerance: Rational) -> Classification {
    let range = positivity_range(join);
    let distance = range.distance_to_boundary(ratio);
    Classification {
        ratio,
        verdict: classify_ratio(join, ratio),
        range,
        distance_to_boundary: distance,
        on_boundary: distance.is_some_and(|d| d.is_zero()),
        near_boundary: distance.is_some_and(|d| d <= tolerance),
    }
}

/// Whole-cone positivity rules for a sphere join `S^{2p+1} ⋆ S³_w`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WholeConeReport {
    pub c1_gamma_coeff: i64,
    /// `c1(D) = 0` forces every ray to be positive.
    pub c1_zero_forces_entire: bool,
    /// `c1(D) > 0` forces every ray to be positive.
    pub c1_positive_forces_entire: bool,
    /// `l2 I >= l1 w1`.
    pub family_rule_entire: bool,
    /// `c1(D) + l1 w2 γ > 0`, the same condition written in `c1(D)`.
    pub shifted_c1_positive: bool,
    pub range: PositivityRange,
    pub consistent: bool,
}

pub fn whole_cone_rules(p: u32, join: &JoinParams) -> Result<WholeConeReport> {
    let c1 = c1_gamma_coeff_sphere_join(p, join)?;
    let range = positivity_range(join);
    let range_entire = range == PositivityRange::Entire;
    let index = join.base().c1_coeff;
    let family_rule_entire = join.l2() as i64 * index >= (join.l1() * join.w1()) as i64;
    // c1 + l1 w2 = l2 I - l1 w1; zero is the boundary case counted as entire
    let shifted = c1 + (join.l1() * join.w2()) as i64;
    let c1_zero_forces_entire = c1 == 0;
    let c1_positive_forces_entire = c1 > 0;
    let consistent = family_rule_entire == range_entire
        && (shifted >= 0) == range_entire
        && (!(c1_zero_forces_entire || c1_positive_forces_entire) || range_entire);
    Ok(WholeConeReport {
        c1_gamma_coeff: c1,
        c1_zero_forces_entire,
        c1_positive_forces_entire,
        family_rule_entire,
        shifted_c1_positive: shifted > 0,
        range,
        consistent,
    })
}

/// Signed Einstein–Hilbert functional `sign(S) |S|^{n+1} / V^n` on a
/// Sasaki manifold of dimension `2n + 1`.
pub fn h1_signed(total_scalar: f64, volume: f64, n_half: u32) -> Result<f64> {
    if !(volume > 0.0) {
        return Err(Error::NonpositiveVolume(volume));
    }
    if total_scalar == 0.0 {
        return Ok(0.0);
    }
    let magnitude = total_scalar.abs().powi(n_half as i32 + 1) / volume.powi(n_half as i32);
    Ok(total_scalar.signum() * magnitude)
}

/// Cross-check hook: the range membership and the integer predicate on the
/// log pair must agree for every quasi-regular ray.
pub fn range_matches_predicate(join: &JoinParams, v: &ReebRay) -> bool {
    (classify_ray(join, v) == TypeVerdict::Positive) == orb_fano_predicate(join, v)
}
