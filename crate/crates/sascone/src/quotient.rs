//! The log pair `(S_n, Δ)` obtained by quotienting the join by a
//! quasi-regular Reeb field, and positivity of its orbifold first Chern class.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::types::{JoinParams, ReebRay};

/// `s = gcd(|w2 v1 - w1 v2|, l2)`, `m = l2 / s`, `m_i = m v_i`,
/// `n = (l1 / s)(w1 v2 - w2 v1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientData {
    pub s: u64,
    pub n: i64,
    pub m: u64,
    pub m1: u64,
    pub m2: u64,
}

/// `w1 v2 - w2 v1`.
pub fn cross(join: &JoinParams, v: &ReebRay) -> i128 {
    join.w1() as i128 * v.v2() as i128 - join.w2() as i128 * v.v1() as i128
}

pub fn quotient_data(join: &JoinParams, v: &ReebRay) -> Result<QuotientData> {
    let c = cross(join, v);
    if c == 0 {
        return Err(Error::ProductCase {
            v1: v.v1(),
            v2: v.v2(),
        });
    }
    let s = (c.unsigned_abs() as u64).gcd(&join.l2());
    let m = join.l2() / s;
    // s divides the cross term, not necessarily l1
    let n = join.l1() as i128 * c / s as i128;
    let n = i64::try_from(n).expect("n fits in i64 for u64-sized inputs");
    Ok(QuotientData {
        s,
        n,
        m,
        m1: m * v.v1(),
        m2: m * v.v2(),
    })
}

/// Positivity of `c1^orb(S_n, Δ)` written purely in the join data.
///
/// False for every ray when the base is not Fano. On the ray `v = w` both
/// branches reduce to `I_N l2 v_i > 0`, which holds.
pub fn orb_fano_predicate(join: &JoinParams, v: &ReebRay) -> bool {
    let Some(index) = join.base().fano_index() else {
        return false;
    };
    let index = index as i128;
    let l1 = join.l1() as i128;
    let l2 = join.l2() as i128;
    let c = cross(join, v);
    match c.signum() {
        1 => index * l2 * v.v2() as i128 - l1 * c > 0,
        -1 => index * l2 * v.v1() as i128 + l1 * c > 0,
        _ => true,
    }
}

/// The two scalars in front of `[ω_{N_n}]/4π` and `(PD(D1)+PD(D2))/2` in
/// `c1^orb(S_n, Δ)`: `A = 2 b0/n + 1/m1 - 1/m2` and `C = 1/m1 + 1/m2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbC1Report {
    pub a: Rational,
    pub c: Rational,
    pub a_f64: f64,
    pub c_f64: f64,
    pub n: i64,
    /// `A > C` when `n > 0`, `A < -C` when `n < 0`.
    pub verdict: bool,
}

pub fn orb_c1_report(join: &JoinParams, v: &ReebRay, quotient: &QuotientData) -> Result<OrbC1Report> {
    if quotient.n == 0 {
        return Err(Error::ProductCase {
            v1: v.v1(),
            v2: v.v2(),
        });
    }
    let b0 = Rational::from(join.base().c1_coeff);
    let n = Rational::from(quotient.n);
    let inv_m1 = Rational::from(quotient.m1).recip();
    let inv_m2 = Rational::from(quotient.m2).recip();
    let a = Rational::from(2i64) * b0 / n + inv_m1 - inv_m2;
    let c = inv_m1 + inv_m2;
    let verdict = if quotient.n > 0 { a > c } else { a < -c };
    Ok(OrbC1Report {
        a,
        c,
        a_f64: a.to_f64(),
        c_f64: c.to_f64(),
        n: quotient.n,
        verdict,
    })
}
