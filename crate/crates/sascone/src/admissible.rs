//! Explicit admissible Kähler metrics with positive Ricci form on the log
//! pair `(S_n, Δ)`, and their lift to the Sasaki level.
//!
//! The metric is determined by a profile `Θ(z) = F(z) / p(z)` on the
//! momentum interval `[-1, 1]`, with `p(z) = (1 + r z)^d` and
//!
//! ```text
//! F(z) = ∫_{-1}^{z} g(t, k) p(t) dt
//! ```
//!
//! where `k` is the unique root of `f(k) = F(1; k)`. Everything is evaluated
//! in closed form: `p` is expanded by the binomial theorem and the
//! polynomial-times-exponential integrals are done either by a power series
//! in `k` (small `|k|`) or by the degree-reduction recurrence with the
//! exponential rescaled by `e^{-|k|}` (large `|k|`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotient::{quotient_data, QuotientData};
use crate::types::{BaseManifold, JoinParams, ReebRay};

/// Scaled tolerance on `|f(k)|` at the returned root.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Endpoint and slope residuals accepted by the verification report.
pub const VERIFY_TOLERANCE: f64 = 1e-10;
/// Agreement of `m Θ` between two realizations of the same ray.
pub const LIFT_TOLERANCE: f64 = 1e-9;
/// Brackets are grown by doubling from `[-1, 1]` up to this `|k|`.
pub const BRACKET_LIMIT: f64 = 512.0;

/// Below this `|k|` the series in `k` is used, above it the recurrence.
const SERIES_CUTOFF: f64 = 2.0;
const SERIES_MAX_TERMS: u32 = 80;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileParams {
    pub m1: u64,
    pub m2: u64,
    /// Exponent of `p(z) = (1 + r z)^d`, the complex dimension of N.
    pub d_n: u32,
    pub r: f64,
    pub n: i64,
    pub fano_index: i64,
}

impl ProfileParams {
    pub fn new(m1: u64, m2: u64, d_n: u32, r: f64, n: i64, fano_index: i64) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::InvalidProfile(format!(
                "ramification indices must be positive, got ({m1}, {m2})"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidProfile("n must be nonzero".into()));
        }
        if !(r.is_finite() && r != 0.0 && r.abs() < 1.0) {
            return Err(Error::InvalidProfile(format!("need 0 < |r| < 1, got {r}")));
        }
        if r.signum() != n.signum() as f64 {
            return Err(Error::InvalidProfile(format!(
                "r and n must have the same sign, got r = {r}, n = {n}"
            )));
        }
        Ok(ProfileParams {
            m1,
            m2,
            d_n,
            r,
            n,
            fano_index,
        })
    }

    /// Same as [`new`](Self::new) with `r = sign(n) / 2`.
    pub fn with_default_r(m1: u64, m2: u64, d_n: u32, n: i64, fano_index: i64) -> Result<Self> {
        ProfileParams::new(m1, m2, d_n, 0.5 * n.signum() as f64, n, fano_index)
    }

    /// Parameters of the log pair of a quasi-regular ray. `r` defaults to
    /// `sign(n) / 2`; a supplied `r` is used with its magnitude only, the
    /// sign always follows `n`.
    pub fn from_quotient(q: &QuotientData, base: &BaseManifold, r: Option<f64>) -> Result<Self> {
        let magnitude = r.map_or(0.5, f64::abs);
        ProfileParams::new(
            q.m1,
            q.m2,
            base.dim_c,
            magnitude * q.n.signum() as f64,
            q.n,
            base.c1_coeff,
        )
    }

    /// `p(z) = (1 + r z)^d`.
    pub fn p(&self, z: f64) -> f64 {
        (1.0 + self.r * z).powi(self.d_n as i32)
    }

    /// `∫_{-1}^{1} p`.
    pub fn p_integral(&self) -> f64 {
        Kernel::new(self).moment(0, 1.0)
    }

    /// `d = 0` has no geometric base; it is kept for analytic test cases.
    pub fn is_synthetic(&self) -> bool {
        self.d_n == 0
    }

    fn root_scale(&self) -> f64 {
        (1.0 / self.m1 as f64 + 1.0 / self.m2 as f64) * self.p_integral()
    }
}

/// Precomputed data for the closed-form integrals.
struct Kernel {
    inv_m1: f64,
    inv_m2: f64,
    /// `1/m1 + 1/m2`
    a: f64,
    /// Coefficients of `p` in the monomial basis.
    poly: Vec<f64>,
}

impl Kernel {
    fn new(params: &ProfileParams) -> Self {
        Kernel::from_parts(params.m1, params.m2, params.d_n, params.r)
    }

    fn from_parts(m1: u64, m2: u64, d: u32, r: f64) -> Self {
        let inv_m1 = 1.0 / m1 as f64;
        let inv_m2 = 1.0 / m2 as f64;
        let mut poly = Vec::with_capacity(d as usize + 1);
        let mut binom = 1.0;
        let mut rj = 1.0;
        for j in 0..=d {
            poly.push(binom * rj);
            binom = binom * (d - j) as f64 / (j + 1) as f64;
            rj *= r;
        }
        Kernel {
            inv_m1,
            inv_m2,
            a: inv_m1 + inv_m2,
            poly,
        }
    }

    /// `∫_{-1}^{z} t^q p(t) dt`.
    fn moment(&self, q: u32, z: f64) -> f64 {
        self.poly
            .iter()
            .enumerate()
            .map(|(j, c)| c * monomial_integral(q + j as u32, z))
            .sum()
    }

    /// `g(t, k)`.
    fn g(&self, t: f64, k: f64) -> f64 {
        if k.abs() <= SERIES_CUTOFF {
            // g = (k / sinh k) Σ_{n≥1} k^{n-1}/n! [a (-t)^n - 1/m1 - (-1)^n / m2]
            let mut sum = 0.0;
            let mut coeff = 1.0; // k^{n-1} / n!
            let mut neg_t_pow = 1.0;
            for n in 1..=SERIES_MAX_TERMS {
                coeff /= n as f64;
                neg_t_pow *= -t;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sum += coeff * (self.a * neg_t_pow - self.inv_m1 - sign * self.inv_m2);
                coeff *= k;
                if coeff.abs() * k.abs().max(1.0) < 1e-18 {
                    break;
                }
            }
            sum * k_over_sinh(k)
        } else {
            let (b, d) = self.shifted_constants(k);
            2.0 * (self.a * (-k * t - k.abs()).exp() - b) / d
        }
    }

    /// `∂g/∂t (t, k) = -a e^{-kt} k / sinh k`.
    fn dg_dt(&self, t: f64, k: f64) -> f64 {
        if k.abs() <= SERIES_CUTOFF {
            -self.a * (-k * t).exp() * k_over_sinh(k)
        } else {
            let (_, d) = self.shifted_constants(k);
            -2.0 * k * self.a * (-k * t - k.abs()).exp() / d
        }
    }

    /// `(e^{k-|k|}/m1 + e^{-k-|k|}/m2, e^{k-|k|} - e^{-k-|k|})`: the
    /// constant term and denominator of `g` after multiplying through by
    /// `e^{-|k|}`.
    fn shifted_constants(&self, k: f64) -> (f64, f64) {
        let up = (k - k.abs()).exp();
        let down = (-k - k.abs()).exp();
        (up * self.inv_m1 + down * self.inv_m2, up - down)
    }

    /// `F(z; k) = ∫_{-1}^{z} g(t, k) p(t) dt`.
    fn antiderivative(&self, z: f64, k: f64) -> f64 {
        if k.abs() <= SERIES_CUTOFF {
            self.antiderivative_series(z, k)
        } else {
            self.antiderivative_recurrence(z, k)
        }
    }

    fn antiderivative_series(&self, z: f64, k: f64) -> f64 {
        let m0 = self.moment(0, z);
        let mut sum = 0.0;
        let mut coeff = 1.0;
        for n in 1..=SERIES_MAX_TERMS {
            coeff /= n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let integral = self.a * sign * self.moment(n, z) - (self.inv_m1 + sign * self.inv_m2) * m0;
            sum += coeff * integral;
            coeff *= k;
            // remaining terms are bounded by |k|^n / (n+1)! times O(1)
            if coeff.abs() * k.abs().max(1.0) < 1e-18 {
                break;
            }
        }
        sum * k_over_sinh(k)
    }

    fn antiderivative_recurrence(&self, z: f64, k: f64) -> f64 {
        let shift = k.abs();
        let at_z = (-k * z - shift).exp();
        let at_left = (k - shift).exp();
        // E_j(z) = ∫_{-1}^{z} t^j e^{-kt-|k|} dt
        let mut e = if k > 0.0 {
            at_left * -(-k * (z + 1.0)).exp_m1() / k
        } else {
            at_z * (k * (z + 1.0)).exp_m1() / k
        };
        let mut weighted = self.poly[0] * e;
        let mut z_pow = 1.0;
        let mut left_sign = 1.0;
        for (j, c) in self.poly.iter().enumerate().skip(1) {
            z_pow *= z;
            left_sign = -left_sign;
            e = (left_sign * at_left - z_pow * at_z) / k + (j as f64 / k) * e;
            weighted += c * e;
        }
        let (b, d) = self.shifted_constants(k);
        2.0 * (self.a * weighted - b * self.moment(0, z)) / d
    }
}

/// `∫_{-1}^{z} t^e dt`.
fn monomial_integral(e: u32, z: f64) -> f64 {
    let left = if e.is_multiple_of(2) { -1.0 } else { 1.0 }; // (-1)^{e+1}
    (z.powi(e as i32 + 1) - left) / (e + 1) as f64
}

fn k_over_sinh(k: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else if k.abs() < 1e-4 {
        let k2 = k * k;
        1.0 / (1.0 + k2 / 6.0 * (1.0 + k2 / 20.0))
    } else {
        k / k.sinh()
    }
}

/// The piecewise function `g(t, k)` whose zero-mean normalization defines
/// the profile. Smooth in `t`, `C¹` in `(t, k)`.
pub fn g_func(t: f64, k: f64, m1: u64, m2: u64) -> f64 {
    Kernel::from_parts(m1, m2, 0, 0.0).g(t, k)
}

/// `∂g/∂t`, negative everywhere.
pub fn g_func_dt(t: f64, k: f64, m1: u64, m2: u64) -> f64 {
    Kernel::from_parts(m1, m2, 0, 0.0).dg_dt(t, k)
}

/// `f(k) = ∫_{-1}^{1} g(t, k) p(t) dt`, strictly decreasing in `k`.
pub fn f_of_k(k: f64, params: &ProfileParams) -> f64 {
    Kernel::new(params).antiderivative(1.0, k)
}

/// `F(z) = ∫_{-1}^{z} g(t, k) p(t) dt` for a given `k`.
pub fn profile_f(z: f64, k: f64, params: &ProfileParams) -> f64 {
    Kernel::new(params).antiderivative(z, k)
}

/// The unique `k` with `f(k) = 0`, by bracket doubling and bisection.
pub fn solve_k(params: &ProfileParams) -> Result<f64> {
    let kernel = Kernel::new(params);
    let f = |k: f64| kernel.antiderivative(1.0, k);
    let tolerance = ROOT_TOLERANCE * params.root_scale();

    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut f_lo = f(lo);
    while f_lo < 0.0 {
        lo *= 2.0;
        if lo.abs() > BRACKET_LIMIT {
            return Err(Error::BracketFailure { limit: BRACKET_LIMIT });
        }
        f_lo = f(lo);
    }
    let mut f_hi = f(hi);
    while f_hi > 0.0 {
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::BracketFailure { limit: BRACKET_LIMIT });
        }
        f_hi = f(hi);
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }

    // bisect to the resolution of f64, then take the better endpoint
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let (k, residual) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    if residual.abs() > tolerance {
        return Err(Error::RootNotConverged {
            k,
            residual: residual.abs(),
            tolerance,
        });
    }
    Ok(k)
}

/// Both endpoint conditions of the Ricci box, in exact integer arithmetic:
/// `(I/n - 1/m2) n > 0` and `(I/n + 1/m1) n > 0`.
///
/// The third condition, `(F'/p)' < 0`, holds for every profile built by
/// [`build_profile`] and is checked on samples there.
pub fn ricci_box_check(params: &ProfileParams) -> bool {
    let index = params.fano_index as i128;
    let n = params.n as i128;
    index * params.m2 as i128 - n > 0 && index * params.m1 as i128 + n > 0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub z: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "Theta")]
    pub theta: f64,
    /// Coefficient of `ω_{N_n}` in the Ricci form.
    pub ricci_h: f64,
    /// Coefficient of `dz ∧ θ` in the Ricci form.
    pub ricci_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub k_root: f64,
    pub f_residual: f64,
    pub f_left: f64,
    pub f_right: f64,
    pub slope_left_residual: f64,
    pub slope_right_residual: f64,
    pub min_interior_f: f64,
    pub interior_positive: bool,
    /// `∂g/∂z < 0` at every sample.
    pub monotone: bool,
    pub box_verdict: bool,
    /// `ricci_h n > 0` and `ricci_v > 0` at every sample.
    pub ricci_positive: bool,
    /// `f(0)`; it vanishes exactly when `k = 0`.
    pub balance_integral: f64,
    pub balanced: bool,
    /// Balanced and `2 r I / n = (1 + r)/m2 + (1 - r)/m1`.
    pub kahler_einstein: bool,
    pub synthetic: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricProfile {
    pub params: ProfileParams,
    pub k_root: f64,
    pub samples: Vec<ProfileSample>,
    pub report: VerificationReport,
}

impl MetricProfile {
    /// CSV with header `z,F,Theta,ricci_h,ricci_v`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("z,F,Theta,ricci_h,ricci_v\n");
        for s in &self.samples {
            for (i, x) in [s.z, s.f, s.theta, s.ricci_h, s.ricci_v].iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&crate::emit::format_float(*x));
            }
            out.push('\n');
        }
        out
    }
}

/// `grid_size` equally spaced points on `[-1, 1]`, both ends included.
pub fn uniform_grid(grid_size: usize) -> Vec<f64> {
    let last = grid_size - 1;
    (0..grid_size)
        .map(|i| {
            if i == last {
                1.0
            } else {
                -1.0 + 2.0 * i as f64 / last as f64
            }
        })
        .collect()
}

/// Solves for `k`, samples `F`, `Θ` and the Ricci coefficients on a
/// uniform grid and certifies the endpoint and positivity conditions.
pub fn build_profile(params: &ProfileParams, grid_size: usize) -> Result<MetricProfile> {
    if grid_size < 3 {
        return Err(Error::InvalidProfile(format!(
            "grid needs at least 3 points, got {grid_size}"
        )));
    }
    let kernel = Kernel::new(params);
    let k = solve_k(params)?;
    let samples = uniform_grid(grid_size)
        .into_iter()
        .map(|z| {
            let f = kernel.antiderivative(z, k);
            ProfileSample {
                z,
                f,
                theta: f / params.p(z),
                ricci_h: 0.0,
                ricci_v: 0.0,
            }
        })
        .collect();
    let mut profile = MetricProfile {
        params: *params,
        k_root: k,
        samples,
        report: VerificationReport {
            k_root: k,
            f_residual: 0.0,
            f_left: 0.0,
            f_right: 0.0,
            slope_left_residual: 0.0,
            slope_right_residual: 0.0,
            min_interior_f: 0.0,
            interior_positive: false,
            monotone: false,
            box_verdict: false,
            ricci_positive: false,
            balance_integral: 0.0,
            balanced: false,
            kahler_einstein: false,
            synthetic: params.is_synthetic(),
            passed: false,
        },
    };
    profile.samples = ricci_coefficients(&profile)?;
    profile.report = verify(&kernel, &profile);
    Ok(profile)
}

fn verify(kernel: &Kernel, profile: &MetricProfile) -> VerificationReport {
    let params = &profile.params;
    let k = profile.k_root;
    let f_left = kernel.antiderivative(-1.0, k);
    let f_right = kernel.antiderivative(1.0, k);
    // F' = g p
    let slope_left = kernel.g(-1.0, k) * params.p(-1.0);
    let slope_right = kernel.g(1.0, k) * params.p(1.0);
    let slope_left_residual = (slope_left - 2.0 * params.p(-1.0) * kernel.inv_m2).abs();
    let slope_right_residual = (slope_right + 2.0 * params.p(1.0) * kernel.inv_m1).abs();

    let interior = &profile.samples[1..profile.samples.len() - 1];
    let min_interior_f = interior.iter().map(|s| s.f).fold(f64::INFINITY, f64::min);
    let interior_positive = min_interior_f > 0.0;
    let monotone = profile.samples.iter().all(|s| kernel.dg_dt(s.z, k) < 0.0);
    let n = params.n as f64;
    let ricci_positive = profile
        .samples
        .iter()
        .all(|s| s.ricci_h * n > 0.0 && s.ricci_v > 0.0);

    let scale = params.root_scale();
    let balance_integral = kernel.antiderivative(1.0, 0.0);
    let balanced = balance_integral.abs() <= ROOT_TOLERANCE * scale;
    let r = params.r;
    let lhs = 2.0 * r * params.fano_index as f64 / n;
    let rhs = (1.0 + r) * kernel.inv_m2 + (1.0 - r) * kernel.inv_m1;
    let kahler_einstein = balanced && (lhs - rhs).abs() <= ROOT_TOLERANCE * lhs.abs().max(rhs.abs());

    let passed = f_left.abs() <= VERIFY_TOLERANCE
        && f_right.abs() <= VERIFY_TOLERANCE
        && slope_left_residual <= VERIFY_TOLERANCE
        && slope_right_residual <= VERIFY_TOLERANCE
        && interior_positive
        && monotone;

    VerificationReport {
        k_root: k,
        f_residual: f_right,
        f_left,
        f_right,
        slope_left_residual,
        slope_right_residual,
        min_interior_f,
        interior_positive,
        monotone,
        box_verdict: ricci_box_check(params),
        ricci_positive,
        balance_integral,
        balanced,
        kahler_einstein,
        synthetic: params.is_synthetic(),
        passed,
    }
}

/// Ricci coefficients at every sample: `ricci_h = I/n - g/2` and
/// `ricci_v = -(1/2) ∂g/∂z`, using `F'/p = g`.
///
/// When the box holds every sample must be positive; a violation means a
/// numerical defect and is returned as [`Error::BoxViolation`].
pub fn ricci_coefficients(profile: &MetricProfile) -> Result<Vec<ProfileSample>> {
    let params = &profile.params;
    let kernel = Kernel::new(params);
    let k = profile.k_root;
    let n = params.n as f64;
    let index_over_n = params.fano_index as f64 / n;
    let enforce = ricci_box_check(params);
    profile
        .samples
        .iter()
        .map(|s| {
            let ricci_h = index_over_n - 0.5 * kernel.g(s.z, k);
            let ricci_v = -0.5 * kernel.dg_dt(s.z, k);
            if enforce {
                if !(ricci_h * n > 0.0) {
                    return Err(Error::BoxViolation {
                        z: s.z,
                        which: "horizontal Ricci positivity",
                    });
                }
                if !(ricci_v > 0.0) {
                    return Err(Error::BoxViolation {
                        z: s.z,
                        which: "vertical Ricci positivity",
                    });
                }
            }
            Ok(ProfileSample {
                ricci_h,
                ricci_v,
                ..*s
            })
        })
        .collect()
}

/// Quotient data and profile parameters for a ray of a join.
pub fn params_for_ray(
    join: &JoinParams,
    v: &ReebRay,
    r: Option<f64>,
) -> Result<(QuotientData, ProfileParams)> {
    let q = quotient_data(join, v)?;
    let params = ProfileParams::from_quotient(&q, join.base(), r)?;
    Ok((q, params))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftEntry {
    pub ray: ReebRay,
    pub ratio: f64,
    pub quotient: Option<QuotientData>,
    pub refused: Option<String>,
    pub k_root: Option<f64>,
    /// `l2` of a second smooth join with the same quotient `n` but a larger `m`.
    pub companion_l2: Option<u64>,
    pub companion_m: Option<u64>,
    /// `max |m Θ - m' Θ'|` against the companion join.
    pub companion_deviation: Option<f64>,
    /// `max |m Θ - 2m Θ''|` with `(m1, m2)` doubled.
    pub doubling_deviation: Option<f64>,
    #[serde(skip)]
    pub m_theta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityStep {
    pub from_ratio: f64,
    pub to_ratio: f64,
    pub max_difference: f64,
    pub difference_quotient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftReport {
    pub join: JoinParams,
    pub grid_size: usize,
    pub entries: Vec<LiftEntry>,
    pub continuity: Vec<ContinuityStep>,
    pub passed: bool,
}

fn smallest_prime_not_dividing(x: u128) -> u64 {
    (2u64..)
        .filter(|p| (2..*p).take_while(|d| d * d <= *p).all(|d| !p.is_multiple_of(d)))
        .find(|p| !x.is_multiple_of(*p as u128))
        .expect("infinitely many primes")
}

fn scaled_theta(params: &ProfileParams, m: u64, grid_size: usize) -> Result<(f64, Vec<f64>)> {
    let profile = build_profile(params, grid_size)?;
    let m = m as f64;
    Ok((
        profile.k_root,
        profile.samples.iter().map(|s| m * s.theta).collect(),
    ))
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// For each ray, builds the profile of its log pair and checks that `m Θ`
/// does not depend on `m`: once against a companion join `l2' = q l2` with
/// a prime `q` chosen so that `s` and `n` are unchanged, and once with
/// `(m1, m2)` doubled. Rays whose log pair is not orbifold Fano are refused.
pub fn sasaki_lift_check(
    join: &JoinParams,
    rays: &[ReebRay],
    r: Option<f64>,
    grid_size: usize,
) -> Result<LiftReport> {
    if !join.base().is_fano() {
        return Err(Error::NotFano {
            label: join.base().label.clone(),
            c1_coeff: join.base().c1_coeff,
        });
    }
    let mut entries = Vec::with_capacity(rays.len());
    for v in rays {
        let mut entry = LiftEntry {
            ray: *v,
            ratio: v.ratio().to_f64(),
            quotient: None,
            refused: None,
            k_root: None,
            companion_l2: None,
            companion_m: None,
            companion_deviation: None,
            doubling_deviation: None,
            m_theta: Vec::new(),
        };
        let (q, params) = match params_for_ray(join, v, r) {
            Ok(x) => x,
            Err(e @ Error::ProductCase { .. }) => {
                entry.refused = Some(e.to_string());
                entries.push(entry);
                continue;
            }
            Err(e) => return Err(e),
        };
        entry.quotient = Some(q);
        if !ricci_box_check(&params) {
            entry.refused = Some("c1^orb(S_n, Δ) is not positive for this ray".into());
            entries.push(entry);
            continue;
        }
        let (k, m_theta) = scaled_theta(&params, q.m, grid_size)?;
        entry.k_root = Some(k);

        let doubled = ProfileParams {
            m1: 2 * params.m1,
            m2: 2 * params.m2,
            ..params
        };
        let (_, doubled_theta) = scaled_theta(&doubled, 2 * q.m, grid_size)?;
        entry.doubling_deviation = Some(max_deviation(&m_theta, &doubled_theta));

        let cross = crate::quotient::cross(join, v).unsigned_abs();
        let avoid = cross * (join.l1() * join.w1() * join.w2() * join.l2()) as u128;
        let prime = smallest_prime_not_dividing(avoid);
        let companion = join.with_l2((join.l2() * prime) as i64)?;
        let (cq, cparams) = params_for_ray(&companion, v, r)?;
        debug_assert_eq!(cq.n, q.n);
        let (_, companion_theta) = scaled_theta(&cparams, cq.m, grid_size)?;
        entry.companion_l2 = Some(companion.l2());
        entry.companion_m = Some(cq.m);
        entry.companion_deviation = Some(max_deviation(&m_theta, &companion_theta));
        entry.m_theta = m_theta;
        entries.push(entry);
    }

    let mut accepted: Vec<&LiftEntry> = entries.iter().filter(|e| e.refused.is_none()).collect();
    accepted.sort_by(|a, b| a.ratio.total_cmp(&b.ratio));
    let continuity = accepted
        .windows(2)
        .map(|w| {
            let diff = max_deviation(&w[0].m_theta, &w[1].m_theta);
            ContinuityStep {
                from_ratio: w[0].ratio,
                to_ratio: w[1].ratio,
                max_difference: diff,
                difference_quotient: diff / (w[1].ratio - w[0].ratio),
            }
        })
        .collect();
    let passed = entries.iter().all(|e| {
        e.refused.is_some()
            || (e.doubling_deviation.unwrap_or(f64::INFINITY) <= LIFT_TOLERANCE
                && e.companion_deviation.unwrap_or(f64::INFINITY) <= LIFT_TOLERANCE)
    });
    Ok(LiftReport {
        join: join.clone(),
        grid_size,
        entries,
        continuity,
        passed,
    })
}
