//! Independent oracles for the integration tests: the textbook formula for
//! `g` and adaptive Gauss–Kronrod quadrature.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sascone::admissible::ProfileParams;

/// `g(t, k)` straight from its exponential definition.
pub fn g_direct(t: f64, k: f64, m1: u64, m2: u64) -> f64 {
    let (i1, i2) = (1.0 / m1 as f64, 1.0 / m2 as f64);
    if k == 0.0 {
        return (1.0 - t) * i2 - (1.0 + t) * i1;
    }
    2.0 * ((i1 + i2) * (-k * t).exp() - (k.exp() * i1 + (-k).exp() * i2)) / (k.exp() - (-k).exp())
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod value, error estimate and `∫|f|` over `[a, b]`.
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    let mut absolute = GK_WEIGHTS[7] * fc.abs();
    for i in 0..7 {
        let x = h * GK_NODES[i];
        let (left, right) = (f(c - x), f(c + x));
        kronrod += GK_WEIGHTS[i] * (left + right);
        absolute += GK_WEIGHTS[i] * (left.abs() + right.abs());
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * (left + right);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs(), absolute * h.abs())
}

/// Adaptive 15-point Gauss–Kronrod to absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (value, error, absolute) = gk15(f, a, b);
        // below the roundoff floor of the direct formula the estimate stops shrinking
        if error <= tol.max(1024.0 * f64::EPSILON * absolute) || depth == 0 {
            return value;
        }
        let c = 0.5 * (a + b);
        step(f, a, c, 0.5 * tol, depth - 1) + step(f, c, b, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    step(f, a, b, tol, 16)
}

/// `∫_{-1}^{z} g(t, k) p(t) dt` by quadrature.
pub fn f_quadrature(z: f64, k: f64, params: &ProfileParams) -> f64 {
    let integrand = |t: f64| g_direct(t, k, params.m1, params.m2) * params.p(t);
    integrate(&integrand, -1.0, z, 1e-15)
}

/// Size the relative comparisons are taken against when the value itself
/// passes through zero.
pub fn oracle_scale(params: &ProfileParams) -> f64 {
    let p_int = integrate(&|t| params.p(t), -1.0, 1.0, 1e-15);
    (1.0 / params.m1 as f64 + 1.0 / params.m2 as f64) * p_int
}

pub fn relative_error(got: f64, want: f64, scale: f64) -> f64 {
    (got - want).abs() / want.abs().max(scale)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random admissible parameter tuple: `m_i ≤ 9`, `d ≤ 4`,
/// `|r| ∈ (0.05, 0.95)` with the sign of `n`.
pub fn random_params(rng: &mut ChaCha8Rng) -> ProfileParams {
    let m1 = rng.gen_range(1..=9);
    let m2 = rng.gen_range(1..=9);
    let d = rng.gen_range(0..=4);
    let mut n: i64 = rng.gen_range(1..=12);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    let r = rng.gen_range(0.05..0.95) * n.signum() as f64;
    let fano_index = rng.gen_range(-2..=5);
    ProfileParams::new(m1, m2, d, r, n, fano_index).expect("drawn inside the admissible set")
}
