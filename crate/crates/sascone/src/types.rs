//! Domain types shared by every module: the base of the join, the join
//! parameters and quasi-regular Reeb rays in the w-cone.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The regular quotient N of the Sasaki manifold M, recorded through its
/// complex dimension and the coefficient of `[ω_N]` in `c1(N)`.
///
/// Only the monotone case `c1(N) = b0 [ω_N]` is representable, so a
/// positive `c1_coeff` is the Fano index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseManifold {
    pub dim_c: u32,
    pub c1_coeff: i64,
    pub label: String,
}

impl BaseManifold {
    pub fn new(dim_c: u32, c1_coeff: i64, label: impl Into<String>) -> Result<Self> {
        if dim_c == 0 {
            return Err(Error::NonPositive {
                what: "dim_c",
                value: 0,
            });
        }
        Ok(BaseManifold {
            dim_c,
            c1_coeff,
            label: label.into(),
        })
    }

    /// `CP^p` with Fano index `p + 1`.
    pub fn projective_space(p: u32) -> Self {
        assert!(p >= 1, "CP^0 is not a valid base");
        BaseManifold {
            dim_c: p,
            c1_coeff: p as i64 + 1,
            label: format!("CP^{p}"),
        }
    }

    /// Riemann surface of genus `g`; `c1 = (2 - 2g) [ω]`.
    pub fn riemann_surface(genus: u32) -> Self {
        BaseManifold {
            dim_c: 1,
            c1_coeff: 2 - 2 * genus as i64,
            label: format!("Sigma_{genus}"),
        }
    }

    pub fn is_fano(&self) -> bool {
        self.c1_coeff > 0
    }

    /// The Fano index, if any.
    pub fn fano_index(&self) -> Option<u64> {
        self.is_fano().then_some(self.c1_coeff as u64)
    }

    /// True when the invariants agree with those of `CP^p`.
    pub fn is_projective_space(&self, p: u32) -> bool {
        self.dim_c == p && self.c1_coeff == p as i64 + 1
    }
}

impl FromStr for BaseManifold {
    type Err = Error;

    /// `cp<p>` / `CP^<p>`, `sigma<g>` / `Sigma_<g>`, or `custom:<dim>:<c1>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "base",
            input: s.to_string(),
        };
        let lower = s.trim().to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("custom:") {
            let (dim, c1) = rest.split_once(':').ok_or_else(bad)?;
            let dim: u32 = dim.parse().map_err(|_| bad())?;
            let c1: i64 = c1.parse().map_err(|_| bad())?;
            return BaseManifold::new(dim, c1, format!("custom(d={dim},c1={c1})"));
        }
        if let Some(rest) = lower.strip_prefix("cp") {
            let p: u32 = rest.trim_start_matches('^').parse().map_err(|_| bad())?;
            if p == 0 {
                return Err(bad());
            }
            return Ok(BaseManifold::projective_space(p));
        }
        if let Some(rest) = lower.strip_prefix("sigma") {
            let g: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
            return Ok(BaseManifold::riemann_surface(g));
        }
        Err(bad())
    }
}

/// Parameters `(l1, l2, w1, w2)` of the join `M ⋆_{l1,l2} S³_w`.
///
/// Always canonical: `w1 >= w2`, `gcd(l1, l2) = gcd(w1, w2) = 1`. The
/// smoothness condition `gcd(l2, l1 w1 w2) = 1` holds unless the value was
/// built with [`validate_join_relaxed`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawJoin")]
pub struct JoinParams {
    base: BaseManifold,
    l1: u64,
    l2: u64,
    w1: u64,
    w2: u64,
    smooth: bool,
}

impl JoinParams {
    pub fn base(&self) -> &BaseManifold {
        &self.base
    }
    pub fn l1(&self) -> u64 {
        self.l1
    }
    pub fn l2(&self) -> u64 {
        self.l2
    }
    pub fn w1(&self) -> u64 {
        self.w1
    }
    pub fn w2(&self) -> u64 {
        self.w2
    }
    /// `|w| = w1 + w2`.
    pub fn w_total(&self) -> u64 {
        self.w1 + self.w2
    }
    pub fn is_smooth(&self) -> bool {
        self.smooth
    }
    /// `w1 / w2`, the ratio of the join's own Reeb field.
    pub fn w_ratio(&self) -> Rational {
        Rational::new(self.w1 as i128, self.w2 as i128)
    }
    /// The same join with a different `l2`, validated the same way.
    pub fn with_l2(&self, l2: i64) -> Result<JoinParams> {
        let build = if self.smooth {
            validate_join
        } else {
            validate_join_relaxed
        };
        build(
            self.l1 as i64,
            l2,
            self.w1 as i64,
            self.w2 as i64,
            self.base.clone(),
        )
    }
}

impl fmt::Display for JoinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_{{{},{},{},{}}} over {}",
            self.l1, self.l2, self.w1, self.w2, self.base.label
        )
    }
}

#[derive(Deserialize)]
struct RawJoin {
    base: BaseManifold,
    l1: i64,
    l2: i64,
    w1: i64,
    w2: i64,
    #[serde(default = "default_smooth")]
    smooth: bool,
}

fn default_smooth() -> bool {
    true
}

impl TryFrom<RawJoin> for JoinParams {
    type Error = Error;

    fn try_from(raw: RawJoin) -> Result<Self> {
        build_join(raw.l1, raw.l2, raw.w1, raw.w2, raw.base, raw.smooth)
    }
}

fn positive(what: &'static str, value: i64) -> Result<u64> {
    if value <= 0 {
        Err(Error::NonPositive { what, value })
    } else {
        Ok(value as u64)
    }
}

fn build_join(
    l1: i64,
    l2: i64,
    w1: i64,
    w2: i64,
    base: BaseManifold,
    require_smooth: bool,
) -> Result<JoinParams> {
    let l1 = positive("l1", l1)?;
    let l2 = positive("l2", l2)?;
    let mut w1 = positive("w1", w1)?;
    let mut w2 = positive("w2", w2)?;
    if l1.gcd(&l2) != 1 {
        return Err(Error::NotCoprime {
            what: "(l1, l2)",
            a: l1,
            b: l2,
        });
    }
    if w1.gcd(&w2) != 1 {
        return Err(Error::NotCoprime {
            what: "(w1, w2)",
            a: w1,
            b: w2,
        });
    }
    if w1 < w2 {
        std::mem::swap(&mut w1, &mut w2);
    }
    let product = l1 * w1 * w2;
    let g = l2.gcd(&product);
    let smooth = g == 1;
    if require_smooth && !smooth {
        return Err(Error::SmoothnessViolation { l2, product, gcd: g });
    }
    Ok(JoinParams {
        base,
        l1,
        l2,
        w1,
        w2,
        smooth,
    })
}

/// Validates raw join parameters, swapping `w` into `w1 >= w2`.
pub fn validate_join(l1: i64, l2: i64, w1: i64, w2: i64, base: BaseManifold) -> Result<JoinParams> {
    build_join(l1, l2, w1, w2, base, true)
}

/// Like [`validate_join`] but admits joins that fail `gcd(l2, l1 w1 w2) = 1`.
///
/// The positivity range and the integer invariants are still defined for
/// such parameter tuples; the resulting space is an orbifold rather than a
/// manifold.
pub fn validate_join_relaxed(l1: i64, l2: i64, w1: i64, w2: i64, base: BaseManifold) -> Result<JoinParams> {
    build_join(l1, l2, w1, w2, base, false)
}

/// A quasi-regular ray `v = (v1, v2)` in the w-cone, with coprime components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReebRay {
    v1: u64,
    v2: u64,
}

impl ReebRay {
    pub fn new(v1: i64, v2: i64) -> Result<Self> {
        let v1 = positive("v1", v1)?;
        let v2 = positive("v2", v2)?;
        if v1.gcd(&v2) != 1 {
            return Err(Error::NotCoprime {
                what: "(v1, v2)",
                a: v1,
                b: v2,
            });
        }
        Ok(ReebRay { v1, v2 })
    }

    /// Divides out the common factor; rays are homothety classes.
    pub fn reduced(v1: i64, v2: i64) -> Result<Self> {
        let a = positive("v1", v1)?;
        let b = positive("v2", v2)?;
        let g = a.gcd(&b);
        ReebRay::new((a / g) as i64, (b / g) as i64)
    }

    /// The ray through a positive rational slope `v1/v2`.
    pub fn from_ratio(ratio: Rational) -> Result<Self> {
        if ratio.signum() <= 0 {
            return Err(Error::Parse {
                what: "positive ratio v1/v2",
                input: ratio.to_string(),
            });
        }
        ReebRay::new(ratio.num() as i64, ratio.den() as i64)
    }

    pub fn v1(&self) -> u64 {
        self.v1
    }
    pub fn v2(&self) -> u64 {
        self.v2
    }
    pub fn ratio(&self) -> Rational {
        Rational::new(self.v1 as i128, self.v2 as i128)
    }
}

impl fmt::Display for ReebRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v1, self.v2)
    }
}
