use thiserror::Error;

/// Everything that can go wrong while building or evaluating a join.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be a positive integer, got {value}")]
    NonPositive { what: &'static str, value: i64 },

    #[error("{what} = ({a}, {b}) are not relatively prime")]
    NotCoprime { what: &'static str, a: u64, b: u64 },

    #[error("smoothness requires gcd(l2, l1*w1*w2) = 1, but gcd({l2}, {product}) = {gcd}")]
    SmoothnessViolation { l2: u64, product: u64, gcd: u64 },

    #[error("base {label} (dim {dim_c}, c1 {c1_coeff}) is not CP^{p}")]
    BaseMismatch {
        p: u32,
        label: String,
        dim_c: u32,
        c1_coeff: i64,
    },

    #[error("l1*(w1+w2) = {total} is odd, bouquet labels are undefined")]
    OddTotal { total: u64 },

    #[error("base {label} is not Fano (c1 coefficient {c1_coeff})")]
    NotFano { label: String, c1_coeff: i64 },

    #[error("ray ({v1}, {v2}) is proportional to w, the quotient is a product")]
    ProductCase { v1: u64, v2: u64 },

    #[error("volume must be positive, got {0}")]
    NonpositiveVolume(f64),

    #[error("invalid profile parameters: {0}")]
    InvalidProfile(String),

    #[error("no sign change of f(k) for |k| <= {limit}")]
    BracketFailure { limit: f64 },

    #[error("root of f(k) did not reach tolerance: |f({k})| = {residual} > {tolerance}")]
    RootNotConverged { k: f64, residual: f64, tolerance: f64 },

    #[error("Ricci box holds but sample at z = {z} violates {which}")]
    BoxViolation { z: f64, which: &'static str },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    /// Process exit code: 2 for bad input, 3 for a failed mathematical precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonPositive { .. }
            | Error::NotCoprime { .. }
            | Error::SmoothnessViolation { .. }
            | Error::InvalidProfile(_)
            | Error::Parse { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
