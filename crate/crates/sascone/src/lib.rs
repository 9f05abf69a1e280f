//! Positivity of the Sasaki cone of Sasaki joins `M_{l1,l2,w}`.
//!
//! Given a join of a Kähler base `N` with a weighted 3-sphere, the crate
//! computes the quotient log pair of each quasi-regular Reeb ray, decides
//! where the basic first Chern class is positive, reports the topological
//! invariants of the join, and builds explicit admissible metrics with
//! positive Ricci form on the quotients.
//!
//! ```
//! use sascone::{positivity_range, validate_join, BaseManifold};
//!
//! let join = validate_join(1, 1, 5, 3, BaseManifold::projective_space(1)).unwrap();
//! assert_eq!(positivity_range(&join).to_string(), "1 < v1/v2 < 5");
//! ```

pub mod admissible;
pub mod cli;
pub mod cone;
pub mod emit;
pub mod error;
pub mod quotient;
pub mod rational;
pub mod replay;
pub mod topology;
pub mod types;

pub use admissible::{build_profile, solve_k, MetricProfile, ProfileParams};
pub use cone::{classify_ray, positivity_range, PositivityRange, TypeVerdict};
pub use error::{Error, Result};
pub use quotient::{orb_fano_predicate, quotient_data, QuotientData};
pub use rational::Rational;
pub use types::{validate_join, BaseManifold, JoinParams, ReebRay};
