//! The log pair of a quasi-regular ray: ramification indices, the degree n
//! and the sign of the orbifold first Chern class.

use sascone::quotient::orb_c1_report;
use sascone::{orb_fano_predicate, quotient_data, validate_join, BaseManifold, ReebRay};

fn main() -> sascone::Result<()> {
    let join = validate_join(1, 1, 5, 3, BaseManifold::projective_space(1))?;
    for (v1, v2) in [(2, 1), (3, 2), (1, 1), (7, 1)] {
        let v = ReebRay::new(v1, v2)?;
        let q = quotient_data(&join, &v)?;
        let report = orb_c1_report(&join, &v, &q)?;
        println!(
            "v = ({v1}, {v2}): n = {:>3}, (m1, m2) = ({}, {}), A = {}, C = {}, orbifold Fano: {}",
            q.n,
            q.m1,
            q.m2,
            report.a,
            report.c,
            orb_fano_predicate(&join, &v)
        );
    }
    Ok(())
}
