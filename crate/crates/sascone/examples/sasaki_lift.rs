//! m Θ does not depend on m: compares each ray's profile with a doubled
//! copy and with a companion join of larger l2, then steps between rays.

use sascone::admissible::sasaki_lift_check;
use sascone::{validate_join, BaseManifold, ReebRay};

fn main() -> sascone::Result<()> {
    let join = validate_join(1, 1, 5, 3, BaseManifold::projective_space(1))?;
    let rays = [
        ReebRay::new(3, 2)?,
        ReebRay::new(2, 1)?,
        ReebRay::new(5, 2)?,
        ReebRay::new(7, 1)?,
    ];
    let report = sasaki_lift_check(&join, &rays, None, 101)?;
    for e in &report.entries {
        match &e.refused {
            Some(reason) => println!("v = ({}, {}): refused, {reason}", e.ray.v1(), e.ray.v2()),
            None => println!(
                "v = ({}, {}): doubling deviation {:.1e}, companion l2 = {:?} deviation {:.1e}",
                e.ray.v1(),
                e.ray.v2(),
                e.doubling_deviation.unwrap_or(f64::NAN),
                e.companion_l2,
                e.companion_deviation.unwrap_or(f64::NAN),
            ),
        }
    }
    for step in &report.continuity {
        println!(
            "{:.4} -> {:.4}: max |Δ(mΘ)| = {:.4}",
            step.from_ratio, step.to_ratio, step.max_difference
        );
    }
    println!("passed: {}", report.passed);
    Ok(())
}
