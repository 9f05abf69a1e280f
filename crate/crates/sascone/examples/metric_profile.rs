//! Builds the admissible profile for the ray (3, 2) of M_{4,1,1,1} and
//! prints the sampled F, Θ and Ricci coefficients with the verification
//! report.

use sascone::admissible::{build_profile, params_for_ray};
use sascone::{validate_join, BaseManifold, ReebRay};

fn main() -> sascone::Result<()> {
    let join = validate_join(4, 1, 1, 1, BaseManifold::projective_space(1))?;
    let (quotient, params) = params_for_ray(&join, &ReebRay::new(3, 2)?, None)?;
    println!("quotient: {quotient:?}");
    let profile = build_profile(&params, 11)?;
    println!("k = {:.15}", profile.k_root);
    println!(
        "n = {}, so positivity means n ricci_h > 0 and ricci_v > 0",
        params.n
    );
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "z", "F", "Θ", "ricci_h", "ricci_v"
    );
    for s in &profile.samples {
        println!(
            "{:>6.2} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            s.z, s.f, s.theta, s.ricci_h, s.ricci_v
        );
    }
    let r = &profile.report;
    println!(
        "F(±1) residual {:.1e}, slope residuals ({:.1e}, {:.1e}), box {}, ricci positive {}, passed {}",
        r.f_residual,
        r.slope_left_residual,
        r.slope_right_residual,
        r.box_verdict,
        r.ricci_positive,
        r.passed
    );
    Ok(())
}
