//! When is the whole w-Sasaki cone positive? Compares the c1(D) rules with
//! the computed range for M_{1,l2,12,1} over CP^2.

use sascone::cone::whole_cone_rules;
use sascone::types::validate_join_relaxed;
use sascone::BaseManifold;

fn main() -> sascone::Result<()> {
    let cp2 = BaseManifold::projective_space(2);
    for l2 in 1..=6 {
        let join = validate_join_relaxed(1, l2, 12, 1, cp2.clone())?;
        let r = whole_cone_rules(2, &join)?;
        println!(
            "l2 = {l2}{}: c1(D)/γ = {:>3}, range {}, consistent {}",
            if join.is_smooth() { " " } else { "*" },
            r.c1_gamma_coeff,
            r.range,
            r.consistent
        );
    }
    println!("* fails gcd(l2, l1 w1 w2) = 1");
    Ok(())
}
