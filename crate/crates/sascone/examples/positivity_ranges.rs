//! Positivity ranges of the four joins in the 4-bouquet on S^2 x S^3 and
//! the type of a handful of rays in each.

use sascone::cone::classify;
use sascone::{positivity_range, validate_join, BaseManifold, Rational};

fn main() -> sascone::Result<()> {
    let cp1 = BaseManifold::projective_space(1);
    let rays = ["1/1", "3/2", "3/1", "6/1"];
    for (l1, w1, w2) in [(4, 1, 1), (1, 5, 3), (2, 3, 1), (1, 7, 1)] {
        let join = validate_join(l1, 1, w1, w2, cp1.clone())?;
        println!("{join}: {}", positivity_range(&join));
        for ray in rays {
            let ratio: Rational = ray.parse()?;
            let c = classify(&join, ratio, Rational::ZERO);
            println!("    v1/v2 = {ray:<4} {}", c.verdict);
        }
    }
    Ok(())
}
