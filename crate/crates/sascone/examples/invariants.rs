//! Topological invariants of the three S^5 joins sharing the cohomology ring
//! Z[x,y]/(12x^2, x^3, x^2y, y^2), for a few values of l2.

use sascone::topology::{c1_gamma_coeff_sphere_join, spin_check, torsion_order};
use sascone::{validate_join, BaseManifold};

fn main() -> sascone::Result<()> {
    let cp2 = BaseManifold::projective_space(2);
    println!("{:<18} {:>6} {:>6} {:>8}", "join", "c1/γ", "spin", "torsion");
    for (l1, w1, w2) in [(1, 12, 1), (1, 4, 3), (2, 3, 1)] {
        for l2 in [1, 5, 7, 11] {
            let join = validate_join(l1, l2, w1, w2, cp2.clone())?;
            println!(
                "{:<18} {:>6} {:>6} {:>8}",
                format!("M_{{{l1},{l2},{w1},{w2}}}"),
                c1_gamma_coeff_sphere_join(2, &join)?,
                spin_check(2, &join)?,
                torsion_order(&join),
            );
        }
    }
    Ok(())
}
