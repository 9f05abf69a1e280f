//! Bouquet labels (k, j, l, i) of joins over CP^1 and the level sets of
//! g(j) = gcd(l, 2(k - j)).

use sascone::topology::{bouquet_label, bouquet_level_set, g_map};
use sascone::{validate_join, BaseManifold};

fn main() -> sascone::Result<()> {
    let cp1 = BaseManifold::projective_space(1);
    for l2 in [1, 3] {
        println!("l2 = {l2}");
        for (l1, w1, w2) in [(4, 1, 1), (1, 5, 3), (2, 3, 1), (1, 7, 1)] {
            let Ok(join) = validate_join(l1, l2, w1, w2, cp1.clone()) else {
                continue;
            };
            let label = bouquet_label(&join)?;
            println!("    {join}: k = {}, j = {}, g(j) = {}", label.k, label.j, label.i);
        }
        let values: std::collections::BTreeSet<u64> = (1..=4).map(|j| g_map(4, j, l2 as u64)).collect();
        for i in values {
            println!("    g^-1({i}) = {:?}", bouquet_level_set(4, l2 as u64, i));
        }
    }
    Ok(())
}
