//! Integer invariants of the join: the contact first Chern class, the spin
//! condition, the torsion of `H^4`, the `(k, j, l)` bouquet labels and the
//! bound `B` on the w-subcone.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::JoinParams;

/// Labels `(k, j, l)` of the contact bundle of an `S³` bundle over `S²`,
/// together with `i = g(j) = gcd(l, 2(k - j))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BouquetLabel {
    pub k: u64,
    pub j: u64,
    pub l: u64,
    pub i: u64,
}

/// Coefficient of `γ` in `c1(D_{l,w}) = (b0 l2 - l1 |w|) γ` for a monotone base.
pub fn contact_c1_coeff(join: &JoinParams) -> i64 {
    join.base().c1_coeff * join.l2() as i64 - (join.l1() * join.w_total()) as i64
}

fn require_sphere(p: u32, join: &JoinParams) -> Result<()> {
    let base = join.base();
    if base.is_projective_space(p) {
        Ok(())
    } else {
        Err(Error::BaseMismatch {
            p,
            label: base.label.clone(),
            dim_c: base.dim_c,
            c1_coeff: base.c1_coeff,
        })
    }
}

/// `l2 (p + 1) - l1 |w|` for the join `S^{2p+1} ⋆_{l1,l2} S³_w`.
pub fn c1_gamma_coeff_sphere_join(p: u32, join: &JoinParams) -> Result<i64> {
    require_sphere(p, join)?;
    Ok(contact_c1_coeff(join))
}

/// `w2(M)` vanishes exactly when the `c1` coefficient is even.
pub fn spin_check(p: u32, join: &JoinParams) -> Result<bool> {
    Ok(c1_gamma_coeff_sphere_join(p, join)?.is_even())
}

/// `w1 w2 l1²`, the order of the torsion in `H^4` of a sphere join with
/// `p > 1`. The number is returned for every join; see
/// [`torsion_is_topological`].
pub fn torsion_order(join: &JoinParams) -> u64 {
    join.w1() * join.w2() * join.l1() * join.l1()
}

/// Whether [`torsion_order`] is a cohomology invariant for this base.
pub fn torsion_is_topological(join: &JoinParams) -> bool {
    join.base().dim_c > 1
}

/// `k = l1 |w| / 2`, `j = l1 w2`, `l = l2` and `i = gcd(l, 2(k - j))`.
pub fn bouquet_label(join: &JoinParams) -> Result<BouquetLabel> {
    let total = join.l1() * join.w_total();
    if total.is_odd() {
        return Err(Error::OddTotal { total });
    }
    let k = total / 2;
    let j = join.l1() * join.w2();
    let l = join.l2();
    Ok(BouquetLabel {
        k,
        j,
        l,
        i: g_map(k, j, l),
    })
}

/// `g(j) = gcd(l, 2(k - j))`.
pub fn g_map(k: u64, j: u64, l: u64) -> u64 {
    l.gcd(&(2 * (k - j)))
}

/// `{ j in 1..=k : g(j) = i }`.
pub fn bouquet_level_set(k: u64, l: u64, i: u64) -> BTreeSet<u64> {
    (1..=k).filter(|&j| g_map(k, j, l) == i).collect()
}

/// `B = l1 w2`, the bound restricted to the w-subcone; only defined over a
/// Fano base.
pub fn b_invariant_wcone(join: &JoinParams) -> Result<u64> {
    if !join.base().is_fano() {
        return Err(Error::NotFano {
            label: join.base().label.clone(),
            c1_coeff: join.base().c1_coeff,
        });
    }
    Ok(join.l1() * join.w2())
}

/// All integer invariants of a join in one record. Entries that do not
/// apply to the base carry `None` and a note.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub join: JoinParams,
    pub contact_c1_coeff: i64,
    pub spin: Option<bool>,
    pub torsion_order: u64,
    pub torsion_is_topological: bool,
    pub bouquet: Option<BouquetLabel>,
    pub b_invariant: Option<u64>,
    pub notes: Vec<String>,
}

pub fn invariant_report(join: &JoinParams) -> InvariantReport {
    let base = join.base();
    let mut notes = Vec::new();
    let sphere_p = base.is_projective_space(base.dim_c).then_some(base.dim_c);
    let spin = sphere_p.map(|p| spin_check(p, join).expect("base checked above"));
    if spin.is_none() {
        notes.push("spin check needs a sphere join (base CP^p)".to_string());
    }
    let torsion_is_topological = torsion_is_topological(join);
    if !torsion_is_topological {
        notes.push("torsion order w1*w2*l1^2 is only a cohomology invariant for p > 1".to_string());
    }
    let bouquet = if base.is_projective_space(1) {
        match bouquet_label(join) {
            Ok(label) => Some(label),
            Err(e) => {
                notes.push(e.to_string());
                None
            }
        }
    } else {
        notes.push("bouquet labels not applicable (base is not CP^1)".to_string());
        None
    };
    let b_invariant = match b_invariant_wcone(join) {
        Ok(b) => Some(b),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    if !join.is_smooth() {
        notes.push("gcd(l2, l1*w1*w2) != 1: the join is not smooth".to_string());
    }
    InvariantReport {
        join: join.clone(),
        contact_c1_coeff: contact_c1_coeff(join),
        spin,
        torsion_order: torsion_order(join),
        torsion_is_topological,
        bouquet,
        b_invariant,
        notes,
    }
}
