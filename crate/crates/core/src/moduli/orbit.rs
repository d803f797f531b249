//! `W` acting on `T`-bundles over the base: extension of structure group to `N` identifies
//! exactly the bundles in one `W`-orbit.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::fiber::small;
use crate::abelian::AbElement;
use crate::budget::Budget;
use crate::error::Result;
use crate::extension::Extension;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub genus: usize,
    pub w_order: usize,
    pub n_order: usize,
    pub bundles: u64,
    /// Classes of `ι∘E` under `N`-conjugation.
    pub n_classes: u64,
    pub w_orbits: u64,
    /// `orbit size → number of orbits`.
    pub orbit_sizes: BTreeMap<usize, u64>,
    /// Bundles fixed by some nontrivial element of `W`.
    pub fixed_locus: u64,
    /// `ι∘E ~ ι∘E′` exactly when `E′ = σ(w)∘E` for some `w`.
    pub transitive: bool,
    pub free_orbit_exists: bool,
    pub verdict: bool,
}

pub fn weyl_orbit_check(genus: usize, ext: &Extension, budget: &Budget) -> Result<OrbitReport> {
    let t = ext.kernel();
    let n = ext.group();
    let w = ext.quotient();
    let sigma = ext.action();
    let nt = small(&t.order())? as usize;
    let ng = 2 * genus;
    let bundles = (nt as u128).saturating_pow(ng as u32);
    budget.check("bundles on the base", bundles * n.order() as u128)?;
    let amb = t.power(ng);
    let mut by_n: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut by_w: BTreeMap<AbElement, usize> = BTreeMap::new();
    let mut pairs = BTreeSet::new();
    let mut w_sizes: BTreeMap<usize, u64> = BTreeMap::new();
    let mut fixed_locus = 0u64;
    for e in amb.elements() {
        let parts: Vec<AbElement> = (0..ng)
            .map(|k| AbElement(e.0[k * t.rank()..(k + 1) * t.rank()].to_vec()))
            .collect();
        let images: Vec<usize> = parts.iter().map(|p| ext.embed_element(p)).collect();
        let n_canon = (0..n.order())
            .map(|g| images.iter().map(|&x| n.conjugate(g, x)).collect::<Vec<_>>())
            .min()
            .expect("nonempty");
        let twists: Vec<AbElement> = (0..w.order())
            .map(|x| AbElement(parts.iter().flat_map(|p| sigma.apply(x, p).0).collect()))
            .collect();
        if twists.iter().filter(|y| **y == e).count() > 1 {
            fixed_locus += 1;
        }
        let w_canon = twists.into_iter().min().expect("nonempty");
        let next = by_n.len();
        let a = *by_n.entry(n_canon).or_insert(next);
        let next = by_w.len();
        let b = *by_w.entry(w_canon).or_insert(next);
        pairs.insert((a, b));
        *w_sizes.entry(b).or_default() += 1;
    }
    // same partition iff the class pairs form a bijection
    let transitive = pairs.len() == by_n.len() && by_n.len() == by_w.len();
    let free = fixed_locus < bundles as u64;
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for &c in w_sizes.values() {
        *sizes.entry(c as usize).or_default() += 1;
    }
    Ok(OrbitReport {
        genus,
        w_order: w.order(),
        n_order: n.order(),
        bundles: bundles as u64,
        n_classes: by_n.len() as u64,
        w_orbits: by_w.len() as u64,
        orbit_sizes: sizes,
        fixed_locus,
        transitive,
        free_orbit_exists: free,
        verdict: transitive && (free || fixed_locus == bundles as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::group::{semidirect, weyl_b, FiniteGroup, GAction};

    #[test]
    fn s3_over_inversion_pairs_e_with_minus_e() {
        let w = FiniteGroup::cyclic(2).unwrap();
        let t = FinAbGroup::cyclic(3);
        let sigma = GAction::via_character(&w, &t, &[false, true]).unwrap();
        let sd = semidirect(&t, &w, &sigma).unwrap();
        let ext = Extension::new(sd.group, &t, &w, sd.embed, sd.project).unwrap();
        let r = weyl_orbit_check(1, &ext, &Budget::default()).unwrap();
        assert!(r.verdict && r.transitive && r.free_orbit_exists);
        assert_eq!(r.w_orbits, 5);
        assert_eq!(r.orbit_sizes, BTreeMap::from([(1, 1), (2, 4)]));
    }

    #[test]
    fn b2_swaps_line_bundles() {
        let (sd, sigma) = weyl_b(2).unwrap();
        let w = sigma.source().clone();
        let ext = Extension::new(sd.group, sigma.target(), &w, sd.embed, sd.project).unwrap();
        let r = weyl_orbit_check(1, &ext, &Budget::default()).unwrap();
        assert!(r.verdict);
        // (L₁, L₂) with L₁ = L₂: 4 fixed bundles, the other 12 pair up
        assert_eq!(r.fixed_locus, 4);
        assert_eq!(r.orbit_sizes, BTreeMap::from([(1, 4), (2, 6)]));
    }

    #[test]
    fn trivial_w_gives_singletons() {
        let w = FiniteGroup::trivial();
        let t = FinAbGroup::cyclic(2);
        let sigma = GAction::trivial(&w, &t).unwrap();
        let sd = semidirect(&t, &w, &sigma).unwrap();
        let ext = Extension::new(sd.group, &t, &w, sd.embed, sd.project).unwrap();
        let r = weyl_orbit_check(1, &ext, &Budget::default()).unwrap();
        assert_eq!(r.orbit_sizes, BTreeMap::from([(1, 4)]));
        assert!(r.transitive);
    }
}
