//! Brute-force check of the fiber of `Hom(π, N) → Hom(π, W)` over a fixed `ρ̄`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::lift::{restrict_with, LiftSolver};
use super::{mumford_map, transgression, MumfordMap};
use crate::abelian::AbElement;
use crate::budget::Budget;
use crate::cohomology::{h1, H2};
use crate::cover::{build_cover, h1_cover, Cover};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::group::GAction;
use crate::surface::SurfaceRep;

/// Lifts of `ρ̄` restricting to one bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiBucket {
    pub phi: Vec<u64>,
    pub lifts: u64,
    pub t_classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub genus: usize,
    pub rho_bar: Vec<usize>,
    pub cover_genus: usize,
    pub n_order: usize,
    pub eta: Vec<u64>,
    pub invariants_order: u64,
    pub kernel_order: u64,
    pub h1_eta_order: u64,
    /// `|H¹(W, T)|`, the expected number of `T`-classes per reached bundle.
    pub h1_w_order: u64,
    pub lifts_total: u64,
    pub lifts_mod_t: u64,
    /// Classes under conjugation by the preimage of the centralizer of `im ρ̄`.
    pub lifts_mod_stabilizer: u64,
    pub buckets: Vec<PhiBucket>,
    /// Reached bundles are exactly those with class `η`.
    pub exactness: bool,
    /// Every bucket has `|H¹(W, T)|` classes under `T`-conjugation.
    pub multiplicity: bool,
    /// Bundles of class `η` form an empty set or a coset of `ker c`.
    pub coset: bool,
    /// The affine solver finds lifts for `φ` iff `c(φ) = η`, with matching counts, and its
    /// model evaluates every brute-force lift correctly.
    pub existence: bool,
    pub round_trip: bool,
    /// No `T`-conjugacy class meets two buckets.
    pub refinement: bool,
    pub verdict: bool,
}

impl FiberReport {
    /// Every check, beyond the two the verdict binds to.
    pub fn all_checks(&self) -> bool {
        self.exactness
            && self.multiplicity
            && self.coset
            && self.existence
            && self.round_trip
            && self.refinement
    }
}

pub(crate) fn small(x: &BigUint) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Unsupported(format!("count {x} does not fit in 64 bits")))
}

struct Lift {
    phi: AbElement,
    decoration: AbElement,
    t_canon: Vec<usize>,
    m_canon: Vec<usize>,
}

/// Everything about one cover that does not depend on the extension: the invariant bundles
/// and their classes, read both from the transgressed factor sets and from the linear map.
pub struct FiberContext {
    rho_bar: SurfaceRep,
    cover: Cover,
    sigma: GAction,
    map: MumfordMap,
    classes: BTreeMap<AbElement, Vec<u64>>,
    /// The two readings of the class agree on every invariant bundle.
    consistent: bool,
    h1_w: u64,
}

impl FiberContext {
    pub fn new(rho_bar: &SurfaceRep, sigma: &GAction, h2: &H2, budget: &Budget) -> Result<FiberContext> {
        let cover = build_cover(rho_bar, sigma.source())?;
        let ch = h1_cover(&cover, sigma)?;
        let map = mumford_map(&ch, h2)?;
        let inv = map.invariants();
        budget.check("invariant bundles", small(&inv.order())? as u128)?;
        let mut classes = BTreeMap::new();
        let mut consistent = true;
        for phi in inv.elements() {
            let c = h2.coords(&transgression(&ch, &phi)?)?;
            consistent &= map.class_of(&phi).as_ref() == Some(&c);
            classes.insert(phi, c);
        }
        Ok(FiberContext {
            rho_bar: rho_bar.clone(),
            cover,
            sigma: sigma.clone(),
            map,
            classes,
            consistent,
            h1_w: small(&h1(sigma).order())?,
        })
    }

    pub fn verify(&self, ext: &Extension, h2: &H2, budget: &Budget, workers: usize) -> Result<FiberReport> {
        let a = ext.action();
        if a.target() != self.sigma.target()
            || (0..a.source().order()).any(|w| a.table(w) != self.sigma.table(w))
        {
            return Err(Error::InvalidAction("extension induces a different action".into()));
        }
        let n = ext.group();
        let w = ext.quotient();
        let t = ext.kernel();
        let rho_bar = &self.rho_bar;
        let cover = &self.cover;
        let genus = rho_bar.genus();
        let ng = 2 * genus;
        let eta = ext.class(h2, &ext.canonical_section())?.coords;
        let nt = small(&t.order())? as usize;
        budget.check("fiber tuples", (nt as u128).saturating_pow(ng as u32))?;
        let solver = LiftSolver::new(cover, ext)?;

        let fibers: Vec<Vec<usize>> = rho_bar
            .images
            .iter()
            .map(|&x| (0..n.order()).filter(|&y| ext.project()[y] == x).collect())
            .collect();
        let center = w.centralizer_of(&rho_bar.images);
        let m_set: Vec<usize> = (0..n.order())
            .filter(|&y| center.contains(&ext.project()[y]))
            .collect();
        let canon = |set: &[usize], tuple: &[usize]| -> Vec<usize> {
            set.iter()
                .map(|&g| tuple.iter().map(|&x| n.conjugate(g, x)).collect::<Vec<_>>())
                .min()
                .expect("nonempty")
        };
        let scan = |first: usize| -> Result<Vec<Lift>> {
            let mut out = Vec::new();
            let total = nt.pow((ng - 1) as u32);
            for mut i in 0..total {
                let mut images = vec![fibers[0][first]];
                for f in &fibers[1..] {
                    images.push(f[i % nt]);
                    i /= nt;
                }
                let rho = SurfaceRep { images };
                if !rho.satisfies_relation(n) {
                    continue;
                }
                out.push(Lift {
                    phi: restrict_with(cover, ext, &rho)?,
                    decoration: solver.decoration(&rho)?,
                    t_canon: canon(ext.embed(), &rho.images),
                    m_canon: canon(&m_set, &rho.images),
                });
            }
            Ok(out)
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        let chunks: Vec<Vec<Lift>> =
            pool.install(|| (0..nt).into_par_iter().map(scan).collect::<Result<Vec<_>>>())?;

        let mut buckets: BTreeMap<AbElement, (u64, BTreeSet<Vec<usize>>)> = BTreeMap::new();
        let mut orbit_phi: BTreeMap<Vec<usize>, AbElement> = BTreeMap::new();
        let mut m_orbits = BTreeSet::new();
        let mut refinement = true;
        let mut affine_model = true;
        let mut lifts_total = 0u64;
        let zero_relator = t.zero().0;
        for lift in chunks.into_iter().flatten() {
            lifts_total += 1;
            let mut expected = lift.phi.0.clone();
            expected.extend_from_slice(&zero_relator);
            affine_model &= solver.evaluate(&lift.decoration).0 == expected;
            if let Some(prev) = orbit_phi.insert(lift.t_canon.clone(), lift.phi.clone()) {
                refinement &= prev == lift.phi;
            }
            m_orbits.insert(lift.m_canon);
            let b = buckets.entry(lift.phi).or_default();
            b.0 += 1;
            b.1.insert(lift.t_canon);
        }
        let multiplicity = buckets.values().all(|(_, s)| s.len() as u64 == self.h1_w);

        let eta_set: BTreeSet<AbElement> = self
            .classes
            .iter()
            .filter(|(_, c)| **c == eta)
            .map(|(phi, _)| phi.clone())
            .collect();
        let kernel = self.map.kernel();
        let kernel_order = small(&kernel.order())?;
        let mut coset = self.consistent;
        if let Some(first) = eta_set.iter().next() {
            let amb = kernel.ambient();
            coset &= eta_set.len() as u64 == kernel_order
                && eta_set.iter().all(|x| kernel.contains(&amb.sub(x, first)));
        }
        coset &= match self.map.fiber(&eta) {
            Some(c) => small(&c.order())? == eta_set.len() as u64 && eta_set.iter().all(|x| c.contains(x)),
            None => eta_set.is_empty(),
        };
        let reached: BTreeSet<AbElement> = buckets.keys().cloned().collect();
        let exactness = reached == eta_set;

        let mut existence = affine_model;
        for phi in self.classes.keys() {
            existence &= solver.solvable(phi)? == eta_set.contains(phi);
        }
        let mut round_trip = true;
        for (phi, (count, orbits)) in &buckets {
            let Some(set) = solver.solve(phi)? else {
                existence = false;
                continue;
            };
            existence &= small(&set.count())? == *count && small(&set.classes())? == orbits.len() as u64;
            for u in set.representatives()? {
                let rho = solver.representation(&u)?;
                round_trip &= rho.compose(ext.project()) == *rho_bar
                    && restrict_with(cover, ext, &rho)? == *phi;
            }
        }

        let lifts_mod_t = buckets.values().map(|(_, s)| s.len() as u64).sum();
        Ok(FiberReport {
            genus,
            rho_bar: rho_bar.images.clone(),
            cover_genus: cover.cover_genus(),
            n_order: n.order(),
            eta,
            invariants_order: self.classes.len() as u64,
            kernel_order,
            h1_eta_order: eta_set.len() as u64,
            h1_w_order: self.h1_w,
            lifts_total,
            lifts_mod_t,
            lifts_mod_stabilizer: m_orbits.len() as u64,
            buckets: buckets
                .into_iter()
                .map(|(phi, (lifts, s))| PhiBucket {
                    phi: phi.0,
                    lifts,
                    t_classes: s.len() as u64,
                })
                .collect(),
            exactness,
            multiplicity,
            coset,
            existence,
            round_trip,
            refinement,
            verdict: exactness && multiplicity,
        })
    }
}

pub fn verify_fiber_theorem(
    ext: &Extension,
    rho_bar: &SurfaceRep,
    h2: &H2,
    budget: &Budget,
    workers: usize,
) -> Result<FiberReport> {
    FiberContext::new(rho_bar, ext.action(), h2, budget)?.verify(ext, h2, budget, workers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::cohomology::{h2, Cochain};
    use crate::extension::build_extension;
    use crate::group::{FiniteGroup, GAction};

    #[test]
    fn z4_and_klein_over_z2() {
        let w = FiniteGroup::cyclic(2).unwrap();
        let t = FinAbGroup::cyclic(2);
        let sigma = GAction::trivial(&w, &t).unwrap();
        let h = h2(&sigma, &Budget::default()).unwrap();
        let rho = SurfaceRep::new(&w, vec![1, 0]).unwrap();
        let mut reached = Vec::new();
        for c in 0..2u64 {
            let f = Cochain::from_fn(2, 2, |a| AbElement(vec![c * (a[0] * a[1]) as u64]));
            let ext = build_extension(&sigma, &f).unwrap();
            let r = verify_fiber_theorem(&ext, &rho, &h, &Budget::default(), 2).unwrap();
            assert!(r.all_checks() && r.verdict, "{r:?}");
            assert_eq!(r.eta, vec![c]);
            assert_eq!(r.h1_eta_order, r.kernel_order);
            assert_eq!(r.lifts_total, 4);
            reached.extend(r.buckets.iter().map(|b| b.phi.clone()));
        }
        reached.sort();
        reached.dedup();
        assert_eq!(reached.len(), 4);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let w = FiniteGroup::symmetric(2).unwrap();
        let (sd, sigma) = crate::group::weyl_b(2).unwrap();
        let ext = Extension::new(sd.group, sigma.target(), &w, sd.embed, sd.project).unwrap();
        let h = h2(&sigma, &Budget::default()).unwrap();
        let rho = SurfaceRep::new(&w, vec![1, 0]).unwrap();
        let a = verify_fiber_theorem(&ext, &rho, &h, &Budget::default(), 1).unwrap();
        let b = verify_fiber_theorem(&ext, &rho, &h, &Budget::default(), 4).unwrap();
        assert_eq!(a, b);
        assert!(a.all_checks());
    }
}
