//! The dihedral and Weyl-group families.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::fiber::small;
use super::lift::LiftSolver;
use super::mumford_map;
use crate::abelian::{AbElement, FinAbGroup, Subgroup};
use crate::budget::Budget;
use crate::cohomology::h2;
use crate::cover::{build_cover, h1_cover, CoverCohomology};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::group::{semidirect, weyl_b, weyl_d, FiniteGroup, GAction, SemiDirect};
use crate::surface::{surjections, SurfaceRep};

fn extension_of(sd: SemiDirect, t: &FinAbGroup, w: &FiniteGroup) -> Result<Extension> {
    Extension::new(sd.group, t, w, sd.embed, sd.project)
}

/// Elements of `H¹` fixed by every element of `gens`, found by testing each one.
fn brute_invariants(ch: &CoverCohomology, gens: &[usize], budget: &Budget) -> Result<BTreeSet<AbElement>> {
    budget.check("bundles on the cover", small(&ch.h1().order())? as u128)?;
    Ok(ch
        .h1()
        .elements()
        .filter(|x| gens.iter().all(|&w| ch.twisted_action(w, x) == *x))
        .collect())
}

fn as_set(s: &Subgroup) -> BTreeSet<AbElement> {
    s.elements().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaCase {
    pub alpha: Vec<u64>,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DihedralReport {
    pub n: u64,
    pub genus: usize,
    pub cover_genus: usize,
    pub h1_order: u64,
    pub fixed_order: u64,
    pub anti_fixed_order: u64,
    pub expected_fixed: u64,
    pub expected_anti_fixed: u64,
    /// Fixed and anti-fixed parts meet trivially and their orders multiply to `|H¹|`.
    pub transverse: bool,
    /// The fixed part equals the pullback of `Hom(π, Z/n)`.
    pub fixed_is_pullback: bool,
    /// The linear-algebra eigenspaces agree with element-by-element testing.
    pub brute_force_agrees: bool,
    /// `total group → number of α`.
    pub total_groups: BTreeMap<String, u64>,
    pub mismatches: Vec<AlphaCase>,
    pub verdict: bool,
}

fn image_label(n: &FiniteGroup, rho: &SurfaceRep) -> String {
    let image = n.generated(&rho.images);
    let abelian = rho
        .images
        .iter()
        .all(|&a| rho.images.iter().all(|&b| n.mul(a, b) == n.mul(b, a)));
    match (image.len(), abelian) {
        (2, _) => "Z/2".into(),
        (k, true) => format!("Z/2 x Z/{}", k / 2),
        (k, false) => format!("D{k}"),
    }
}

/// The double cover `Y` given by `ρ̄₂` and bundles with `Z/n` coefficients, `n` odd.
pub fn dihedral_example(n: u64, rho2: &SurfaceRep, budget: &Budget) -> Result<DihedralReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Unsupported(format!("n = {n}: need an odd n ≥ 3")));
    }
    let w = FiniteGroup::cyclic(2)?;
    let t = FinAbGroup::cyclic(n);
    let genus = rho2.genus();
    let cover = build_cover(rho2, &w)?;
    let plain = GAction::trivial(&w, &t)?;
    let inversion = GAction::via_character(&w, &t, &[false, true])?;
    let ch_plain = h1_cover(&cover, &plain)?;
    let ch_twisted = h1_cover(&cover, &inversion)?;
    let fixed = ch_plain.invariants();
    // twisted invariants are the plain −1 eigenspace
    let anti = ch_twisted.invariants();
    let h1_order = small(&ch_plain.h1().order())?;
    let fixed_order = small(&fixed.order())?;
    let anti_order = small(&anti.order())?;

    budget.check("bundles on the cover", h1_order as u128)?;
    let amb = ch_plain.ambient();
    let mut brute_fixed = BTreeSet::new();
    let mut brute_anti = BTreeSet::new();
    for x in ch_plain.h1().elements() {
        let y = ch_plain.twisted_action(1, &x);
        if y == x {
            brute_fixed.insert(x.clone());
        }
        if y == amb.neg(&x) {
            brute_anti.insert(x);
        }
    }
    let brute_force_agrees = brute_fixed == as_set(&fixed) && brute_anti == as_set(&anti);
    let transverse = fixed.intersect(&anti).order() == 1u32.into()
        && fixed_order.checked_mul(anti_order) == Some(h1_order);
    let pullback = ch_plain.restriction().image();
    let fixed_is_pullback = pullback.is_subgroup_of(&fixed) && fixed.is_subgroup_of(&pullback);

    let split = extension_of(semidirect(&t, &w, &plain)?, &t, &w)?;
    let dihedral = extension_of(semidirect(&t, &w, &inversion)?, &t, &w)?;
    let mut total_groups = BTreeMap::new();
    let mut mismatches = Vec::new();
    for (part, ext, is_anti) in [(&fixed, &split, false), (&anti, &dihedral, true)] {
        let solver = LiftSolver::new(&cover, ext)?;
        for alpha in part.elements() {
            if is_anti && alpha == amb.zero() {
                continue;
            }
            let d = amb.element_order(&alpha);
            let expected = match (d, is_anti) {
                (1, _) => "Z/2".to_string(),
                (d, false) => format!("Z/2 x Z/{d}"),
                (d, true) => format!("D{}", 2 * d),
            };
            let observed = match solver.solve(&alpha)? {
                Some(set) => image_label(ext.group(), &solver.representation(&set.particular)?),
                None => "no lift".into(),
            };
            *total_groups.entry(observed.clone()).or_default() += 1;
            if observed != expected {
                mismatches.push(AlphaCase {
                    alpha: alpha.0,
                    expected,
                    observed,
                });
            }
        }
    }
    let g_y = cover.cover_genus() as u32;
    let expected_fixed = n.pow(2 * genus as u32);
    let expected_anti_fixed = n.pow(2 * g_y - 2 * genus as u32);
    let verdict = fixed_order == expected_fixed
        && anti_order == expected_anti_fixed
        && transverse
        && fixed_is_pullback
        && brute_force_agrees
        && mismatches.is_empty();
    Ok(DihedralReport {
        n,
        genus,
        cover_genus: cover.cover_genus(),
        h1_order,
        fixed_order,
        anti_fixed_order: anti_order,
        expected_fixed,
        expected_anti_fixed,
        transverse,
        fixed_is_pullback,
        brute_force_agrees,
        total_groups,
        mismatches,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeylFamily {
    #[serde(rename = "BC")]
    BC,
    #[serde(rename = "D")]
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylReport {
    pub n: usize,
    pub family: WeylFamily,
    pub rho_bar: Vec<usize>,
    pub cover_genus: usize,
    pub h1_order: u64,
    pub invariants_order: u64,
    pub brute_force_agrees: bool,
    /// Every invariant bundle has all coordinates equal, `(L, …, L)`.
    pub literal_diagonal: Option<bool>,
    /// The first coordinate determines the bundle and ranges over `H¹(Z, Z/2)^Stab(1)`.
    pub deck_twisted_diagonal: Option<bool>,
    pub stab_fixed_order: Option<u64>,
    pub eta: Vec<u64>,
    pub kernel_order: u64,
    pub h1_eta_order: u64,
    pub coset: bool,
    pub verdict: bool,
}

/// Invariant bundles for the Weyl extension of type `family` over a `Σₙ`-cover.
pub fn weyl_example(n: usize, family: WeylFamily, rho_bar: &SurfaceRep, budget: &Budget) -> Result<WeylReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("Weyl example with n = {n}")));
    }
    let (sd, sigma) = match family {
        WeylFamily::BC => weyl_b(n)?,
        WeylFamily::D => weyl_d(n)?,
    };
    let w = sigma.source().clone();
    let t = sigma.target().clone();
    let ext = extension_of(sd, &t, &w)?;
    let cover = build_cover(rho_bar, &w)?;
    let ch = h1_cover(&cover, &sigma)?;
    let h = h2(&sigma, budget)?;
    let map = mumford_map(&ch, &h)?;
    let inv = map.invariants();
    let inv_set = as_set(inv);
    let brute = brute_invariants(&ch, &w.generators(), budget)?;
    let brute_force_agrees = brute == inv_set;

    let (mut literal, mut twisted, mut stab_order) = (None, None, None);
    if family == WeylFamily::BC {
        let m = t.rank();
        let r = cover.rank();
        let coordinate = |x: &AbElement, i: usize| AbElement((0..r).map(|j| x.0[j * m + i]).collect());
        literal = Some(brute.iter().all(|x| (1..m).all(|i| coordinate(x, i) == coordinate(x, 0))));
        let z2 = FinAbGroup::cyclic(2);
        let line = h1_cover(&cover, &GAction::trivial(&w, &z2)?)?;
        let stab: Vec<usize> = (0..w.order())
            .filter(|&x| w.perm(x).map(|p| p.apply(0) == 0).unwrap_or(false))
            .collect();
        let stab_fixed = brute_invariants(&line, &stab, budget)?;
        let firsts: BTreeSet<AbElement> = brute.iter().map(|x| coordinate(x, 0)).collect();
        twisted = Some(firsts.len() == brute.len() && firsts == stab_fixed);
        stab_order = Some(stab_fixed.len() as u64);
    }

    let eta = ext.class(&h, &ext.canonical_section())?.coords;
    let kernel_order = small(&map.kernel().order())?;
    let eta_set: BTreeSet<AbElement> = brute
        .iter()
        .filter(|x| map.class_of(x).as_ref() == Some(&eta))
        .cloned()
        .collect();
    let coset = match map.fiber(&eta) {
        Some(c) => eta_set.len() as u64 == kernel_order && eta_set.iter().all(|x| c.contains(x)),
        None => eta_set.is_empty(),
    };
    let verdict = brute_force_agrees && coset && twisted.unwrap_or(true);
    Ok(WeylReport {
        n,
        family,
        rho_bar: rho_bar.images.clone(),
        cover_genus: cover.cover_genus(),
        h1_order: small(&ch.h1().order())?,
        invariants_order: inv_set.len() as u64,
        brute_force_agrees,
        literal_diagonal: literal,
        deck_twisted_diagonal: twisted,
        stab_fixed_order: stab_order,
        eta,
        kernel_order,
        h1_eta_order: eta_set.len() as u64,
        coset,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylSuiteReport {
    pub genus: usize,
    pub n: usize,
    pub family: WeylFamily,
    /// Surjections `π → Σₙ`; none exist when `Σₙ` is nonabelian and `g = 1`.
    pub covers: u64,
    pub reports: Vec<WeylReport>,
    /// For `D` with `n` odd: every fiber `{φ : c(φ) = η}` has one element.
    pub all_singletons: Option<bool>,
    pub verdict: bool,
}

/// [`weyl_example`] over every surjection `π → Σₙ`.
pub fn weyl_suite(genus: usize, n: usize, family: WeylFamily, budget: &Budget) -> Result<WeylSuiteReport> {
    let w = FiniteGroup::symmetric(n)?;
    let reports = surjections(genus, &w, budget)?
        .into_iter()
        .map(|r| weyl_example(n, family, &r, budget))
        .collect::<Result<Vec<_>>>()?;
    let all_singletons = (family == WeylFamily::D && n % 2 == 1)
        .then(|| reports.iter().all(|r| r.h1_eta_order == 1));
    let verdict = reports.iter().all(|r| r.verdict) && all_singletons.unwrap_or(true);
    Ok(WeylSuiteReport {
        genus,
        n,
        family,
        covers: reports.len() as u64,
        reports,
        all_singletons,
        verdict,
    })
}
