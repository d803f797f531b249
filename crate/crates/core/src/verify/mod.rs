//! The acceptance matrix: every check the crate makes claims about, run end to end.
//!
//! Each criterion returns a [`CriterionReport`] listing what failed; reports contain no
//! timings, so their serialization is reproducible.

pub mod brute;
mod matrix;

pub use matrix::{base_groups, cohomology_cases, Case};

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{AbElement, FinAbGroup};
use crate::budget::Budget;
use crate::cohomology::{h2, Cochain, H2};
use crate::cover::{build_cover, build_cover_with_order, h1_cover};
use crate::error::Result;
use crate::extension::{build_extension, extension_class, find_equivalence, Extension};
use crate::group::{semidirect, weyl_b, FiniteGroup, GAction};
use crate::moduli::{
    dihedral_example, mumford_class, mumford_map, transgression, transport, weyl_orbit_check, FiberContext,
    weyl_suite, FiberReport, WeylFamily,
};
use crate::surface::{commutator_convolution_count, enumerate_homs, surjections};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, name: &str) -> CriterionReport {
        CriterionReport {
            id,
            name: name.into(),
            passed: true,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub workers: usize,
    pub budget: Budget,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            workers: 1,
            budget: Budget::default(),
        }
    }
}

pub const CRITERIA: [&str; 11] = [
    "cohomology oracle equivalence",
    "extension correspondence",
    "hom-count dual oracle",
    "Riemann-Hurwitz",
    "obstruction map is a transversal-independent homomorphism",
    "five-term exactness",
    "existence criterion and fiber structure",
    "Weyl orbits are fibers",
    "dihedral suite",
    "Weyl suite",
    "determinism across worker counts",
];

pub fn run_criterion(id: u8, opts: &Options) -> Result<CriterionReport> {
    match id {
        1 => criterion_cohomology(opts),
        2 => criterion_extensions(opts),
        3 => criterion_hom_counts(opts),
        4 => criterion_riemann_hurwitz(opts),
        5 => criterion_homomorphism(opts),
        6 => criterion_five_term(opts),
        7 => criterion_fibers(opts).map(|(r, _)| r),
        8 => criterion_orbits(opts),
        9 => criterion_dihedral(opts),
        10 => criterion_weyl(opts),
        11 => criterion_determinism(opts),
        _ => Err(crate::Error::Unsupported(format!("no criterion {id}"))),
    }
}

pub fn run_all(opts: &Options) -> Result<AcceptanceReport> {
    let criteria = (1..=11)
        .map(|id| run_criterion(id, opts))
        .collect::<Result<Vec<_>>>()?;
    let passed = criteria.iter().all(|c| c.passed);
    Ok(AcceptanceReport { criteria, passed })
}

fn criterion_cohomology(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(1, CRITERIA[0]);
    for case in cohomology_cases()? {
        let h = h2(&case.sigma, &opts.budget)?;
        let z2 = brute::count_normalized_cocycles(&case.sigma)?;
        let b2 = brute::count_normalized_coboundaries(&case.sigma)?;
        rep.check(h.z2().order() == BigUint::from(z2), || {
            format!("{}: |Z²| {} vs brute force {z2}", case.name, h.z2().order())
        });
        rep.check(h.b2().order() == BigUint::from(b2), || {
            format!("{}: |B²| {} vs brute force {b2}", case.name, h.b2().order())
        });
        rep.check(
            z2 % b2 == 0 && h.order() == BigUint::from(z2 / b2),
            || format!("{}: |H²| {} vs brute force {z2}/{b2}", case.name, h.order()),
        );
    }
    Ok(rep)
}

/// A cocycle per class, chosen as the canonical representative.
fn class_extensions(h: &H2) -> Result<Vec<(Vec<u64>, Extension)>> {
    h.classes()
        .map(|c| Ok((c.coords.clone(), build_extension(h.action(), &c.rep)?)))
        .collect()
}

fn criterion_extensions(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(2, CRITERIA[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in cohomology_cases()? {
        let h = h2(&case.sigma, &opts.budget)?;
        let exts = class_extensions(&h)?;
        // classes are pairwise inequivalent as extensions, by explicit search
        for (i, (ci, a)) in exts.iter().enumerate() {
            for (cj, b) in &exts[..i] {
                rep.check(find_equivalence(a, b).is_none(), || {
                    format!("{}: classes {ci:?} and {cj:?} give equivalent extensions", case.name)
                });
            }
        }
        let mut cocycles: Vec<Cochain> = h.basis().into_iter().map(|c| c.rep).collect();
        cocycles.extend((0..20).map(|_| h.random_cocycle(&mut rng)));
        for f in &cocycles {
            let class = h.classify(f)?;
            let ext = build_extension(&case.sigma, f)?;
            let back = extension_class(&ext, &h)?;
            rep.check(back.coords == class.coords, || {
                format!("{}: round trip moved {:?} to {:?}", case.name, class.coords, back.coords)
            });
            let (_, carrier) = exts
                .iter()
                .find(|(c, _)| *c == class.coords)
                .expect("every class has a carrier");
            rep.check(find_equivalence(&ext, carrier).is_some(), || {
                format!("{}: extension of class {:?} not equivalent to its carrier", case.name, class.coords)
            });
        }
    }
    Ok(rep)
}

fn criterion_hom_counts(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(3, CRITERIA[2]);
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(2)?)?;
    let b2 = weyl_b(2)?.0.group;
    let b3 = weyl_b(3)?.0.group;
    let groups: Vec<(&str, FiniteGroup, Vec<usize>)> = vec![
        ("Z/2", FiniteGroup::cyclic(2)?, vec![1, 2]),
        ("Z/4", FiniteGroup::cyclic(4)?, vec![1, 2]),
        ("Klein", klein, vec![1, 2]),
        ("S3", FiniteGroup::symmetric(3)?, vec![1, 2]),
        ("D8", FiniteGroup::dihedral(4)?, vec![1, 2]),
        ("D10", FiniteGroup::dihedral(5)?, vec![1, 2]),
        ("B2", b2, vec![1, 2]),
        ("S4", FiniteGroup::symmetric(4)?, vec![1]),
        ("B3", b3, vec![1]),
    ];
    for (name, g, genera) in &groups {
        for &genus in genera {
            let direct = enumerate_homs(genus, g, &opts.budget)?.len();
            let character = commutator_convolution_count(genus, g);
            rep.check(character == BigUint::from(direct), || {
                format!("{name}, g = {genus}: enumeration {direct} vs convolution {character}")
            });
        }
    }
    let s3 = FiniteGroup::symmetric(3)?;
    for (genus, anchor) in [(1usize, 18usize), (2, 486)] {
        let n = enumerate_homs(genus, &s3, &opts.budget)?.len();
        rep.check(n == anchor, || format!("S3, g = {genus}: {n} homomorphisms, expected {anchor}"));
    }
    Ok(rep)
}

fn criterion_riemann_hurwitz(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(4, CRITERIA[3]);
    for (name, w) in base_groups()? {
        for genus in [1, 2] {
            for rho in surjections(genus, &w, &opts.budget)? {
                let cover = build_cover(&rho, &w)?;
                let inv = cover.k_ab_invariants();
                let expected = 2 * (w.order() * (genus - 1) + 1);
                let free = inv.len() == expected && inv.iter().all(|d| *d == 0u32.into());
                rep.check(free, || {
                    format!("{name}, g = {genus}, ρ̄ = {:?}: K_ab invariants {inv:?}", rho.images)
                });
                rep.check(cover.rank() == w.order() * (2 * genus - 1) + 1, || {
                    format!("{name}, g = {genus}: {} Schreier generators", cover.rank())
                });
            }
        }
    }
    Ok(rep)
}

/// Actions on `T ∈ {Z/2, Z/3, Z/4, (Z/2)²}` for every base group: trivial ones plus the
/// nontrivial ones from the cohomology matrix.
fn small_actions() -> Result<Vec<(String, GAction)>> {
    let targets = [
        FinAbGroup::cyclic(2),
        FinAbGroup::cyclic(3),
        FinAbGroup::cyclic(4),
        FinAbGroup::new(vec![2, 2])?,
    ];
    let mut out = Vec::new();
    for (name, w) in base_groups()? {
        for t in &targets {
            out.push((format!("{name} on {t} trivially"), GAction::trivial(&w, t)?));
        }
    }
    for case in cohomology_cases()? {
        if targets.contains(case.sigma.target()) && !case.sigma.is_trivial() {
            out.push((case.name.clone(), case.sigma));
        }
    }
    Ok(out)
}

fn criterion_homomorphism(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(5, CRITERIA[4]);
    for (name, sigma) in small_actions()? {
        let w = sigma.source().clone();
        let h = h2(&sigma, &opts.budget)?;
        for genus in [1, 2] {
            for rho in surjections(genus, &w, &opts.budget)? {
                let ch = h1_cover(&build_cover(&rho, &w)?, &sigma)?;
                let order: Vec<usize> = (0..2 * genus).rev().collect();
                let other = h1_cover(&build_cover_with_order(&rho, &w, &order)?, &sigma)?;
                let gens = ch.invariants().generators();
                let t = ch.ambient();
                // sums are classified straight from their transgressed factor sets
                let class = |phi: &AbElement| -> Result<Vec<u64>> { h.coords(&transgression(&ch, phi)?) };
                let mut classes = Vec::with_capacity(gens.len());
                for g in &gens {
                    let full = mumford_class(&ch, &h, g)?.class.coords;
                    let direct = class(g)?;
                    rep.check(full == direct, || {
                        format!("{name}, ρ̄ = {:?}: class coordinates disagree", rho.images)
                    });
                    classes.push(full);
                }
                for i in 0..gens.len() {
                    for j in 0..=i {
                        let sum = class(&t.add(&gens[i], &gens[j]))?;
                        let expected = h.group().add(&AbElement(classes[i].clone()), &AbElement(classes[j].clone()));
                        rep.check(sum == expected.0, || {
                            format!("{name}, ρ̄ = {:?}: c not additive on generators {i}, {j}", rho.images)
                        });
                    }
                    let moved = transport(&ch, &other, &gens[i])?;
                    let there = mumford_class(&other, &h, &moved)?.class.coords;
                    rep.check(there == classes[i], || {
                        format!("{name}, ρ̄ = {:?}: class changes with the transversal", rho.images)
                    });
                }
            }
        }
    }
    Ok(rep)
}

fn criterion_five_term(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(6, CRITERIA[5]);
    for (name, sigma) in small_actions()? {
        let w = sigma.source().clone();
        let h = h2(&sigma, &opts.budget)?;
        for genus in [1, 2] {
            for rho in surjections(genus, &w, &opts.budget)? {
                let ch = h1_cover(&build_cover(&rho, &w)?, &sigma)?;
                let kernel = mumford_map(&ch, &h)?.kernel();
                let image = ch.restriction().restrict(&ch.z1_surface()).image();
                rep.check(kernel.is_subgroup_of(&image) && image.is_subgroup_of(&kernel), || {
                    format!(
                        "{name}, ρ̄ = {:?}: |ker c| = {}, |restriction image| = {}",
                        rho.images,
                        kernel.order(),
                        image.order()
                    )
                });
            }
        }
    }
    Ok(rep)
}

/// Runs the fiber matrix, returning the report and every fiber report in matrix order.
fn criterion_fibers(opts: &Options) -> Result<(CriterionReport, Vec<FiberReport>)> {
    let mut rep = CriterionReport::new(7, CRITERIA[6]);
    let mut all = Vec::new();
    for case in cohomology_cases()? {
        let w = case.sigma.source().clone();
        let h = h2(&case.sigma, &opts.budget)?;
        let exts = class_extensions(&h)?;
        for &genus in &case.fiber_genera {
            for rho in surjections(genus, &w, &opts.budget)? {
                let mut reached = BTreeSet::new();
                let mut union = 0u64;
                let ctx = FiberContext::new(&rho, &case.sigma, &h, &opts.budget)?;
                for (coords, ext) in &exts {
                    let r = ctx.verify(ext, &h, &opts.budget, opts.workers)?;
                    rep.check(r.all_checks() && r.eta == *coords, || {
                        format!("{}, g = {genus}, ρ̄ = {:?}, η = {coords:?}: {r:?}", case.name, rho.images)
                    });
                    union += r.h1_eta_order;
                    reached.extend(r.buckets.iter().map(|b| b.phi.clone()));
                    all.push(r);
                }
                // the cosets over all classes partition the invariant bundles
                let inv = all.last().map(|r| r.invariants_order).unwrap_or(0);
                rep.check(union == inv && reached.len() as u64 == inv, || {
                    format!("{}, g = {genus}, ρ̄ = {:?}: cosets cover {union} of {inv}", case.name, rho.images)
                });
            }
        }
    }
    Ok((rep, all))
}

fn criterion_orbits(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(8, CRITERIA[7]);
    let z2 = FiniteGroup::cyclic(2)?;
    let z3 = FinAbGroup::cyclic(3);
    let inversion = GAction::via_character(&z2, &z3, &[false, true])?;
    let sd = semidirect(&z3, &z2, &inversion)?;
    let s3 = Extension::new(sd.group, &z3, &z2, sd.embed, sd.project)?;
    let (sd, sigma) = weyl_b(2)?;
    let b2 = Extension::new(sd.group, sigma.target(), sigma.source(), sd.embed, sd.project)?;
    for (name, ext) in [("T = Z/3, N = S3", s3), ("T = (Z/2)², N = B2", b2)] {
        let r = weyl_orbit_check(1, &ext, &opts.budget)?;
        rep.check(r.verdict && r.transitive && r.free_orbit_exists, || format!("{name}: {r:?}"));
    }
    Ok(rep)
}

fn criterion_dihedral(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(9, CRITERIA[8]);
    let z2 = FiniteGroup::cyclic(2)?;
    for n in [3u64, 5] {
        for genus in [1, 2] {
            for rho in surjections(genus, &z2, &opts.budget)? {
                let r = dihedral_example(n, &rho, &opts.budget)?;
                rep.check(r.verdict, || format!("n = {n}, ρ̄ = {:?}: {r:?}", rho.images));
            }
        }
    }
    Ok(rep)
}

fn criterion_weyl(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(10, CRITERIA[9]);
    for n in [2, 3] {
        for family in [WeylFamily::BC, WeylFamily::D] {
            let s = weyl_suite(1, n, family, &opts.budget)?;
            rep.check(s.verdict, || format!("n = {n}, {family:?}: {s:?}"));
        }
    }
    Ok(rep)
}

fn criterion_determinism(opts: &Options) -> Result<CriterionReport> {
    let mut rep = CriterionReport::new(11, CRITERIA[10]);
    let serial = Options { workers: 1, ..*opts };
    let parallel = Options { workers: 4, ..*opts };
    let (_, a) = criterion_fibers(&serial)?;
    let (_, b) = criterion_fibers(&parallel)?;
    let (_, c) = criterion_fibers(&serial)?;
    let text = |x: &Vec<FiberReport>| serde_json::to_string(x).expect("reports serialize");
    rep.check(text(&a) == text(&b), || "fiber reports differ between 1 and 4 workers".into());
    rep.check(text(&a) == text(&c), || "fiber reports differ between runs".into());
    Ok(rep)
}
