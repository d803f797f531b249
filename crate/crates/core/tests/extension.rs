mod common;

use fibercheck::abelian::{AbElement, FinAbGroup};
use fibercheck::cohomology::{coboundary, h2, Cochain};
use fibercheck::extension::{build_extension, equivalent, extension_class, find_equivalence, Extension};
use fibercheck::group::{semidirect, weyl_b, FiniteGroup, GAction};
use fibercheck::verify::cohomology_cases;
use fibercheck::Budget;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z2_trivial() -> GAction {
    GAction::trivial(&FiniteGroup::cyclic(2).unwrap(), &FinAbGroup::cyclic(2)).unwrap()
}

fn z4_cocycle() -> Cochain {
    let mut f = Cochain::zero(2, 2, &FinAbGroup::cyclic(2));
    f.set(&[1, 1], AbElement(vec![1]));
    f
}

#[test]
fn zero_factor_set_is_split() {
    for case in cohomology_cases().unwrap() {
        let sigma = &case.sigma;
        let t = sigma.target().clone();
        let w = sigma.source();
        let ext = build_extension(sigma, &Cochain::zero(2, w.order(), &t)).unwrap();
        let sd = semidirect(&t, w, sigma).unwrap();
        assert!(ext.group().find_isomorphism(&sd.group).is_some(), "{}", case.name);
        let h = h2(sigma, &Budget::default()).unwrap();
        assert!(extension_class(&ext, &h).unwrap().is_zero(), "{}", case.name);
    }
}

#[test]
fn z4_factor_set_builds_z4() {
    let ext = build_extension(&z2_trivial(), &z4_cocycle()).unwrap();
    assert_eq!(common::element_orders(ext.group()), vec![1, 2, 4, 4]);
    let h = h2(&z2_trivial(), &Budget::default()).unwrap();
    assert_eq!(extension_class(&ext, &h).unwrap().coords, vec![1]);
}

#[test]
fn z4_by_hand_has_the_nontrivial_class() {
    // Z/4 written as a table, with T = {0, 2} and W = Z/4 / T
    let z4 = FiniteGroup::cyclic(4).unwrap();
    let ext = Extension::new(
        z4,
        &FinAbGroup::cyclic(2),
        &FiniteGroup::cyclic(2).unwrap(),
        vec![0, 2],
        vec![0, 1, 0, 1],
    )
    .unwrap();
    let h = h2(&z2_trivial(), &Budget::default()).unwrap();
    assert_eq!(extension_class(&ext, &h).unwrap().coords, vec![1]);
    // every section gives the same class
    let classes: Vec<Vec<u64>> = ext.sections().map(|s| ext.class(&h, &s).unwrap().coords).collect();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|c| *c == vec![1]));
}

#[test]
fn dihedral_from_zero_factor_set() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    for n in [3u64, 4, 5, 6] {
        let t = FinAbGroup::cyclic(n);
        let sigma = GAction::via_character(&z2, &t, &[false, true]).unwrap();
        let ext = build_extension(&sigma, &Cochain::zero(2, 2, &t)).unwrap();
        assert!(ext.group().find_isomorphism(&FiniteGroup::dihedral(n as usize).unwrap()).is_some());
    }
}

#[test]
fn class_is_independent_of_section() {
    for case in cohomology_cases().unwrap() {
        let h = h2(&case.sigma, &Budget::default()).unwrap();
        for c in h.classes() {
            let ext = build_extension(&case.sigma, &c.rep).unwrap();
            let nt = case.sigma.target().order_u64().unwrap();
            let count = nt.checked_pow(case.sigma.source().order() as u32 - 1);
            if count.is_none_or(|n| n > 10_000) {
                continue;
            }
            for s in ext.sections() {
                assert_eq!(ext.class(&h, &s).unwrap().coords, c.coords, "{}", case.name);
            }
        }
    }
}

#[test]
fn equivalence_examples() {
    let sigma = z2_trivial();
    let h = h2(&sigma, &Budget::default()).unwrap();
    let t = sigma.target().clone();
    let z4 = build_extension(&sigma, &z4_cocycle()).unwrap();
    let klein = build_extension(&sigma, &Cochain::zero(2, 2, &t)).unwrap();
    assert!(equivalent(&z4, &z4, &h).unwrap());
    assert!(find_equivalence(&z4, &z4).is_some());
    assert!(!equivalent(&z4, &klein, &h).unwrap());
    assert!(find_equivalence(&z4, &klein).is_none());
    assert_ne!(common::element_orders(z4.group()), common::element_orders(klein.group()));
}

#[test]
fn factor_sets_differing_by_a_coboundary_are_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in cohomology_cases().unwrap() {
        let sigma = &case.sigma;
        let h = h2(sigma, &Budget::default()).unwrap();
        let t = sigma.target().clone();
        let n = sigma.source().order();
        let nt = t.order_u64().unwrap() as usize;
        let f = h.random_cocycle(&mut rng);
        let mut theta = Cochain::from_fn(1, n, |_| t.element_at(rand::Rng::gen_range(&mut rng, 0..nt)));
        theta.set(&[0], t.zero());
        let g = f.add(&t, &coboundary(sigma, &theta).unwrap());
        let a = build_extension(sigma, &f).unwrap();
        let b = build_extension(sigma, &g).unwrap();
        assert!(equivalent(&a, &b, &h).unwrap(), "{}", case.name);
        assert!(find_equivalence(&a, &b).is_some(), "{}", case.name);
    }
}

#[test]
fn weyl_b2_is_split_over_the_swap() {
    let (sd, sigma) = weyl_b(2).unwrap();
    let ext = Extension::new(sd.group, sigma.target(), sigma.source(), sd.embed, sd.project).unwrap();
    let h = h2(&sigma, &Budget::default()).unwrap();
    assert!(extension_class(&ext, &h).unwrap().is_zero());
    assert_eq!(u64::try_from(&h.order()).unwrap(), 1);
}

#[test]
fn malformed_extensions_are_rejected() {
    let z4 = FiniteGroup::cyclic(4).unwrap();
    let t = FinAbGroup::cyclic(2);
    let w = FiniteGroup::cyclic(2).unwrap();
    // kernel image not the kernel of the projection
    assert!(Extension::new(z4.clone(), &t, &w, vec![0, 1], vec![0, 1, 0, 1]).is_err());
    // projection not a homomorphism
    assert!(Extension::new(z4.clone(), &t, &w, vec![0, 2], vec![0, 0, 1, 1]).is_err());
    // orders do not fit
    assert!(Extension::new(z4, &t, &FiniteGroup::cyclic(3).unwrap(), vec![0, 2], vec![0; 4]).is_err());
    let mut bad = Cochain::zero(2, 2, &t);
    bad.set(&[0, 1], AbElement(vec![1]));
    assert!(build_extension(&z2_trivial(), &bad).is_err());
}
