mod common;

use std::collections::BTreeMap;

use fibercheck::abelian::{AbElement, FinAbGroup};
use fibercheck::cohomology::{coboundary, cohomologous, h1, h2, is_cocycle, normalize, Cochain, H2};
use fibercheck::group::{FiniteGroup, GAction};
use fibercheck::verify::cohomology_cases;
use fibercheck::Budget;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ord(h: &H2) -> u64 {
    u64::try_from(&h.order()).unwrap()
}

fn z2_trivial() -> GAction {
    GAction::trivial(&FiniteGroup::cyclic(2).unwrap(), &FinAbGroup::cyclic(2)).unwrap()
}

fn z4_cocycle() -> Cochain {
    let t = FinAbGroup::cyclic(2);
    let mut f = Cochain::zero(2, 2, &t);
    f.set(&[1, 1], AbElement(vec![1]));
    f
}

#[test]
fn coboundary_of_zero_is_zero() {
    let sigma = z2_trivial();
    let t = sigma.target().clone();
    assert!(coboundary(&sigma, &Cochain::zero(1, 2, &t)).unwrap().is_zero());
    assert!(coboundary(&sigma, &Cochain::zero(2, 2, &t)).unwrap().is_zero());
}

#[test]
fn coboundary_on_z2_by_hand() {
    let sigma = z2_trivial();
    let t = sigma.target().clone();
    let theta = Cochain::from_values(1, 2, &t, vec![AbElement(vec![0]), AbElement(vec![1])]).unwrap();
    // (dθ)(s, s) = θ(s) − θ(e) + θ(s) = 0, and likewise on the other three pairs
    let d = coboundary(&sigma, &theta).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(d.at(&[a, b]).0, vec![0], "({a}, {b})");
        }
    }
}

#[test]
fn h2_small_examples_against_enumeration() {
    let trivial_w = GAction::trivial(&FiniteGroup::trivial(), &FinAbGroup::cyclic(3)).unwrap();
    assert_eq!(ord(&h2(&trivial_w, &Budget::default()).unwrap()), 1);

    let sigma = z2_trivial();
    assert_eq!(ord(&h2(&sigma, &Budget::default()).unwrap()), 2);
    assert_eq!(common::h2_counts(&sigma), (2, 1));

    let z3 = GAction::trivial(&FiniteGroup::cyclic(3).unwrap(), &FinAbGroup::cyclic(2)).unwrap();
    assert_eq!(ord(&h2(&z3, &Budget::default()).unwrap()), 1);
    let (z, b) = common::h2_counts(&z3);
    assert_eq!(z, b);
}

#[test]
fn h2_matches_enumeration_on_small_cases() {
    for case in cohomology_cases().unwrap() {
        let nt = case.sigma.target().order_u64().unwrap();
        let slots = (case.sigma.source().order() - 1).pow(2) as u32;
        if nt.checked_pow(slots).is_none_or(|n| n > 1 << 20) {
            continue;
        }
        let (z, b) = common::h2_counts(&case.sigma);
        let h = h2(&case.sigma, &Budget::default()).unwrap();
        assert_eq!(h.z2().order_u64(), Some(z as u64), "{}", case.name);
        assert_eq!(h.b2().order_u64(), Some(b as u64), "{}", case.name);
        assert_eq!(ord(&h), (z / b) as u64, "{}", case.name);
    }
}

#[test]
fn representatives_are_lexicographically_smallest() {
    let cases = cohomology_cases().unwrap();
    for case in cases.iter().filter(|c| {
        let slots = (c.sigma.source().order() - 1).pow(2) as u32;
        c.sigma.target().order_u64().unwrap().checked_pow(slots).is_some_and(|n| n <= 1 << 16)
    }) {
        let sigma = &case.sigma;
        let h = h2(sigma, &Budget::default()).unwrap();
        let t = sigma.target().clone();
        let nt = t.order_u64().unwrap() as usize;
        let c = common::Cochains2 { w: sigma.source().order(), t: t.clone() };
        let mut smallest: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
        let mut f = vec![0usize; c.slots()];
        for mut i in 0..nt.pow(c.slots() as u32) {
            for s in f.iter_mut() {
                *s = i % nt;
                i /= nt;
            }
            if !common::is_cocycle(sigma, &c, &f) {
                continue;
            }
            let cochain = Cochain::from_fn(2, c.w, |a| c.value(&f, a[0], a[1]));
            let key = h.encode(&cochain).unwrap().0;
            let class = h.coords(&cochain).unwrap();
            smallest.entry(class).and_modify(|m| *m = m.clone().min(key.clone())).or_insert(key);
        }
        assert_eq!(smallest.len() as u64, ord(&h), "{}", case.name);
        for (coords, min) in smallest {
            assert_eq!(h.encode(&h.class(&coords).rep).unwrap().0, min, "{}", case.name);
        }
    }
}

#[test]
fn cohomologous_examples() {
    let sigma = z2_trivial();
    let t = sigma.target().clone();
    let f = z4_cocycle();
    let theta = cohomologous(&sigma, &f, &f).unwrap().unwrap();
    assert!(coboundary(&sigma, &theta).unwrap().is_zero());
    // the Z/4 cocycle is not a coboundary: exhaust the normalized 1-cochains
    assert!(cohomologous(&sigma, &f, &Cochain::zero(2, 2, &t)).unwrap().is_none());
    for s in 0..2u64 {
        let psi = Cochain::from_values(1, 2, &t, vec![AbElement(vec![0]), AbElement(vec![s])]).unwrap();
        assert_ne!(coboundary(&sigma, &psi).unwrap(), f);
    }
}

#[test]
fn cohomologous_recovers_a_chosen_coboundary() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t = FinAbGroup::cyclic(3);
    let sigma = GAction::sign(&s3, &t).unwrap();
    let psi = Cochain::from_fn(1, 6, |a| AbElement(vec![(a[0] as u64 * 2) % 3]));
    let dpsi = coboundary(&sigma, &psi).unwrap();
    let theta = cohomologous(&sigma, &dpsi, &Cochain::zero(2, 6, &t)).unwrap().unwrap();
    assert_eq!(coboundary(&sigma, &theta).unwrap(), dpsi);
}

#[test]
fn non_cocycles_are_rejected() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t = FinAbGroup::cyclic(2);
    let sigma = GAction::trivial(&s3, &t).unwrap();
    let h = h2(&sigma, &Budget::default()).unwrap();
    let mut f = Cochain::zero(2, 6, &t);
    f.set(&[1, 2], AbElement(vec![1]));
    assert!(!is_cocycle(&sigma, &f).unwrap());
    assert!(h.coords(&f).is_err());
    assert!(h.classify(&f).is_err());
    assert!(normalize(&sigma, &f).is_err());
}

#[test]
fn classify_normalizes_first() {
    let sigma = z2_trivial();
    let t = sigma.target().clone();
    let h = h2(&sigma, &Budget::default()).unwrap();
    let constant = Cochain::from_fn(2, 2, |_| AbElement(vec![1]));
    assert!(is_cocycle(&sigma, &constant).unwrap());
    assert!(h.classify(&constant).unwrap().is_zero());
    let shifted = z4_cocycle().add(&t, &constant);
    assert_eq!(h.classify(&shifted).unwrap().coords, vec![1]);
}

#[test]
fn h1_counts_crossed_homomorphisms() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let inv3 = GAction::via_character(&z2, &FinAbGroup::cyclic(3), &[false, true]).unwrap();
    // odd order coefficients: H¹ vanishes
    assert_eq!(h1(&inv3).order(), 1u32.into());
    let triv = GAction::trivial(&z2, &FinAbGroup::cyclic(4)).unwrap();
    assert_eq!(h1(&triv).order(), 2u32.into());
    let inv4 = GAction::via_character(&z2, &FinAbGroup::cyclic(4), &[false, true]).unwrap();
    assert_eq!(h1(&inv4).order(), 2u32.into());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_zero(case in 0usize..15, seed in any::<u64>()) {
        let cases = cohomology_cases().unwrap();
        let sigma = &cases[case % cases.len()].sigma;
        let t = sigma.target().clone();
        let n = sigma.source().order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nt = t.order_u64().unwrap() as usize;
        let theta = Cochain::from_fn(1, n, |_| t.element_at(rand::Rng::gen_range(&mut rng, 0..nt)));
        let dd = coboundary(sigma, &coboundary(sigma, &theta).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
        let x = Cochain::from_fn(0, n, |_| t.element_at(rand::Rng::gen_range(&mut rng, 0..nt)));
        prop_assert!(coboundary(sigma, &coboundary(sigma, &x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn random_cocycles_classify_consistently(case in 0usize..15, seed in any::<u64>()) {
        let cases = cohomology_cases().unwrap();
        let sigma = &cases[case % cases.len()].sigma;
        let h = h2(sigma, &Budget::default()).unwrap();
        let t = sigma.target().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = h.random_cocycle(&mut rng);
        let g = h.random_cocycle(&mut rng);
        prop_assert!(is_cocycle(sigma, &f).unwrap());
        let cf = h.classify(&f).unwrap();
        prop_assert!(is_cocycle(sigma, &cf.rep).unwrap());
        // class of a sum is the sum of classes
        let sum = h.coords(&f.add(&t, &g)).unwrap();
        let expected = h.group().add(&AbElement(cf.coords.clone()), &AbElement(h.coords(&g).unwrap()));
        prop_assert_eq!(sum, expected.0);
        // the representative lies in the class and differs from f by a coboundary
        prop_assert!(cohomologous(sigma, &f, &cf.rep).unwrap().is_some());
        prop_assert_eq!(h.coords(&cf.rep).unwrap(), cf.coords);
    }

    #[test]
    fn z2_is_b2_times_h2(case in 0usize..15) {
        let cases = cohomology_cases().unwrap();
        let h = h2(&cases[case % cases.len()].sigma, &Budget::default()).unwrap();
        prop_assert_eq!(h.z2().order(), h.b2().order() * h.order());
    }
}
