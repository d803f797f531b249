mod common;

use fibercheck::abelian::FinAbGroup;
use fibercheck::group::{dihedral, semidirect, weyl_b, weyl_d, FiniteGroup, GAction, Perm};
use proptest::prelude::*;

fn perms(cycles: &[&str]) -> Vec<Perm> {
    cycles.iter().map(|c| Perm::parse(c, None).unwrap()).collect()
}

fn images(p: &Perm, n: usize) -> Vec<usize> {
    let p = p.padded(n);
    (0..n).map(|i| p.apply(i)).collect()
}

#[test]
fn permutation_closures() {
    for (gens, order) in [
        (vec!["(1 2)"], 2),
        (vec!["(1 2)", "(1 2 3)"], 6),
        (vec!["(1 2 3 4 5)", "(2 5)(3 4)"], 10),
    ] {
        let ps = perms(&gens);
        let g = FiniteGroup::from_permutations(&ps, 1000).unwrap();
        assert_eq!(g.order(), order, "{gens:?}");
        let n = ps.iter().map(Perm::degree).max().unwrap();
        let raw: Vec<Vec<usize>> = ps.iter().map(|p| images(p, n)).collect();
        assert_eq!(common::closure_order(&raw), order);
    }
}

#[test]
fn d10_from_permutations_is_the_dihedral_group() {
    let g = FiniteGroup::from_permutations(&perms(&["(1 2 3 4 5)", "(2 5)(3 4)"]), 100).unwrap();
    let d = dihedral(5).unwrap();
    assert_eq!(common::element_orders(&g), common::element_orders(&d));
    assert!(g.find_isomorphism(&d).is_some());
}

#[test]
fn composition_is_right_to_left() {
    let a = Perm::parse("(1 2)", Some(3)).unwrap();
    let b = Perm::parse("(2 3)", Some(3)).unwrap();
    // (a ∘ b)(1) = a(b(1)) = a(1) = 2, in 0-based terms 0 ↦ 1
    assert_eq!(a.compose(&b).apply(0), 1);
    assert_eq!(common::compose(&images(&a, 3), &images(&b, 3)), images(&a.compose(&b), 3));
}

#[test]
fn semidirect_by_inversion_is_dihedral() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    for n in [3u64, 4, 5, 7] {
        let t = FinAbGroup::cyclic(n);
        let inv = GAction::via_character(&z2, &t, &[false, true]).unwrap();
        let sd = semidirect(&t, &z2, &inv).unwrap();
        assert_eq!(sd.group.order(), 2 * n as usize);
        assert!(!sd.group.is_abelian());
        assert!(sd.group.find_isomorphism(&FiniteGroup::dihedral(n as usize).unwrap()).is_some());
    }
}

#[test]
fn trivial_action_gives_direct_product() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    for (w, abelian) in [(s3, false), (z3, true)] {
        let t = FinAbGroup::cyclic(2);
        let sd = semidirect(&t, &w, &GAction::trivial(&w, &t).unwrap()).unwrap();
        assert_eq!(sd.group.is_abelian(), abelian);
        let direct = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &w).unwrap();
        assert!(sd.group.find_isomorphism(&direct).is_some());
    }
}

#[test]
fn weyl_b2_element_orders() {
    let (sd, _) = weyl_b(2).unwrap();
    let orders = common::element_orders(&sd.group);
    assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4]);
    assert!(sd.group.find_isomorphism(&FiniteGroup::dihedral(4).unwrap()).is_some());
}

#[test]
fn weyl_orders() {
    assert_eq!(weyl_b(3).unwrap().0.group.order(), 48);
    assert_eq!(weyl_d(3).unwrap().0.group.order(), 24);
    assert_eq!(weyl_d(4).unwrap().0.group.order(), 192);
}

#[test]
fn conjugation_in_s3() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let find = |c: &str| {
        let p = Perm::parse(c, Some(3)).unwrap();
        (0..6).find(|&i| s3.perm(i) == Some(&p)).unwrap()
    };
    let (t12, t13, t23) = (find("(1 2)"), find("(1 3)"), find("(2 3)"));
    let act = s3.conjugation_action(t12);
    assert_eq!(act[t12], t12);
    assert_eq!(act[t13], t23);
    assert_eq!(act[t23], t13);
    assert_eq!(s3.conjugation_action(0), (0..6).collect::<Vec<_>>());
    let z6 = FiniteGroup::cyclic(6).unwrap();
    for g in 0..6 {
        assert_eq!(z6.conjugation_action(g), (0..6).collect::<Vec<_>>());
    }
}

#[test]
fn constructed_tables_satisfy_the_axioms() {
    let mut groups = vec![
        FiniteGroup::symmetric(4).unwrap(),
        FiniteGroup::dihedral(12).unwrap(),
        weyl_b(3).unwrap().0.group,
        weyl_d(3).unwrap().0.group,
        FiniteGroup::direct_product(&FiniteGroup::cyclic(6).unwrap(), &FiniteGroup::symmetric(3).unwrap()).unwrap(),
    ];
    groups.push(FiniteGroup::from_table(groups[0].table(), None).unwrap());
    for g in &groups {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn malformed_tables_are_rejected() {
    assert!(FiniteGroup::from_table(vec![], None).is_err());
    assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
    assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0]], None).is_err());
    // not associative: a Latin square with identity 0 that is no group table
    let quasi = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(FiniteGroup::from_table(quasi, None).is_err());
}

#[test]
fn actions_must_be_homomorphisms() {
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let t = FinAbGroup::cyclic(5);
    // inversion by a generator of Z/3 is not an action
    let bad = GAction::from_generator_matrices(&z3, &t, &[(1, vec![vec![-1]])]);
    assert!(bad.is_err());
    let ok = GAction::from_generator_matrices(&z3, &t, &[(1, vec![vec![1]])]).unwrap();
    assert!(ok.is_trivial());
}

proptest! {
    #[test]
    fn cycle_notation_round_trips(images in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(images.clone()).unwrap();
        let q = Perm::parse(&p.to_string(), Some(7)).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn generated_groups_match_closure(
        a in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
        b in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let g = FiniteGroup::from_permutations(
            &[Perm::from_images(a.clone()).unwrap(), Perm::from_images(b.clone()).unwrap()],
            200,
        ).unwrap();
        prop_assert_eq!(g.order(), common::closure_order(&[a, b]));
    }
}
