mod common;

use fibercheck::abelian::FinAbGroup;
use fibercheck::cover::{build_cover, h1_cover, Cover};
use fibercheck::group::{FiniteGroup, GAction};
use fibercheck::surface::{surjections, SurfaceRep};
use fibercheck::Budget;
use num_bigint::BigInt;

const P: i64 = 1_000_000_007;

/// Rank over the rationals, computed modulo a large prime.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow(m[rank][c], P - 2);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % P;
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2).unwrap()
}

fn cover(images: Vec<usize>, w: &FiniteGroup) -> Cover {
    build_cover(&SurfaceRep::new(w, images).unwrap(), w).unwrap()
}

fn free_rank(c: &Cover) -> usize {
    let inv = c.k_ab_invariants();
    assert!(inv.iter().all(|d| *d == BigInt::from(0)), "K_ab has torsion");
    inv.len()
}

fn brute_h1(c: &Cover, t: &[u64]) -> usize {
    common::count_hom_solutions(&c.relator_matrix().to_rows().unwrap(), c.rank(), t)
}

#[test]
fn trivial_deck_group_gives_the_surface_itself() {
    let w = FiniteGroup::trivial();
    for genus in 1..=3 {
        let c = cover(vec![0; 2 * genus], &w);
        assert_eq!(c.rank(), 2 * genus);
        assert_eq!(c.cover_genus(), genus);
        assert_eq!(free_rank(&c), 2 * genus);
    }
    let c = cover(vec![0, 0], &w);
    assert_eq!(c.h1(&FinAbGroup::cyclic(2)).unwrap().order(), 4u32.into());
}

#[test]
fn genus_one_double_cover() {
    let c = cover(vec![1, 0], &z2());
    assert_eq!(c.rank(), 3);
    assert_eq!(c.relator_matrix().rows(), 2);
    assert_eq!(rank(&c.relator_matrix().to_rows().unwrap()), 1);
    assert_eq!(free_rank(&c), 2);
    assert_eq!(c.cover_genus(), 1);
    let h = c.h1(&FinAbGroup::cyclic(2)).unwrap();
    assert_eq!(h.order(), 4u32.into());
    assert_eq!(brute_h1(&c, &[2]), 4);
}

#[test]
fn genus_two_s3_covers() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let reps = surjections(2, &s3, &Budget::default()).unwrap();
    assert!(!reps.is_empty());
    for rho in reps.iter().step_by(37) {
        let c = build_cover(rho, &s3).unwrap();
        assert_eq!(c.rank(), 19);
        assert_eq!(rank(&c.relator_matrix().to_rows().unwrap()), 5);
        assert_eq!(free_rank(&c), 14);
        assert_eq!(c.cover_genus(), 7);
        // Riemann–Hurwitz for an unramified cover
        assert_eq!(2 * c.cover_genus() - 2, 6 * (2 * 2 - 2));
    }
}

#[test]
fn h1_orders_match_brute_force() {
    let c = cover(vec![1, 0, 0, 0], &z2());
    assert_eq!(c.rank(), 7);
    assert_eq!(c.cover_genus(), 3);
    let h = c.h1(&FinAbGroup::cyclic(3)).unwrap();
    assert_eq!(h.order(), 729u32.into());
    assert_eq!(brute_h1(&c, &[3]), 729);
    for t in [vec![2], vec![4], vec![2, 2]] {
        let want = brute_h1(&c, &t);
        let got = c.h1(&FinAbGroup::new(t).unwrap()).unwrap().order();
        assert_eq!(got, want.into());
    }
}

#[test]
fn schreier_words_rewrite_to_their_generator() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let rho = surjections(2, &s3, &Budget::default()).unwrap().swap_remove(0);
    let c = build_cover(&rho, &s3).unwrap();
    for i in 0..c.rank() {
        let (exps, end) = c.rewrite(&c.schreier_word(i));
        assert_eq!(end, 0);
        let unit: Vec<i64> = (0..c.rank()).map(|j| (i == j) as i64).collect();
        assert_eq!(exps, unit);
    }
    for v in 0..s3.order() {
        let (_, end) = c.rewrite(c.transversal(v));
        assert_eq!(end, v);
    }
}

fn actions() -> Vec<(Cover, GAction)> {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let sign = s3.sign_character().unwrap();
    let s3_rep = surjections(2, &s3, &Budget::default()).unwrap().swap_remove(0);
    vec![
        (cover(vec![1, 0], &z2()), GAction::trivial(&z2(), &FinAbGroup::cyclic(3)).unwrap()),
        (
            cover(vec![1, 0, 0, 1], &z2()),
            GAction::via_character(&z2(), &FinAbGroup::cyclic(3), &[false, true]).unwrap(),
        ),
        (
            cover(vec![0, 1], &z2()),
            GAction::via_character(&z2(), &FinAbGroup::cyclic(4), &[false, true]).unwrap(),
        ),
        (
            build_cover(&s3_rep, &s3).unwrap(),
            GAction::via_character(&s3, &FinAbGroup::cyclic(3), &sign).unwrap(),
        ),
    ]
}

#[test]
fn twisted_action_is_an_action_on_bundles() {
    for (c, sigma) in actions() {
        let ch = h1_cover(&c, &sigma).unwrap();
        let w = c.group();
        let gens = ch.h1().generators().to_vec();
        for x in &gens {
            assert_eq!(ch.twisted_action(0, x), *x);
            for a in 0..w.order() {
                let y = ch.twisted_action(a, x);
                assert!(ch.is_bundle(&y));
                for b in 0..w.order() {
                    assert_eq!(ch.twisted_action(w.mul(a, b), x), ch.twisted_action(a, &ch.twisted_action(b, x)));
                }
            }
        }
    }
}

#[test]
fn twisted_action_matches_conjugation_on_words() {
    // (w·φ)(k) = σ(w)(φ(t(w)⁻¹ k t(w)))
    for (c, sigma) in actions() {
        let ch = h1_cover(&c, &sigma).unwrap();
        let t = sigma.target();
        for x in &ch.h1().generators() {
            for v in 0..c.group().order() {
                let y = ch.twisted_action(v, x);
                let tw = c.transversal(v);
                for i in 0..c.rank() {
                    let mut word: Vec<i32> = tw.iter().rev().map(|&l| -l).collect();
                    word.extend(c.schreier_word(i));
                    word.extend_from_slice(tw);
                    let expected = sigma.apply(v, &ch.eval(x, &word).unwrap());
                    let m = t.rank();
                    assert_eq!(y.0[i * m..(i + 1) * m], expected.0[..]);
                }
            }
        }
    }
}

#[test]
fn invariants_match_brute_force() {
    for (c, sigma) in actions() {
        let ch = h1_cover(&c, &sigma).unwrap();
        if ch.h1().order() > 100_000u32.into() {
            continue;
        }
        let w = c.group();
        let inv = ch.invariants();
        let brute: Vec<_> = ch
            .h1()
            .elements()
            .filter(|x| (0..w.order()).all(|v| ch.twisted_action(v, x) == *x))
            .collect();
        assert_eq!(inv.order(), brute.len().into());
        assert!(brute.iter().all(|x| inv.contains(x)));
    }
}

#[test]
fn pullbacks_are_invariant() {
    for (c, sigma) in actions() {
        let ch = h1_cover(&c, &sigma).unwrap();
        let inv = ch.invariants();
        let res = ch.restriction();
        // crossed homomorphisms on π restrict to invariant bundles on K
        for z in &ch.z1_surface().generators() {
            let phi = res.apply(z);
            assert!(ch.is_bundle(&phi));
            assert!(inv.contains(&phi));
        }
        for e in ch.z1_group() {
            let z = ch.inflate(&e).unwrap();
            assert!(ch.z1_surface().contains(&z));
        }
    }
}

#[test]
fn mismatched_action_is_rejected() {
    let c = cover(vec![1, 0], &z2());
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let sigma = GAction::trivial(&s3, &FinAbGroup::cyclic(2)).unwrap();
    assert!(h1_cover(&c, &sigma).is_err());
    assert!(build_cover(&SurfaceRep::new(&z2(), vec![1, 0]).unwrap(), &s3).is_err());
}
