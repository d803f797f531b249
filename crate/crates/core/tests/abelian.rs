mod common;

use fibercheck::abelian::{hom_count, hom_solutions, smith_normal_form, solve_affine, AbElement, FinAbGroup, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn smith_of_identity_is_identity() {
    let s = smith_normal_form(&IntMatrix::identity(2));
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
}

#[test]
fn smith_of_2468() {
    let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]).unwrap();
    let d = smith_normal_form(&m).diagonal();
    // d₁ is the gcd of the entries and d₁·d₂ = |det|
    assert_eq!(d[0], BigInt::from(2));
    assert_eq!(&d[0] * &d[1], BigInt::from(8));
}

#[test]
fn smith_of_zero_matrix() {
    let s = smith_normal_form(&IntMatrix::zeros(3, 2));
    assert!(s.diagonal().iter().all(|x| *x == BigInt::from(0)));
    assert_eq!(s.rank(), 0);
}

#[test]
fn hom_solutions_examples() {
    let z2 = FinAbGroup::cyclic(2);
    let empty = IntMatrix::zeros(0, 2);
    assert_eq!(hom_solutions(&empty, &z2).unwrap().order_u64(), Some(4));
    let id = IntMatrix::identity(2);
    assert_eq!(hom_solutions(&id, &FinAbGroup::cyclic(5)).unwrap().order_u64(), Some(1));
    let m = IntMatrix::from_rows(vec![vec![2, 0]]).unwrap();
    let z4 = FinAbGroup::cyclic(4);
    let s = hom_solutions(&m, &z4).unwrap();
    assert_eq!(s.order_u64(), Some(8));
    assert_eq!(common::count_hom_solutions(&[vec![2, 0]], 2, &[4]), 8);
    for x in s.elements() {
        assert!(x.0[0] % 2 == 0);
    }
}

#[test]
fn solve_affine_examples() {
    let z4 = FinAbGroup::cyclic(4);
    let one = IntMatrix::from_rows(vec![vec![1]]).unwrap();
    let (x, hom) = solve_affine(&one, &z4, &[AbElement(vec![3])]).unwrap().unwrap();
    assert_eq!(x[0].0, vec![3]);
    assert_eq!(hom.order_u64(), Some(1));

    let two = IntMatrix::from_rows(vec![vec![2]]).unwrap();
    assert!(solve_affine(&two, &z4, &[AbElement(vec![1])]).unwrap().is_none());

    let (x, hom) = solve_affine(&two, &z4, &[AbElement(vec![2])]).unwrap().unwrap();
    let sols: Vec<u64> = hom.elements().map(|h| (x[0].0[0] + h.0[0]) % 4).collect();
    let mut sols = sols;
    sols.sort();
    assert_eq!(sols, vec![1, 3]);
}

#[test]
fn solve_affine_rejects_wrong_rhs_length() {
    let m = IntMatrix::identity(2);
    assert!(solve_affine(&m, &FinAbGroup::cyclic(2), &[AbElement(vec![0])]).is_err());
}

#[test]
fn group_normalization_is_invariant_factor_form() {
    let g = FinAbGroup::new(vec![2, 3]).unwrap().normalized();
    assert_eq!(g.orders(), &[6]);
    let g = FinAbGroup::new(vec![4, 6]).unwrap().normalized();
    assert_eq!(g.orders(), &[2, 12]);
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_factors_exactly(rows in small_matrix()) {
        let m = IntMatrix::from_rows(rows.clone()).unwrap();
        let s = smith_normal_form(&m);
        let umv = mat_mul(&mat_mul(&rows_of(&s.u), &big(&rows)), &rows_of(&s.v));
        prop_assert_eq!(umv, rows_of(&s.d));
        prop_assert!(s.d.is_diagonal());
        let d = s.diagonal();
        for k in 1..d.len() {
            if d[k - 1] != BigInt::from(0) {
                prop_assert_eq!(&d[k] % &d[k - 1], BigInt::from(0));
            }
        }
        let unit = |d: BigInt| d == BigInt::from(1) || d == BigInt::from(-1);
        prop_assert!(unit(s.u.determinant().unwrap()));
        prop_assert!(unit(s.v.determinant().unwrap()));
    }

    #[test]
    fn hom_solutions_match_enumeration(
        rows in (1usize..=3).prop_flat_map(|c| prop::collection::vec(prop::collection::vec(-9i64..=9, c), 0..=3)),
        cols in 1usize..=3,
        t in prop::sample::select(vec![vec![2u64], vec![3], vec![4], vec![6], vec![2, 2], vec![2, 4]]),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.resize(cols, 0); r }).collect();
        let m = if rows.is_empty() { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(rows.clone()).unwrap() };
        let tg = FinAbGroup::new(t.clone()).unwrap();
        let expected = common::count_hom_solutions(&rows, cols, &t) as u64;
        prop_assert_eq!(hom_solutions(&m, &tg).unwrap().order_u64(), Some(expected));
        prop_assert_eq!(hom_count(&m, &tg), expected.into());
    }
}
