use crate::abelian::{AbElement, FinAbGroup};
use crate::error::Result;
use crate::group::{FiniteGroup, GAction};

/// A coefficient module `(W, T, σ)` and the genera at which its fibers are brute-forced.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub sigma: GAction,
    pub fiber_genera: Vec<usize>,
}

fn case(name: &str, sigma: GAction, fiber_genera: &[usize]) -> Case {
    Case {
        name: name.into(),
        sigma,
        fiber_genera: fiber_genera.to_vec(),
    }
}

/// `(x₀, …, x_{n−1}) ↦` the coordinates rotated `k` places.
fn rotate(e: &AbElement, k: usize) -> AbElement {
    let n = e.0.len();
    AbElement((0..n).map(|i| e.0[(i + n - k % n) % n]).collect())
}

/// The order-3 automorphism `(a, b) ↦ (b, a + b)` of `(Z/2)²`, applied `k` times.
fn klein_rotation(e: &AbElement, k: usize) -> AbElement {
    let mut v = e.clone();
    for _ in 0..k % 3 {
        v = AbElement(vec![v.0[1], (v.0[0] + v.0[1]) % 2]);
    }
    v
}

pub fn base_groups() -> Result<Vec<(String, FiniteGroup)>> {
    let z2 = FiniteGroup::cyclic(2)?;
    Ok(vec![
        ("Z/2".into(), z2.clone()),
        ("Z/3".into(), FiniteGroup::cyclic(3)?),
        ("S2".into(), FiniteGroup::symmetric(2)?),
        ("Z/4".into(), FiniteGroup::cyclic(4)?),
        ("Klein".into(), FiniteGroup::direct_product(&z2, &z2)?),
        ("S3".into(), FiniteGroup::symmetric(3)?),
        ("Z/6".into(), FiniteGroup::cyclic(6)?),
        ("D8".into(), FiniteGroup::dihedral(4)?),
    ])
}

/// Every module with `|W| ≤ 8` and `|T| ≤ 9` the acceptance checks run over.
pub fn cohomology_cases() -> Result<Vec<Case>> {
    let z2 = FiniteGroup::cyclic(2)?;
    let z3 = FiniteGroup::cyclic(3)?;
    let s2 = FiniteGroup::symmetric(2)?;
    let z4 = FiniteGroup::cyclic(4)?;
    let klein = FiniteGroup::direct_product(&z2, &z2)?;
    let s3 = FiniteGroup::symmetric(3)?;
    let z6 = FiniteGroup::cyclic(6)?;
    let d8 = FiniteGroup::dihedral(4)?;
    let c = FinAbGroup::cyclic;
    let v4 = FinAbGroup::new(vec![2, 2])?;
    let inversion = |t: &FinAbGroup| GAction::via_character(&z2, t, &[false, true]);
    let both = [1, 2];
    Ok(vec![
        case("Z/2 on Z/2, trivial", GAction::trivial(&z2, &c(2))?, &both),
        case("Z/3 on Z/2, trivial", GAction::trivial(&z3, &c(2))?, &both),
        case("S2 on (Z/2)², swap", GAction::permute(&s2, &v4)?, &both),
        case("Z/2 on Z/3, inversion", inversion(&c(3))?, &both),
        case("Z/2 on Z/5, inversion", inversion(&c(5))?, &both),
        case("Z/2 on Z/4, trivial", GAction::trivial(&z2, &c(4))?, &both),
        case("Z/2 on Z/4, inversion", inversion(&c(4))?, &both),
        case("Z/4 on Z/2, trivial", GAction::trivial(&z4, &c(2))?, &both),
        case("Klein on Z/2, trivial", GAction::trivial(&klein, &c(2))?, &both),
        case(
            "Z/3 on (Z/2)², rotation",
            GAction::from_fn(&z3, &v4, |k, e| klein_rotation(e, k))?,
            &both,
        ),
        case("S3 on Z/3, sign", GAction::sign(&s3, &c(3))?, &both),
        case("S3 on Z/2, trivial", GAction::trivial(&s3, &c(2))?, &both),
        case(
            "Z/2 on (Z/3)², inversion",
            inversion(&FinAbGroup::new(vec![3, 3])?)?,
            &both,
        ),
        case(
            "Z/6 on (Z/2)³, cyclic shift",
            GAction::from_fn(&z6, &FinAbGroup::new(vec![2, 2, 2])?, |k, e| rotate(e, k))?,
            &[1],
        ),
        case("D8 on Z/2, trivial", GAction::trivial(&d8, &c(2))?, &[1, 2]),
    ])
}
