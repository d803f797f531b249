//! Invariant bundles on a Galois cover, their obstruction classes, and lifts to extensions.
//!
//! For a cover `Z → X` with deck group `W` and an invariant bundle `φ: K_ab → T`, the
//! transgression `f(w₁, w₂) = φ(t(w₁)·t(w₂)·t(w₁w₂)⁻¹)` is a normalized 2-cocycle whose class
//! is the obstruction to extending `φ` to a representation of `π` into an extension of `W`
//! by `T`. The submodules compute lifts, verify the fiber description by brute force, and
//! run the worked example families.

mod examples;
mod fiber;
mod lift;
mod orbit;

pub use examples::{dihedral_example, weyl_example, weyl_suite, AlphaCase, DihedralReport, WeylFamily, WeylReport, WeylSuiteReport};
pub use fiber::{verify_fiber_theorem, FiberContext, FiberReport, PhiBucket};
pub use lift::{assemble_lift, restrict_to_bundle, restrict_with, LiftSet, LiftSolver};
pub use orbit::{weyl_orbit_check, OrbitReport};

use num_bigint::BigUint;

use crate::abelian::{AbElement, AbHom, Subgroup};
use crate::cohomology::{is_cocycle, CohClass, Cochain, H2};
use crate::cover::CoverCohomology;
use crate::error::{Error, Result};

/// An invariant bundle with its transgressed factor set and class.
#[derive(Clone, Debug)]
pub struct MumfordData {
    pub phi: AbElement,
    pub factor_set: Cochain,
    pub class: CohClass,
}

/// `f(w₁, w₂) = φ(t(w₁)·t(w₂)·t(w₁w₂)⁻¹)`, without checking invariance.
pub fn transgression(ch: &CoverCohomology, phi: &AbElement) -> Result<Cochain> {
    let cover = ch.cover();
    let w = cover.group();
    let n = w.order();
    let mut values = Vec::with_capacity(n * n);
    for w1 in 0..n {
        for w2 in 0..n {
            let mut word = cover.transversal(w1).clone();
            word.extend_from_slice(cover.transversal(w2));
            word.extend(cover.transversal(w.mul(w1, w2)).iter().rev().map(|&l| -l));
            values.push(ch.eval(phi, &word)?);
        }
    }
    Cochain::from_values(2, n, ch.target(), values)
}

fn check_h2(ch: &CoverCohomology, h2: &H2) -> Result<()> {
    let (a, b) = (ch.action(), h2.action());
    if a.target() != b.target()
        || a.source().order() != b.source().order()
        || (0..a.source().order()).any(|w| a.table(w) != b.table(w))
    {
        return Err(Error::InvalidAction(
            "H² was computed for a different action".into(),
        ));
    }
    Ok(())
}

fn is_invariant(ch: &CoverCohomology, phi: &AbElement) -> bool {
    ch.is_bundle(phi)
        && ch
            .cover()
            .group()
            .generators()
            .iter()
            .all(|&w| ch.twisted_action(w, phi) == *phi)
}

pub fn mumford_class(ch: &CoverCohomology, h2: &H2, phi: &AbElement) -> Result<MumfordData> {
    check_h2(ch, h2)?;
    if phi.0.len() != ch.ambient().rank() {
        return Err(Error::Dimension("bundle has the wrong number of coordinates".into()));
    }
    if !is_invariant(ch, phi) {
        return Err(Error::NotInvariant);
    }
    let factor_set = transgression(ch, phi)?;
    if !is_cocycle(ch.action(), &factor_set)? {
        return Err(Error::NotCocycle("transgression of an invariant bundle".into()));
    }
    let class = h2.classify(&factor_set)?;
    Ok(MumfordData {
        phi: phi.clone(),
        factor_set,
        class,
    })
}

/// Re-expresses a bundle in the Schreier generators of another cover of the same `ρ̄`.
pub fn transport(from: &CoverCohomology, to: &CoverCohomology, phi: &AbElement) -> Result<AbElement> {
    if from.cover().rho() != to.cover().rho() || from.target() != to.target() {
        return Err(Error::InvalidRepresentation(
            "covers come from different representations".into(),
        ));
    }
    let t = from.target();
    let mut out = Vec::with_capacity(to.ambient().rank());
    for j in 0..to.cover().rank() {
        let v = from.eval(phi, &to.cover().schreier_word(j))?;
        debug_assert_eq!(v.0.len(), t.rank());
        out.extend(v.0);
    }
    Ok(AbElement(out))
}

/// A coset `x + S` inside an ambient group.
#[derive(Clone, Debug)]
pub struct Coset {
    pub representative: AbElement,
    pub subgroup: Subgroup,
}

impl Coset {
    pub fn order(&self) -> BigUint {
        self.subgroup.order()
    }

    pub fn contains(&self, x: &AbElement) -> bool {
        let amb = self.subgroup.ambient();
        self.subgroup.contains(&amb.sub(x, &self.representative))
    }

    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        let amb = self.subgroup.ambient();
        self.subgroup
            .elements()
            .map(move |s| amb.add(&self.representative, &s))
    }
}

/// The homomorphism `c: H¹(Z, T)^W → H²(W, T)` on a fixed cover.
#[derive(Clone, Debug)]
pub struct MumfordMap {
    invariants: Subgroup,
    hom: AbHom,
}

pub fn mumford_map(ch: &CoverCohomology, h2: &H2) -> Result<MumfordMap> {
    check_h2(ch, h2)?;
    let invariants = ch.invariants();
    let dom = invariants.as_group();
    let a = dom.rank();
    let mut matrix = vec![vec![0i64; a]; h2.group().rank()];
    for j in 0..a {
        let mut unit = vec![0u64; a];
        unit[j] = 1;
        let phi = invariants.element(&unit);
        let coords = h2.coords(&transgression(ch, &phi)?)?;
        for (row, c) in matrix.iter_mut().zip(coords) {
            row[j] = c as i64;
        }
    }
    let hom = AbHom::new(dom, h2.group().clone(), matrix)?;
    Ok(MumfordMap { invariants, hom })
}

impl MumfordMap {
    pub fn invariants(&self) -> &Subgroup {
        &self.invariants
    }

    /// `c` in the coordinates of the invariant subgroup.
    pub fn hom(&self) -> &AbHom {
        &self.hom
    }

    /// Class coordinates read off linearly; `None` if `φ` is not invariant.
    pub fn class_of(&self, phi: &AbElement) -> Option<Vec<u64>> {
        let x = self.invariants.coords(phi)?;
        Some(self.hom.apply(&AbElement(x)).0)
    }

    pub fn kernel(&self) -> Subgroup {
        self.invariants.embed(&self.hom.kernel())
    }

    /// `{φ invariant : c(φ) = η}`, empty when `η` is not in the image.
    pub fn fiber(&self, eta: &[u64]) -> Option<Coset> {
        let target = self.hom.codomain().reduce(&eta.iter().map(|&e| e as i64).collect::<Vec<_>>());
        let (x, ker) = self.hom.solve(&target)?;
        Some(Coset {
            representative: self.invariants.element(&x.0),
            subgroup: self.invariants.embed(&ker),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::cohomology::h2;
    use crate::cover::{build_cover, build_cover_with_order, h1_cover};
    use crate::group::{FiniteGroup, GAction};
    use crate::surface::{enumerate_homs, SurfaceRep};
    use crate::Budget;

    fn z2_cover() -> CoverCohomology {
        let w = FiniteGroup::cyclic(2).unwrap();
        let t = FinAbGroup::cyclic(2);
        let rho = SurfaceRep::new(&w, vec![1, 0]).unwrap();
        let cover = build_cover(&rho, &w).unwrap();
        h1_cover(&cover, &GAction::trivial(&w, &t).unwrap()).unwrap()
    }

    #[test]
    fn zero_bundle_has_zero_class() {
        let ch = z2_cover();
        let h = h2(ch.action(), &Budget::default()).unwrap();
        let d = mumford_class(&ch, &h, &ch.ambient().zero()).unwrap();
        assert!(d.class.is_zero());
        assert!(d.factor_set.is_zero());
    }

    #[test]
    fn non_invariant_bundle_is_rejected() {
        // translations of a torus act trivially, so take a genus-two base
        let w = FiniteGroup::cyclic(2).unwrap();
        let t = FinAbGroup::cyclic(2);
        let rho = SurfaceRep::new(&w, vec![1, 0, 0, 0]).unwrap();
        let cover = build_cover(&rho, &w).unwrap();
        let sigma = GAction::trivial(&w, &t).unwrap();
        let ch = h1_cover(&cover, &sigma).unwrap();
        let h = h2(&sigma, &Budget::default()).unwrap();
        let inv = ch.invariants();
        let bad = ch.h1().elements().find(|x| !inv.contains(x)).unwrap();
        assert_eq!(mumford_class(&ch, &h, &bad).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn g1_z2_classes_split_the_invariants_evenly() {
        let ch = z2_cover();
        let h = h2(ch.action(), &Budget::default()).unwrap();
        let map = mumford_map(&ch, &h).unwrap();
        assert_eq!(map.invariants().order(), BigUint::from(4u32));
        assert_eq!(map.kernel().order(), BigUint::from(2u32));
        let nontrivial = map.fiber(&[1]).unwrap();
        assert_eq!(nontrivial.order(), BigUint::from(2u32));
        for phi in nontrivial.elements() {
            assert_eq!(mumford_class(&ch, &h, &phi).unwrap().class.coords, vec![1]);
        }
    }

    #[test]
    fn class_does_not_depend_on_the_transversal() {
        let w = FiniteGroup::symmetric(3).unwrap();
        let t = FinAbGroup::cyclic(2);
        let sigma = GAction::sign(&w, &t).unwrap();
        let h = h2(&sigma, &Budget::default()).unwrap();
        let rho = enumerate_homs(2, &w, &Budget::default())
            .unwrap()
            .into_iter()
            .find(|r| r.is_surjective(&w))
            .unwrap();
        let a = h1_cover(&build_cover(&rho, &w).unwrap(), &sigma).unwrap();
        let b = h1_cover(&build_cover_with_order(&rho, &w, &[3, 2, 1, 0]).unwrap(), &sigma).unwrap();
        for phi in a.invariants().generators() {
            let moved = transport(&a, &b, &phi).unwrap();
            assert_eq!(transport(&b, &a, &moved).unwrap(), phi);
            let ca = mumford_class(&a, &h, &phi).unwrap().class.coords;
            let cb = mumford_class(&b, &h, &moved).unwrap().class.coords;
            assert_eq!(ca, cb);
        }
    }
}
