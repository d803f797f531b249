//! Passing between representations into an extension `N` and invariant bundles on the cover.
//!
//! A candidate lift of `ρ̄` is decorated by `u ∈ T^(2g)` through `ρ(x_k) = ι(u_k)·s(ρ̄(x_k))`
//! with `s` the canonical section. The `T`-part of `ρ(word)` is affine in `u`, so the lifts
//! restricting to a given bundle are the solutions of an affine system over `T`.

use num_bigint::BigUint;

use crate::abelian::{AbElement, AbHom, FinAbGroup, Subgroup};
use crate::cohomology::Cochain;
use crate::cover::{build_cover, Cover};
use crate::error::{Error, Result};
use crate::extension::{Extension, Section};
use crate::surface::{SurfaceGroup, SurfaceRep};

/// `φ` read off an `N`-representation lifting the cover's `ρ̄`.
pub fn restrict_with(cover: &Cover, ext: &Extension, rho: &SurfaceRep) -> Result<AbElement> {
    if rho.compose(ext.project()) != *cover.rho() {
        return Err(Error::InvalidRepresentation(
            "representation does not lift the cover's monodromy".into(),
        ));
    }
    let n = ext.group();
    let mut out = Vec::with_capacity(cover.rank() * ext.kernel().rank());
    for j in 0..cover.rank() {
        let x = rho.eval(n, &cover.schreier_word(j));
        let t = ext.kernel_element(x).ok_or_else(|| {
            Error::InvalidRepresentation("a Schreier generator maps outside T".into())
        })?;
        out.extend(t.0);
    }
    Ok(AbElement(out))
}

/// `(ρ̄, Z, φ)` for a representation into `N` whose projection is surjective.
pub fn restrict_to_bundle(rho: &SurfaceRep, ext: &Extension) -> Result<(SurfaceRep, Cover, AbElement)> {
    if !rho.satisfies_relation(ext.group()) {
        return Err(Error::InvalidRepresentation(
            "images do not satisfy the surface relation".into(),
        ));
    }
    let bar = rho.compose(ext.project());
    let cover = build_cover(&bar, ext.quotient())?;
    let phi = restrict_with(&cover, ext, rho)?;
    Ok((bar, cover, phi))
}

/// Lifts with a prescribed bundle: `particular + homogeneous`, modulo `conjugation`.
#[derive(Clone, Debug)]
pub struct LiftSet {
    pub particular: AbElement,
    pub homogeneous: Subgroup,
    pub conjugation: Subgroup,
}

impl LiftSet {
    /// Number of decorations, i.e. of representations.
    pub fn count(&self) -> BigUint {
        self.homogeneous.order()
    }

    /// Number of `T`-conjugacy classes.
    pub fn classes(&self) -> BigUint {
        self.homogeneous.order() / self.conjugation.order()
    }

    /// One decoration per `T`-conjugacy class.
    pub fn representatives(&self) -> Result<Vec<AbElement>> {
        let amb = self.homogeneous.ambient();
        let q = self.homogeneous.quotient(&self.conjugation)?;
        let qg = q.as_group();
        Ok(qg
            .elements()
            .map(|c| {
                let h = q.representative(&c.0);
                amb.add(&self.particular, &h)
            })
            .collect())
    }
}

/// The affine system for one `(cover, extension)` pair, reused across bundles.
#[derive(Clone, Debug)]
pub struct LiftSolver {
    cover: Cover,
    ext: Extension,
    section: Section,
    factor_set: Cochain,
    /// `u ↦ (values on Schreier generators, value on the relator)`.
    system: AbHom,
    image: Subgroup,
    constants: AbElement,
    conjugation: Subgroup,
}

struct Affine {
    rows: Vec<Vec<i64>>,
    constant: AbElement,
    end: usize,
}

impl LiftSolver {
    pub fn new(cover: &Cover, ext: &Extension) -> Result<LiftSolver> {
        let w = cover.group();
        let q = ext.quotient();
        if w.order() != q.order()
            || (0..w.order()).any(|a| (0..w.order()).any(|b| w.mul(a, b) != q.mul(a, b)))
        {
            return Err(Error::InvalidExtension(
                "extension quotient is not the deck group".into(),
            ));
        }
        let section = ext.canonical_section();
        let factor_set = ext.factor_set(&section)?;
        let t = ext.kernel().clone();
        let ng = 2 * cover.genus();
        let mut solver = LiftSolver {
            cover: cover.clone(),
            ext: ext.clone(),
            section,
            factor_set,
            system: AbHom::new(t.power(ng), FinAbGroup::trivial(), vec![])?,
            image: Subgroup::zero(&FinAbGroup::trivial()),
            constants: AbElement(vec![]),
            conjugation: Subgroup::zero(&t.power(ng)),
        };
        let mut rows = Vec::new();
        let mut constants = Vec::new();
        let mut words: Vec<_> = (0..cover.rank()).map(|j| cover.schreier_word(j)).collect();
        words.push(SurfaceGroup::new(cover.genus()).relator());
        for word in &words {
            let a = solver.affine(word);
            debug_assert_eq!(a.end, 0);
            rows.extend(a.rows);
            constants.extend(a.constant.0);
        }
        solver.system = AbHom::new(t.power(ng), t.power(words.len()), rows)?;
        solver.image = solver.system.image();
        solver.constants = AbElement(constants);
        let m = t.rank();
        let images = &cover.rho().images;
        let sigma = ext.action();
        let gens = (0..m).map(|i| {
            let mut e = vec![0u64; m];
            e[i] = 1;
            let e = AbElement(e);
            AbElement(
                images
                    .iter()
                    .flat_map(|&x| t.sub(&e, &sigma.apply(x, &e)).0)
                    .collect(),
            )
        });
        solver.conjugation = Subgroup::from_generators(&t.power(ng), gens);
        Ok(solver)
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    /// Decorations differing by `T`-conjugation.
    pub fn conjugation(&self) -> &Subgroup {
        &self.conjugation
    }

    /// The `T`-part of `ρ(word)` as `rows·u + constant`, and the image of the word in `W`.
    fn affine(&self, word: &[i32]) -> Affine {
        let t = self.ext.kernel();
        let sigma = self.ext.action();
        let w = self.cover.group();
        let m = t.rank();
        let images = &self.cover.rho().images;
        let f = |a: usize, b: usize| self.factor_set.at(&[a, b]);
        let mut rows = vec![vec![0i64; images.len() * m]; m];
        let mut c = t.zero();
        let mut v = 0usize;
        let add_block = |rows: &mut Vec<Vec<i64>>, k: usize, at: usize, sign: i64| {
            let s = sigma.matrix(at);
            for (a, row) in rows.iter_mut().enumerate() {
                for b in 0..m {
                    row[k * m + b] += sign * s[a][b];
                }
            }
        };
        for &l in word {
            let k = l.unsigned_abs() as usize - 1;
            let x = images[k];
            if l > 0 {
                add_block(&mut rows, k, v, 1);
                c = t.add(&c, f(v, x));
                v = w.mul(v, x);
            } else {
                let xi = w.inv(x);
                let nv = w.mul(v, xi);
                add_block(&mut rows, k, nv, -1);
                c = t.sub(&t.add(&c, f(v, xi)), &sigma.apply(nv, f(x, xi)));
                v = nv;
            }
        }
        for (row, &d) in rows.iter_mut().zip(t.orders()) {
            for e in row.iter_mut() {
                *e = e.rem_euclid(d as i64);
            }
        }
        Affine {
            rows,
            constant: c,
            end: v,
        }
    }

    fn rhs(&self, phi: &AbElement) -> Result<AbElement> {
        let t = self.ext.kernel();
        if phi.0.len() != self.cover.rank() * t.rank() {
            return Err(Error::Dimension("bundle has the wrong number of coordinates".into()));
        }
        let mut target = phi.0.clone();
        target.extend(t.zero().0);
        Ok(self.system.codomain().sub(&AbElement(target), &self.constants))
    }

    /// Whether some lift restricts to `φ`, without producing one.
    pub fn solvable(&self, phi: &AbElement) -> Result<bool> {
        Ok(self.image.contains(&self.rhs(phi)?))
    }

    /// The bundle and relator value of a decorated lift; `(φ, 0)` for an actual lift.
    pub fn evaluate(&self, u: &AbElement) -> AbElement {
        let cod = self.system.codomain();
        cod.add(&self.system.apply(u), &self.constants)
    }

    /// The decoration of a representation lifting the cover's `ρ̄`.
    pub fn decoration(&self, rho: &SurfaceRep) -> Result<AbElement> {
        let n = self.ext.group();
        let mut u = Vec::new();
        for (&x, &y) in rho.images.iter().zip(&self.cover.rho().images) {
            let t = self
                .ext
                .kernel_element(n.mul(x, n.inv(self.section.0[y])))
                .ok_or_else(|| Error::InvalidRepresentation("not a lift of ρ̄".into()))?;
            u.extend(t.0);
        }
        Ok(AbElement(u))
    }

    /// All lifts restricting to `φ`, or `None` when there are none.
    pub fn solve(&self, phi: &AbElement) -> Result<Option<LiftSet>> {
        let rhs = self.rhs(phi)?;
        Ok(self.system.solve(&rhs).map(|(particular, homogeneous)| LiftSet {
            particular,
            homogeneous,
            conjugation: self.conjugation.clone(),
        }))
    }

    /// The representation `x_k ↦ ι(u_k)·s(ρ̄(x_k))`.
    pub fn representation(&self, u: &AbElement) -> Result<SurfaceRep> {
        let t = self.ext.kernel();
        let m = t.rank();
        let n = self.ext.group();
        let images = self
            .cover
            .rho()
            .images
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let uk = AbElement(u.0[k * m..(k + 1) * m].to_vec());
                n.mul(self.ext.embed_element(&uk), self.section.0[x])
            })
            .collect();
        SurfaceRep::new(n, images)
    }
}

pub fn assemble_lift(cover: &Cover, ext: &Extension, phi: &AbElement) -> Result<Option<LiftSet>> {
    LiftSolver::new(cover, ext)?.solve(phi)
}
