//! Extensions `0 → T → N → W → 1` with abelian kernel, and their factor sets.
//!
//! Factor sets are read as `f_α(w₁, w₂) = ι⁻¹(α(w₁)·α(w₂)·α(w₁w₂)⁻¹)`, which makes
//! [`build_extension`] and [`Extension::factor_set`] mutually inverse for the canonical
//! section `w ↦ (0, w)`.

use crate::abelian::{AbElement, FinAbGroup};
use crate::cohomology::{is_cocycle, normalize, CohClass, Cochain, H2};
use crate::error::{Error, Result};
use crate::group::{twisted_product, FiniteGroup, GAction};

#[derive(Clone, Debug)]
pub struct Extension {
    group: FiniteGroup,
    embed: Vec<usize>,
    project: Vec<usize>,
    /// `ι⁻¹` on elements of `N`; `usize::MAX` outside the image.
    embed_inv: Vec<usize>,
    sigma: GAction,
}

/// A set-theoretic section `W → N` with `α(e) = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section(pub Vec<usize>);

impl Extension {
    /// Validates exactness and computes the induced action by conjugation.
    pub fn new(
        n: FiniteGroup,
        t: &FinAbGroup,
        w: &FiniteGroup,
        embed: Vec<usize>,
        project: Vec<usize>,
    ) -> Result<Extension> {
        let bad = |m: &str| Err(Error::InvalidExtension(m.into()));
        let nt = t.order_u64().unwrap_or(u64::MAX) as usize;
        if embed.len() != nt || project.len() != n.order() || nt * w.order() != n.order() {
            return bad("orders do not satisfy |N| = |T|·|W|");
        }
        if embed.iter().chain(&project).enumerate().any(|(i, &x)| {
            x >= if i < nt { n.order() } else { w.order() }
        }) {
            return bad("marked map out of range");
        }
        for a in 0..nt {
            for b in 0..nt {
                let s = t.index_of(&t.add(&t.element_at(a), &t.element_at(b)));
                if embed[s] != n.mul(embed[a], embed[b]) {
                    return bad("embedding is not a homomorphism");
                }
            }
        }
        if !n.is_homomorphism(w, &project) {
            return bad("projection is not a homomorphism");
        }
        let mut embed_inv = vec![usize::MAX; n.order()];
        for (i, &x) in embed.iter().enumerate() {
            if embed_inv[x] != usize::MAX {
                return bad("embedding is not injective");
            }
            embed_inv[x] = i;
        }
        for x in 0..n.order() {
            if (project[x] == 0) != (embed_inv[x] != usize::MAX) {
                return bad("image of the embedding differs from the kernel of the projection");
            }
        }
        // surjectivity follows from |ker| = |T| and |N| = |T|·|W|
        let lift = first_preimages(&project, w.order());
        let conj = |x: usize, ti: usize| embed_inv[n.conjugate(lift[x], embed[ti])];
        for (x, &l) in lift.iter().enumerate() {
            for k in 0..n.order() {
                if project[k] == x && k != l {
                    for ti in 0..nt {
                        if embed_inv[n.conjugate(k, embed[ti])] != conj(x, ti) {
                            return bad("conjugation action depends on the lift");
                        }
                    }
                }
            }
        }
        let sigma = GAction::from_fn(w, t, |x, e| t.element_at(conj(x, t.index_of(e))))?;
        Ok(Extension {
            group: n,
            embed,
            project,
            embed_inv,
            sigma,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kernel(&self) -> &FinAbGroup {
        self.sigma.target()
    }

    pub fn quotient(&self) -> &FiniteGroup {
        self.sigma.source()
    }

    pub fn embed(&self) -> &[usize] {
        &self.embed
    }

    pub fn project(&self) -> &[usize] {
        &self.project
    }

    /// The action of `W` on `T` induced by conjugation in `N`.
    pub fn action(&self) -> &GAction {
        &self.sigma
    }

    /// `ι⁻¹(x)` as an element of `T`, if `x` lies in the kernel.
    pub fn kernel_element(&self, x: usize) -> Option<AbElement> {
        let i = self.embed_inv[x];
        (i != usize::MAX).then(|| self.kernel().element_at(i))
    }

    pub fn embed_element(&self, t: &AbElement) -> usize {
        self.embed[self.kernel().index_of(t)]
    }

    /// The section choosing the smallest-index preimage of each element.
    pub fn canonical_section(&self) -> Section {
        Section(first_preimages(&self.project, self.quotient().order()))
    }

    pub fn check_section(&self, alpha: &Section) -> Result<()> {
        if alpha.0.len() != self.quotient().order()
            || alpha.0[0] != 0
            || alpha
                .0
                .iter()
                .enumerate()
                .any(|(w, &x)| x >= self.group.order() || self.project[x] != w)
        {
            return Err(Error::InvalidExtension("not a normalized section".into()));
        }
        Ok(())
    }

    /// Every normalized section, in lexicographic order of preimage choices.
    pub fn sections(&self) -> impl Iterator<Item = Section> + '_ {
        let wn = self.quotient().order();
        let fibers: Vec<Vec<usize>> = (0..wn)
            .map(|w| {
                if w == 0 {
                    vec![0]
                } else {
                    (0..self.group.order())
                        .filter(|&x| self.project[x] == w)
                        .collect()
                }
            })
            .collect();
        let total: usize = fibers.iter().map(Vec::len).product();
        (0..total).map(move |mut i| {
            let mut s = vec![0; wn];
            for w in (0..wn).rev() {
                s[w] = fibers[w][i % fibers[w].len()];
                i /= fibers[w].len();
            }
            Section(s)
        })
    }

    /// `f_α(w₁, w₂) = ι⁻¹(α(w₁)·α(w₂)·α(w₁w₂)⁻¹)`.
    pub fn factor_set(&self, alpha: &Section) -> Result<Cochain> {
        self.check_section(alpha)?;
        let w = self.quotient();
        let n = &self.group;
        let mut f = Cochain::zero(2, w.order(), self.kernel());
        for w1 in 0..w.order() {
            for w2 in 0..w.order() {
                let a = alpha.0[w1];
                let b = alpha.0[w2];
                let c = alpha.0[w.mul(w1, w2)];
                let x = n.mul(n.mul(a, b), n.inv(c));
                let t = self.kernel_element(x).ok_or_else(|| {
                    Error::InvalidExtension("factor set leaves the kernel".into())
                })?;
                f.set(&[w1, w2], t);
            }
        }
        Ok(f)
    }

    pub fn class(&self, h2: &H2, alpha: &Section) -> Result<CohClass> {
        self.check_compatible(h2.action())?;
        h2.classify(&self.factor_set(alpha)?)
    }

    fn check_compatible(&self, sigma: &GAction) -> Result<()> {
        if sigma.target() != self.kernel()
            || sigma.source().order() != self.quotient().order()
            || (0..sigma.source().order()).any(|x| sigma.table(x) != self.sigma.table(x))
        {
            return Err(Error::InvalidExtension(
                "extension does not induce the given action".into(),
            ));
        }
        Ok(())
    }
}

fn first_preimages(project: &[usize], w_order: usize) -> Vec<usize> {
    let mut lift = vec![usize::MAX; w_order];
    for (x, &w) in project.iter().enumerate() {
        if lift[w] == usize::MAX {
            lift[w] = x;
        }
    }
    lift
}

/// The crossed product `T ×_f W`. A non-normalized cocycle is normalized first, which
/// changes `f` by a coboundary only.
pub fn build_extension(sigma: &GAction, f: &Cochain) -> Result<Extension> {
    if f.degree() != 2 || f.w_order() != sigma.source().order() || !is_cocycle(sigma, f)? {
        return Err(Error::NotCocycle(
            "factor set fails the cocycle identity".into(),
        ));
    }
    let f = if f.is_normalized() {
        f.clone()
    } else {
        normalize(sigma, f)?.0
    };
    let t = sigma.target();
    let w = sigma.source();
    let values: Vec<usize> = f.values().iter().map(|v| t.index_of(v)).collect();
    let sd = twisted_product(t, w, sigma, |a, b| values[a * w.order() + b])?;
    let ext = Extension::new(sd.group, t, w, sd.embed, sd.project)?;
    debug_assert!(ext.check_compatible(sigma).is_ok());
    Ok(ext)
}

/// Extension class via the canonical section.
pub fn extension_class(ext: &Extension, h2: &H2) -> Result<CohClass> {
    ext.class(h2, &ext.canonical_section())
}

/// Equivalence of extensions with the same kernel, quotient and action.
pub fn equivalent(a: &Extension, b: &Extension, h2: &H2) -> Result<bool> {
    a.check_compatible(h2.action())?;
    b.check_compatible(h2.action())?;
    Ok(extension_class(a, h2)?.coords == extension_class(b, h2)?.coords)
}

/// Searches for an isomorphism `φ: N₁ → N₂` with `φ∘ι₁ = ι₂` and `π₂∘φ = π₁`.
pub fn find_equivalence(a: &Extension, b: &Extension) -> Option<Vec<usize>> {
    let nt = a.embed.len();
    if a.group.order() != b.group.order() || nt != b.embed.len() {
        return None;
    }
    let w = a.quotient();
    let alpha = a.canonical_section();
    let w_gens = w.generators();
    let t_gens: Vec<usize> = (0..a.kernel().rank())
        .map(|i| {
            let mut e = a.kernel().zero();
            e.0[i] = 1 % a.kernel().orders()[i];
            a.kernel().index_of(&e)
        })
        .collect();
    let mut gens: Vec<usize> = t_gens.iter().map(|&i| a.embed[i]).collect();
    let mut fixed: Vec<usize> = t_gens.iter().map(|&i| b.embed[i]).collect();
    gens.extend(w_gens.iter().map(|&g| alpha.0[g]));
    let fibers: Vec<Vec<usize>> = w_gens
        .iter()
        .map(|&g| (0..b.group.order()).filter(|&x| b.project[x] == g).collect())
        .collect();
    let mut choice = vec![0usize; fibers.len()];
    let base = fixed.len();
    fixed.extend(fibers.iter().map(|f| f[0]));
    loop {
        for (i, &c) in choice.iter().enumerate() {
            fixed[base + i] = fibers[i][c];
        }
        if let Some(phi) = a.group.extend_to_hom(&b.group, &gens, &fixed) {
            let ok = (0..nt).all(|i| phi[a.embed[i]] == b.embed[i])
                && (0..a.group.order()).all(|x| b.project[phi[x]] == a.project[x]);
            if ok {
                return Some(phi);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < fibers[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::cohomology::h2;
    use crate::group::dihedral;

    fn z2_over_z2() -> (GAction, H2) {
        let w = FiniteGroup::cyclic(2).unwrap();
        let t = FinAbGroup::cyclic(2);
        let sigma = GAction::trivial(&w, &t).unwrap();
        let h = h2(&sigma, &Budget::default()).unwrap();
        (sigma, h)
    }

    #[test]
    fn split_extension_has_zero_class() {
        let (sigma, h) = z2_over_z2();
        let e = build_extension(&sigma, &Cochain::zero(2, 2, sigma.target())).unwrap();
        assert!(extension_class(&e, &h).unwrap().is_zero());
        assert!(!e.group().fingerprint().1.contains(&4));
    }

    #[test]
    fn z4_is_the_nontrivial_class() {
        let (sigma, h) = z2_over_z2();
        let mut f = Cochain::zero(2, 2, sigma.target());
        f.set(&[1, 1], AbElement(vec![1]));
        let e = build_extension(&sigma, &f).unwrap();
        assert!(e.group().fingerprint().1.contains(&4));
        let c = extension_class(&e, &h).unwrap();
        assert_eq!(c.coords, vec![1]);
        for alpha in e.sections() {
            assert_eq!(e.class(&h, &alpha).unwrap().coords, vec![1]);
        }
        let split = build_extension(&sigma, &Cochain::zero(2, 2, sigma.target())).unwrap();
        assert!(!equivalent(&e, &split, &h).unwrap());
        assert!(find_equivalence(&e, &split).is_none());
        assert!(equivalent(&e, &e, &h).unwrap());
        assert!(find_equivalence(&e, &e).is_some());
    }

    #[test]
    fn dihedral_is_split_by_inversion() {
        for n in [3usize, 4, 5] {
            let w = FiniteGroup::cyclic(2).unwrap();
            let t = FinAbGroup::cyclic(n as u64);
            let sigma = GAction::via_character(&w, &t, &[false, true]).unwrap();
            let e = build_extension(&sigma, &Cochain::zero(2, 2, &t)).unwrap();
            assert!(e.group().find_isomorphism(&dihedral(n).unwrap()).is_some());
        }
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let (sigma, _) = z2_over_z2();
        let mut f = Cochain::zero(2, 2, sigma.target());
        f.set(&[0, 1], AbElement(vec![1]));
        assert!(matches!(
            build_extension(&sigma, &f),
            Err(Error::NotCocycle(_))
        ));
    }

    #[test]
    fn induced_action_is_recovered() {
        let w = FiniteGroup::symmetric(3).unwrap();
        let t = FinAbGroup::cyclic(3);
        let sigma = GAction::sign(&w, &t).unwrap();
        let e = build_extension(&sigma, &Cochain::zero(2, 6, &t)).unwrap();
        assert_eq!(e.action(), &sigma);
    }
}
