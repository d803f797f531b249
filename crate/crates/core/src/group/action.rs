//! Actions `σ: W → Aut(T)` and the twisted products built from them.

use super::{FiniteGroup, Perm, DEFAULT_ORDER_BOUND};
use crate::abelian::{AbElement, AbHom, FinAbGroup};
use crate::error::{Error, Result};

/// Largest `|T|` for which element tables are built.
pub const MAX_TARGET_ORDER: u64 = 1 << 16;

/// An action of `W` on a finite abelian group `T`, stored per element of `W`.
///
/// `matrices[w]` has column `j` equal to `σ(w)(eⱼ)`; `tables[w][i]` is the index of `σ(w)`
/// applied to the `i`-th element of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    source: FiniteGroup,
    target: FinAbGroup,
    matrices: Vec<Vec<Vec<i64>>>,
    tables: Vec<Vec<u32>>,
}

impl GAction {
    pub fn trivial(w: &FiniteGroup, t: &FinAbGroup) -> Result<GAction> {
        let m = t.rank();
        let id: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        GAction::from_matrices(w, t, vec![id; w.order()])
    }

    /// One matrix per element of `W`, validated exhaustively.
    pub fn from_matrices(
        w: &FiniteGroup,
        t: &FinAbGroup,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<GAction> {
        if matrices.len() != w.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                w.order()
            )));
        }
        let size = t
            .order_u64()
            .filter(|&n| n <= MAX_TARGET_ORDER)
            .ok_or_else(|| Error::Unsupported(format!("|T| too large for an action table: {t}")))?
            as usize;
        let mut homs = Vec::with_capacity(matrices.len());
        for m in &matrices {
            homs.push(AbHom::new(t.clone(), t.clone(), m.clone())?);
        }
        let tables: Vec<Vec<u32>> = homs
            .iter()
            .map(|h| {
                (0..size)
                    .map(|i| t.index_of(&h.apply(&t.element_at(i))) as u32)
                    .collect()
            })
            .collect();
        let matrices = homs.iter().map(|h| h.matrix().to_vec()).collect();
        let action = GAction {
            source: w.clone(),
            target: t.clone(),
            matrices,
            tables,
        };
        action.validate()?;
        Ok(action)
    }

    /// Extends images of generators along the Cayley graph, then validates the result.
    pub fn from_generator_matrices(
        w: &FiniteGroup,
        t: &FinAbGroup,
        gens: &[(usize, Vec<Vec<i64>>)],
    ) -> Result<GAction> {
        let m = t.rank();
        let gen_homs: Vec<(usize, AbHom)> = gens
            .iter()
            .map(|(g, mat)| {
                if *g >= w.order() {
                    return Err(Error::InvalidAction(format!(
                        "generator index {g} out of range"
                    )));
                }
                Ok((*g, AbHom::new(t.clone(), t.clone(), mat.clone())?))
            })
            .collect::<Result<_>>()?;
        let gen_ids: Vec<usize> = gen_homs.iter().map(|(g, _)| *g).collect();
        if !w.generates(&gen_ids) {
            return Err(Error::InvalidAction(
                "given elements do not generate W".into(),
            ));
        }
        let id: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut mats: Vec<Option<Vec<Vec<i64>>>> = vec![None; w.order()];
        mats[0] = Some(id);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = AbHom::new(t.clone(), t.clone(), mats[x].clone().expect("visited"))?;
            for (g, hg) in &gen_homs {
                let y = w.mul(x, *g);
                let my = compose(t, &mx, hg);
                match &mats[y] {
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(prev) if !same_map(t, prev, &my) => {
                        return Err(Error::InvalidAction(format!(
                            "generator images are inconsistent at element {}",
                            w.label(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        GAction::from_matrices(
            w,
            t,
            mats.into_iter().map(|m| m.expect("generated")).collect(),
        )
    }

    /// Builds the action from a function on coordinates: `f(w, eⱼ)` for each unit vector.
    pub fn from_fn<F>(w: &FiniteGroup, t: &FinAbGroup, f: F) -> Result<GAction>
    where
        F: Fn(usize, &AbElement) -> AbElement,
    {
        let mut mats = Vec::with_capacity(w.order());
        for x in 0..w.order() {
            let h = AbHom::from_fn(t.clone(), t.clone(), |e| f(x, e))?;
            mats.push(h.matrix().to_vec());
        }
        GAction::from_matrices(w, t, mats)
    }

    /// `σ(w) = −1` when `odd[w]`, otherwise the identity.
    pub fn via_character(w: &FiniteGroup, t: &FinAbGroup, odd: &[bool]) -> Result<GAction> {
        if odd.len() != w.order() {
            return Err(Error::InvalidAction(
                "character length differs from |W|".into(),
            ));
        }
        GAction::from_fn(w, t, |x, e| if odd[x] { t.neg(e) } else { e.clone() })
    }

    /// Inversion on `T` through the sign of the permutation representation of `W`.
    pub fn sign(w: &FiniteGroup, t: &FinAbGroup) -> Result<GAction> {
        let odd = w
            .sign_character()
            .ok_or_else(|| Error::InvalidAction("W has no permutation representation".into()))?;
        GAction::via_character(w, t, &odd)
    }

    /// `W` permutes the coordinates of `T = (Z/d)ⁿ`: `σ(w)(t)_{w(i)} = tᵢ`.
    pub fn permute(w: &FiniteGroup, t: &FinAbGroup) -> Result<GAction> {
        let n = t.rank();
        check_permutable(w, t, n)?;
        GAction::from_fn(w, t, |x, e| permute_coords(&padded(w, x, n), e))
    }

    /// The restriction of the coordinate permutation action on `(Z/2)ⁿ` to the even-weight
    /// subgroup, written in the basis `eᵢ + eₙ` (`i < n`).
    pub fn permute_even(w: &FiniteGroup, n: usize) -> Result<GAction> {
        if n < 2 {
            return Err(Error::InvalidAction(
                "even-weight action needs n ≥ 2".into(),
            ));
        }
        let t = FinAbGroup::new(vec![2; n - 1])?;
        check_permutable(w, &FinAbGroup::new(vec![2; n])?, n)?;
        GAction::from_fn(w, &t, |x, e| {
            // y ↦ (y, Σy) ∈ (Z/2)ⁿ, permute, drop the last coordinate
            let mut full = e.0.clone();
            full.push(e.0.iter().sum::<u64>() % 2);
            let moved = permute_coords(&padded(w, x, n), &AbElement(full));
            AbElement(moved.0[..n - 1].to_vec())
        })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self, w: usize) -> &[Vec<i64>] {
        &self.matrices[w]
    }

    pub fn hom(&self, w: usize) -> AbHom {
        AbHom::new(
            self.target.clone(),
            self.target.clone(),
            self.matrices[w].clone(),
        )
        .expect("validated action")
    }

    pub fn apply(&self, w: usize, t: &AbElement) -> AbElement {
        self.target
            .element_at(self.tables[w][self.target.index_of(t)] as usize)
    }

    /// `σ(w)` on element indices of `T`.
    #[inline]
    pub fn apply_index(&self, w: usize, t: usize) -> usize {
        self.tables[w][t] as usize
    }

    pub fn table(&self, w: usize) -> &[u32] {
        &self.tables[w]
    }

    pub fn is_trivial(&self) -> bool {
        self.tables
            .iter()
            .all(|tab| tab.iter().enumerate().all(|(i, &x)| i == x as usize))
    }

    /// Pulls the action back along a homomorphism `V → W`.
    pub fn pullback(&self, v: &FiniteGroup, map: &[usize]) -> Result<GAction> {
        if !v.is_homomorphism(&self.source, map) {
            return Err(Error::InvalidAction(
                "pullback map is not a homomorphism".into(),
            ));
        }
        GAction::from_matrices(
            v,
            &self.target,
            map.iter().map(|&w| self.matrices[w].clone()).collect(),
        )
    }

    /// Exhaustive check of `σ(e) = id`, bijectivity, and `σ(w₁w₂) = σ(w₁)σ(w₂)`.
    pub fn validate(&self) -> Result<()> {
        let w = &self.source;
        let size = self.tables.first().map_or(0, Vec::len);
        if self.tables[0]
            .iter()
            .enumerate()
            .any(|(i, &x)| i != x as usize)
        {
            return Err(Error::InvalidAction("σ(e) is not the identity".into()));
        }
        for (x, tab) in self.tables.iter().enumerate() {
            let mut seen = vec![false; size];
            for &y in tab {
                if std::mem::replace(&mut seen[y as usize], true) {
                    return Err(Error::InvalidAction(format!(
                        "σ({}) is not bijective",
                        w.label(x)
                    )));
                }
            }
        }
        for a in 0..w.order() {
            for b in 0..w.order() {
                let ab = w.mul(a, b);
                let ok = (0..size)
                    .all(|i| self.tables[ab][i] == self.tables[a][self.tables[b][i] as usize]);
                if !ok {
                    return Err(Error::InvalidAction(format!(
                        "σ({}·{}) ≠ σ({})σ({})",
                        w.label(a),
                        w.label(b),
                        w.label(a),
                        w.label(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn compose(t: &FinAbGroup, a: &AbHom, b: &AbHom) -> Vec<Vec<i64>> {
    AbHom::from_fn(t.clone(), t.clone(), |e| a.apply(&b.apply(e)))
        .expect("composite of endomorphisms")
        .matrix()
        .to_vec()
}

fn same_map(t: &FinAbGroup, a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    a.iter().zip(b).zip(t.orders()).all(|((ra, rb), &d)| {
        ra.iter()
            .zip(rb)
            .all(|(x, y)| (x - y).rem_euclid(d as i64) == 0)
    })
}

fn check_permutable(w: &FiniteGroup, t: &FinAbGroup, n: usize) -> Result<()> {
    let Some(deg) = w.degree() else {
        return Err(Error::InvalidAction(
            "W has no permutation representation".into(),
        ));
    };
    if deg > n {
        return Err(Error::InvalidAction(format!(
            "W acts on {deg} points but T has rank {n}"
        )));
    }
    if t.orders().windows(2).any(|p| p[0] != p[1]) {
        return Err(Error::InvalidAction("coordinate orders differ".into()));
    }
    Ok(())
}

fn padded(w: &FiniteGroup, x: usize, n: usize) -> Perm {
    w.perm(x)
        .expect("checked permutation representation")
        .padded(n)
}

fn permute_coords(p: &Perm, e: &AbElement) -> AbElement {
    let mut out = vec![0u64; e.0.len()];
    for (i, &c) in e.0.iter().enumerate() {
        out[p.apply(i)] = c;
    }
    AbElement(out)
}

/// `T ⋊_σ W` with its marked maps. Element `(t, w)` has index `w·|T| + index(t)`.
#[derive(Clone, Debug)]
pub struct SemiDirect {
    pub group: FiniteGroup,
    /// `embed[i]` is the image of the `i`-th element of `T`.
    pub embed: Vec<usize>,
    /// `project[n]` is the image of `n` in `W`.
    pub project: Vec<usize>,
}

pub fn semidirect(t: &FinAbGroup, w: &FiniteGroup, sigma: &GAction) -> Result<SemiDirect> {
    twisted_product(t, w, sigma, |_, _| 0)
}

/// The crossed product `T ×_f W` with `(t₁,w₁)(t₂,w₂) = (t₁ + σ(w₁)t₂ + f(w₁,w₂), w₁w₂)`,
/// `f` given on element indices of `W` and returning element indices of `T`. The caller is
/// responsible for `f` being a normalized cocycle; the group axioms are still verified.
pub(crate) fn twisted_product<F>(
    t: &FinAbGroup,
    w: &FiniteGroup,
    sigma: &GAction,
    f: F,
) -> Result<SemiDirect>
where
    F: Fn(usize, usize) -> usize,
{
    if sigma.target() != t || sigma.source().order() != w.order() {
        return Err(Error::InvalidAction("action does not match T and W".into()));
    }
    let nt = t
        .order_u64()
        .filter(|&n| n <= MAX_TARGET_ORDER)
        .ok_or_else(|| Error::Unsupported(format!("|T| too large: {t}")))? as usize;
    let n = nt * w.order();
    if n > DEFAULT_ORDER_BOUND {
        return Err(Error::InvalidGroup(format!(
            "product of order {n} exceeds the bound {DEFAULT_ORDER_BOUND}"
        )));
    }
    let elems: Vec<AbElement> = (0..nt).map(|i| t.element_at(i)).collect();
    let mut mul = vec![0u32; n * n];
    for w1 in 0..w.order() {
        for w2 in 0..w.order() {
            let w12 = w.mul(w1, w2);
            let c = &elems[f(w1, w2)];
            for t2 in 0..nt {
                let s = t.add(&elems[sigma.apply_index(w1, t2)], c);
                for t1 in 0..nt {
                    let prod = t.index_of(&t.add(&elems[t1], &s));
                    mul[(w1 * nt + t1) * n + w2 * nt + t2] = (w12 * nt + prod) as u32;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|i| format!("({},{})", elems[i % nt], w.label(i / nt)))
        .collect();
    let group = FiniteGroup::from_raw(n, mul, labels, None)?;
    Ok(SemiDirect {
        group,
        embed: (0..nt).collect(),
        project: (0..n).map(|i| i / nt).collect(),
    })
}

/// `D₂ₙ = Z/n ⋊ Z/2` with `Z/2` acting by inversion.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("dihedral parameter must be ≥ 1".into()));
    }
    let t = FinAbGroup::new(vec![n as u64])?;
    let w = FiniteGroup::cyclic(2)?;
    let sigma = GAction::via_character(&w, &t, &[false, true])?;
    Ok(semidirect(&t, &w, &sigma)?.group)
}

/// The type `Bₙ` Weyl group `(Z/2)ⁿ ⋊ Σₙ`, returned with its marked maps and action.
pub fn weyl_b(n: usize) -> Result<(SemiDirect, GAction)> {
    let w = FiniteGroup::symmetric(n)?;
    let t = FinAbGroup::new(vec![2; n])?;
    let sigma = GAction::permute(&w, &t)?;
    Ok((semidirect(&t, &w, &sigma)?, sigma))
}

/// The type `Dₙ` Weyl group: even-weight vectors of `(Z/2)ⁿ` extended by `Σₙ`.
pub fn weyl_d(n: usize) -> Result<(SemiDirect, GAction)> {
    let w = FiniteGroup::symmetric(n)?;
    let sigma = GAction::permute_even(&w, n)?;
    let t = sigma.target().clone();
    Ok((semidirect(&t, &w, &sigma)?, sigma))
}
