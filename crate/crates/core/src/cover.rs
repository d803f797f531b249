//! The cover `Z → X` attached to a surjection `ρ̄: π_g → W`, via Reidemeister–Schreier.
//!
//! `K = ker ρ̄` is the fundamental group of `Z`. Cosets of `K` are identified with elements
//! of `W`; the transversal word `t(w)` satisfies `ρ̄(t(w)) = w`. The Schreier generator for
//! `(w, x)` is `t(w)·x·t(w·ρ̄(x))⁻¹`, and those coming from tree edges are trivial and dropped.
//!
//! A `T`-bundle on `Z` is a homomorphism `K_ab → T`, stored as the tuple of its values on
//! the Schreier generators (an element of `T^r`).

use std::collections::VecDeque;

use crate::abelian::{hom_solutions, smith_normal_form, AbElement, AbHom, FinAbGroup, IntMatrix, Subgroup};
use crate::cohomology::{coboundary, Cochain};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GAction};
use crate::surface::{SurfaceGroup, SurfaceRep, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    genus: usize,
    w: FiniteGroup,
    rho: SurfaceRep,
    transversal: Vec<Word>,
    /// `slot[w·2g + k]` is the column of the Schreier generator for `(w, x_k)`, if nontrivial.
    slot: Vec<Option<usize>>,
    generators: Vec<(usize, usize)>,
    relator_matrix: IntMatrix,
}

/// Builds the cover with the breadth-first Schreier tree in generator order `a₁ < b₁ < …`.
pub fn build_cover(rho: &SurfaceRep, w: &FiniteGroup) -> Result<Cover> {
    let order: Vec<usize> = (0..rho.images.len()).collect();
    build_cover_with_order(rho, w, &order)
}

/// As [`build_cover`], exploring generators in the given order when growing the tree.
pub fn build_cover_with_order(rho: &SurfaceRep, w: &FiniteGroup, order: &[usize]) -> Result<Cover> {
    let ng = rho.images.len();
    if !rho.satisfies_relation(w) {
        return Err(Error::InvalidRepresentation(
            "images do not satisfy the surface relation".into(),
        ));
    }
    if !rho.is_surjective(w) {
        return Err(Error::InvalidRepresentation(
            "the cover is disconnected: ρ̄ is not surjective".into(),
        ));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..ng).collect::<Vec<_>>() {
        return Err(Error::InvalidRepresentation(
            "generator order is not a permutation".into(),
        ));
    }
    let n = w.order();
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    transversal[0] = Some(Vec::new());
    let mut tree = vec![false; n * ng];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &k in order {
            let u = w.mul(v, rho.images[k]);
            if transversal[u].is_none() {
                let mut word = transversal[v].clone().expect("visited");
                word.push(k as i32 + 1);
                transversal[u] = Some(word);
                tree[v * ng + k] = true;
                queue.push_back(u);
            }
        }
    }
    let transversal: Vec<Word> = transversal
        .into_iter()
        .map(|t| t.expect("ρ̄ is surjective"))
        .collect();
    let mut slot = vec![None; n * ng];
    let mut generators = Vec::new();
    for v in 0..n {
        for k in 0..ng {
            if !tree[v * ng + k] {
                slot[v * ng + k] = Some(generators.len());
                generators.push((v, k));
            }
        }
    }
    let mut cover = Cover {
        genus: ng / 2,
        w: w.clone(),
        rho: rho.clone(),
        transversal,
        slot,
        generators,
        relator_matrix: IntMatrix::zeros(0, 0),
    };
    let relator = SurfaceGroup::new(cover.genus).relator();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|v| {
            let (exps, end) = cover.rewrite_from(v, &relator);
            debug_assert_eq!(end, v);
            exps
        })
        .collect();
    cover.relator_matrix = IntMatrix::from_rows(rows)?;
    Ok(cover)
}

impl Cover {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.w
    }

    pub fn rho(&self) -> &SurfaceRep {
        &self.rho
    }

    /// Genus of `Z`: `|W|(g − 1) + 1`.
    pub fn cover_genus(&self) -> usize {
        self.w.order() * self.genus.saturating_sub(1) + 1
    }

    /// Number of Schreier generators, `|W|(2g − 1) + 1`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn transversal(&self, v: usize) -> &Word {
        &self.transversal[v]
    }

    /// `(w, k)` pairs naming the Schreier generators in column order.
    pub fn schreier_generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// The word `t(w)·x_k·t(w·ρ̄(x_k))⁻¹` of the `i`-th Schreier generator.
    pub fn schreier_word(&self, i: usize) -> Word {
        let (v, k) = self.generators[i];
        let u = self.w.mul(v, self.rho.images[k]);
        let mut word = self.transversal[v].clone();
        word.push(k as i32 + 1);
        word.extend(inverse_word(&self.transversal[u]));
        word
    }

    /// Rows are the conjugates `t(w)·R·t(w)⁻¹` of the surface relator, abelianized.
    pub fn relator_matrix(&self) -> &IntMatrix {
        &self.relator_matrix
    }

    /// Exponents of a word in the Schreier generators, and the coset it ends in.
    pub fn rewrite(&self, word: &[i32]) -> (Vec<i64>, usize) {
        self.rewrite_from(0, word)
    }

    fn rewrite_from(&self, start: usize, word: &[i32]) -> (Vec<i64>, usize) {
        let ng = self.rho.images.len();
        let mut exps = vec![0i64; self.generators.len()];
        let mut v = start;
        for &l in word {
            let k = l.unsigned_abs() as usize - 1;
            let x = self.rho.images[k];
            if l > 0 {
                if let Some(c) = self.slot[v * ng + k] {
                    exps[c] += 1;
                }
                v = self.w.mul(v, x);
            } else {
                v = self.w.mul(v, self.w.inv(x));
                if let Some(c) = self.slot[v * ng + k] {
                    exps[c] -= 1;
                }
            }
        }
        (exps, v)
    }

    /// Invariant factors of `K_ab = Z^r / rowspace`, zeros for free summands.
    pub fn k_ab_invariants(&self) -> Vec<num_bigint::BigInt> {
        let sf = smith_normal_form(&self.relator_matrix);
        let mut d = sf.diagonal();
        d.resize(self.rank(), num_bigint::BigInt::from(0));
        d.retain(|x| *x != num_bigint::BigInt::from(1));
        d
    }

    /// `H¹(Z, T) = Hom(K_ab, T)` inside `T^r`.
    pub fn h1(&self, t: &FinAbGroup) -> Result<Subgroup> {
        hom_solutions(&self.relator_matrix, t)
    }

    /// Matrix of `k ↦ t(w)⁻¹·k·t(w)` on `K_ab`: column `i` is the image of generator `i`.
    pub fn conjugation_matrix(&self, v: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let t = &self.transversal[v];
        let mut cols = Vec::with_capacity(r);
        for i in 0..r {
            let mut word = inverse_word(t);
            word.extend(self.schreier_word(i));
            word.extend_from_slice(t);
            let (exps, end) = self.rewrite(&word);
            debug_assert_eq!(end, 0);
            cols.push(exps);
        }
        (0..r).map(|j| (0..r).map(|i| cols[i][j]).collect()).collect()
    }

    /// Fox derivative of a word for crossed homomorphisms `π → T_σ`: `δ(word) = Σₖ Aₖ·δ(xₖ)`,
    /// returned as the `m × 2g·m` matrix `[A₁ … A_{2g}]`.
    pub(crate) fn fox(&self, sigma: &GAction, word: &[i32]) -> Vec<Vec<i64>> {
        let m = sigma.target().rank();
        let ng = self.rho.images.len();
        let mut out = vec![vec![0i64; ng * m]; m];
        let mut v = 0usize;
        for &l in word {
            let k = l.unsigned_abs() as usize - 1;
            let x = self.rho.images[k];
            let sign = if l > 0 {
                1
            } else {
                v = self.w.mul(v, self.w.inv(x));
                -1
            };
            let mat = sigma.matrix(v);
            for (i, row) in out.iter_mut().enumerate() {
                for j in 0..m {
                    row[k * m + j] += sign * mat[i][j];
                }
            }
            if l > 0 {
                v = self.w.mul(v, x);
            }
        }
        out
    }

    fn check_action(&self, sigma: &GAction) -> Result<()> {
        if sigma.source().order() != self.w.order() {
            return Err(Error::InvalidAction(
                "action is not on the deck group of the cover".into(),
            ));
        }
        Ok(())
    }
}

fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// `H¹(Z, T)` with the twisted action of the deck group.
#[derive(Clone, Debug)]
pub struct CoverCohomology {
    cover: Cover,
    sigma: GAction,
    h1: Subgroup,
    /// `act[w]` is the matrix of `φ ↦ w·φ` on `T^r`.
    act: Vec<AbHom>,
}

pub fn h1_cover(cover: &Cover, sigma: &GAction) -> Result<CoverCohomology> {
    cover.check_action(sigma)?;
    let t = sigma.target();
    let r = cover.rank();
    let m = t.rank();
    let h1 = cover.h1(t)?;
    let act = (0..cover.w.order())
        .map(|v| {
            let conj = cover.conjugation_matrix(v);
            let s = sigma.matrix(v);
            // (w·φ)_j = σ(w)(Σᵢ conj[i][j]·φᵢ)
            let mut mat = vec![vec![0i64; r * m]; r * m];
            for j in 0..r {
                for (i, conj_row) in conj.iter().enumerate() {
                    let c = conj_row[j];
                    if c == 0 {
                        continue;
                    }
                    for a in 0..m {
                        for b in 0..m {
                            mat[j * m + a][i * m + b] += c * s[a][b];
                        }
                    }
                }
            }
            AbHom::new(t.power(r), t.power(r), mat)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverCohomology {
        cover: cover.clone(),
        sigma: sigma.clone(),
        h1,
        act,
    })
}

impl CoverCohomology {
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn action(&self) -> &GAction {
        &self.sigma
    }

    pub fn target(&self) -> &FinAbGroup {
        self.sigma.target()
    }

    /// The ambient `T^r` holding bundle tuples.
    pub fn ambient(&self) -> &FinAbGroup {
        self.h1.ambient()
    }

    pub fn h1(&self) -> &Subgroup {
        &self.h1
    }

    pub fn is_bundle(&self, phi: &AbElement) -> bool {
        self.h1.contains(phi)
    }

    /// Value of a bundle on a word lying in `K`.
    pub fn eval(&self, phi: &AbElement, word: &[i32]) -> Result<AbElement> {
        let (exps, end) = self.cover.rewrite(word);
        if end != 0 {
            return Err(Error::InvalidRepresentation("word is not in K".into()));
        }
        let t = self.target();
        let m = t.rank();
        let mut acc = t.zero();
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                let v = AbElement(phi.0[i * m..(i + 1) * m].to_vec());
                acc = t.add(&acc, &t.scale(e, &v));
            }
        }
        Ok(acc)
    }

    /// `(w·φ)(k) = σ(w)(φ(t(w)⁻¹·k·t(w)))`.
    pub fn twisted_action(&self, v: usize, phi: &AbElement) -> AbElement {
        self.act[v].apply(phi)
    }

    pub fn action_hom(&self, v: usize) -> &AbHom {
        &self.act[v]
    }

    /// `H¹(Z, T)^W`, solved on a generating set of `W`.
    pub fn invariants(&self) -> Subgroup {
        self.invariants_under(&self.cover.w.generators())
    }

    /// Bundles fixed by every element of `gens` (hence by the subgroup they generate).
    pub fn invariants_under(&self, gens: &[usize]) -> Subgroup {
        let amb = self.ambient();
        let n = amb.rank();
        let mut rows = Vec::with_capacity(n * gens.len());
        for &g in gens {
            let mat = self.act[g].matrix();
            for (i, row) in mat.iter().enumerate() {
                let mut r = row.clone();
                r[i] -= 1;
                rows.push(r);
            }
        }
        if rows.is_empty() {
            return self.h1.clone();
        }
        let fixed = AbHom::new(amb.clone(), amb.power(gens.len()), rows)
            .expect("difference of endomorphisms");
        let restricted = fixed.restrict(&self.h1);
        let inv = self.h1.embed(&restricted.kernel());
        debug_assert!(inv
            .generators()
            .iter()
            .all(|x| gens.iter().all(|&v| self.twisted_action(v, x) == *x)));
        inv
    }

    /// Crossed homomorphisms `π → T` (through `σ∘ρ̄`), as their values on `a₁, …, b_g`.
    pub fn z1_surface(&self) -> Subgroup {
        let t = self.target();
        let ng = 2 * self.cover.genus;
        let rel = SurfaceGroup::new(self.cover.genus).relator();
        let f = AbHom::new(t.power(ng), t.clone(), self.cover.fox(&self.sigma, &rel))
            .expect("Fox matrix of an action");
        f.kernel()
    }

    /// Restriction of crossed homomorphisms on `π` to `K`, as a map `T^(2g) → T^r`.
    pub fn restriction(&self) -> AbHom {
        let t = self.target();
        let ng = 2 * self.cover.genus;
        let mut rows = Vec::new();
        for i in 0..self.cover.rank() {
            rows.extend(self.cover.fox(&self.sigma, &self.cover.schreier_word(i)));
        }
        AbHom::new(t.power(ng), t.power(self.cover.rank()), rows).expect("Fox rows")
    }

    /// Inflation of a crossed homomorphism `ε: W → T` to `π`, as its values on `a₁, …, b_g`.
    pub fn inflate(&self, eps: &Cochain) -> Result<AbElement> {
        if eps.degree() != 1 || !coboundary(&self.sigma, eps)?.is_zero() {
            return Err(Error::NotCocycle("inflation needs a crossed homomorphism".into()));
        }
        let mut out = Vec::new();
        for &x in &self.cover.rho.images {
            out.extend_from_slice(&eps.at(&[x]).0);
        }
        Ok(AbElement(out))
    }

    /// `Z¹(W, T)`: crossed homomorphisms on `W`, as 1-cochains.
    pub fn z1_group(&self) -> Vec<Cochain> {
        let t = self.target();
        let n = self.cover.w.order();
        let size = t.order_u64().unwrap_or(u64::MAX) as usize;
        // enumerate values on a generating set and extend; small by construction
        let gens = self.cover.w.generators();
        let mut out = Vec::new();
        let total = size.checked_pow(gens.len() as u32).unwrap_or(usize::MAX);
        for mut i in 0..total {
            let mut vals = vec![None; n];
            vals[0] = Some(t.zero());
            let gvals: Vec<AbElement> = gens
                .iter()
                .map(|_| {
                    let v = t.element_at(i % size);
                    i /= size;
                    v
                })
                .collect();
            let mut queue = VecDeque::from([0usize]);
            let mut ok = true;
            while let Some(x) = queue.pop_front() {
                let ex = vals[x].clone().expect("visited");
                for (g, eg) in gens.iter().zip(&gvals) {
                    // ε(x·g) = ε(x) + σ(x)ε(g)
                    let y = self.cover.w.mul(x, *g);
                    let ey = t.add(&ex, &self.sigma.apply(x, eg));
                    match &vals[y] {
                        None => {
                            vals[y] = Some(ey);
                            queue.push_back(y);
                        }
                        Some(prev) if *prev != ey => ok = false,
                        Some(_) => {}
                    }
                }
            }
            if !ok {
                continue;
            }
            let c = Cochain::from_fn(1, n, |a| vals[a[0]].clone().expect("generated"));
            if coboundary(&self.sigma, &c).map(|d| d.is_zero()).unwrap_or(false) {
                out.push(c);
            }
        }
        out
    }
}
