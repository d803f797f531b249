//! Bar cochains of a finite group `W` with coefficients in a `W`-module `T`, and `H²(W, T)`.
//!
//! Coboundaries use the convention
//!
//! ```text
//! (dθ)(w₁, w₂)     = σ(w₁)θ(w₂) − θ(w₁w₂) + θ(w₁)
//! (df)(w₁, w₂, w₃) = σ(w₁)f(w₂, w₃) − f(w₁w₂, w₃) + f(w₁, w₂w₃) − f(w₁, w₂)
//! ```
//!
//! `H²` is computed on normalized cochains (`f(e, w) = f(w, e) = 0`). A normalized 2-cochain
//! is encoded as an element of `T^((|W|−1)²)`, slot `(w₁, w₂)` at position
//! `(w₁ − 1)(|W| − 1) + (w₂ − 1)`.

use num_bigint::BigUint;
use rand::Rng;

use crate::abelian::{AbElement, AbHom, FinAbGroup, Quotient, Subgroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::GAction;

/// A function `Wⁿ → T`, stored densely with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    w_order: usize,
    values: Vec<AbElement>,
}

impl Cochain {
    pub fn zero(degree: usize, w_order: usize, t: &FinAbGroup) -> Cochain {
        Cochain {
            degree,
            w_order,
            values: vec![t.zero(); w_order.pow(degree as u32)],
        }
    }

    pub fn from_fn<F>(degree: usize, w_order: usize, mut f: F) -> Cochain
    where
        F: FnMut(&[usize]) -> AbElement,
    {
        let len = w_order.pow(degree as u32);
        let mut args = vec![0usize; degree];
        let values = (0..len)
            .map(|mut i| {
                for a in args.iter_mut().rev() {
                    *a = i % w_order;
                    i /= w_order;
                }
                f(&args)
            })
            .collect();
        Cochain {
            degree,
            w_order,
            values,
        }
    }

    pub fn from_values(
        degree: usize,
        w_order: usize,
        t: &FinAbGroup,
        values: Vec<AbElement>,
    ) -> Result<Cochain> {
        if values.len() != w_order.pow(degree as u32) {
            return Err(Error::Dimension(format!(
                "{}-cochain on a group of order {w_order} needs {} values, got {}",
                degree,
                w_order.pow(degree as u32),
                values.len()
            )));
        }
        for v in &values {
            t.element(v.0.clone())?;
        }
        Ok(Cochain {
            degree,
            w_order,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn w_order(&self) -> usize {
        self.w_order
    }

    /// Values in argument order; for degree 2 the value at `(w₁, w₂)` sits at `w₁·|W| + w₂`.
    pub fn values(&self) -> &[AbElement] {
        &self.values
    }

    fn index(&self, args: &[usize]) -> usize {
        assert_eq!(args.len(), self.degree, "cochain arity");
        args.iter().fold(0, |acc, &a| acc * self.w_order + a)
    }

    pub fn at(&self, args: &[usize]) -> &AbElement {
        &self.values[self.index(args)]
    }

    pub fn set(&mut self, args: &[usize], v: AbElement) {
        let i = self.index(args);
        self.values[i] = v;
    }

    pub fn add(&self, t: &FinAbGroup, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.w_order), (other.degree, other.w_order));
        Cochain {
            degree: self.degree,
            w_order: self.w_order,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| t.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, t: &FinAbGroup, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.w_order), (other.degree, other.w_order));
        Cochain {
            degree: self.degree,
            w_order: self.w_order,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| t.sub(a, b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.0.iter().all(|&c| c == 0))
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let zero = |v: &AbElement| v.0.iter().all(|&c| c == 0);
        Cochain::from_fn(self.degree, self.w_order, |args| {
            AbElement(vec![u64::from(args.contains(&0) && !zero(self.at(args)))])
        })
        .is_zero()
    }
}

/// `d: Cⁿ → Cⁿ⁺¹` for `n ≤ 2`.
pub fn coboundary(sigma: &GAction, c: &Cochain) -> Result<Cochain> {
    let w = sigma.source();
    let t = sigma.target();
    if c.w_order != w.order() {
        return Err(Error::Dimension("cochain and action disagree on |W|".into()));
    }
    let out = match c.degree {
        0 => {
            let x = &c.values[0];
            Cochain::from_fn(1, w.order(), |a| t.sub(&sigma.apply(a[0], x), x))
        }
        1 => Cochain::from_fn(2, w.order(), |a| {
            let (w1, w2) = (a[0], a[1]);
            let s = sigma.apply(w1, c.at(&[w2]));
            t.add(&t.sub(&s, c.at(&[w.mul(w1, w2)])), c.at(&[w1]))
        }),
        2 => Cochain::from_fn(3, w.order(), |a| {
            let (w1, w2, w3) = (a[0], a[1], a[2]);
            let s = sigma.apply(w1, c.at(&[w2, w3]));
            let s = t.sub(&s, c.at(&[w.mul(w1, w2), w3]));
            let s = t.add(&s, c.at(&[w1, w.mul(w2, w3)]));
            t.sub(&s, c.at(&[w1, w2]))
        }),
        n => {
            return Err(Error::Unsupported(format!("coboundary of degree {n}")));
        }
    };
    Ok(out)
}

pub fn is_cocycle(sigma: &GAction, c: &Cochain) -> Result<bool> {
    Ok(coboundary(sigma, c)?.is_zero())
}

/// Returns `(f′, θ)` with `f′` normalized and `f − f′ = dθ`. For a 2-cocycle, `f(e, w)` is
/// the constant `f(e, e)`, so a constant `θ` suffices.
pub fn normalize(sigma: &GAction, f: &Cochain) -> Result<(Cochain, Cochain)> {
    if f.degree != 2 || !is_cocycle(sigma, f)? {
        return Err(Error::NotCocycle("normalization needs a 2-cocycle".into()));
    }
    let c = f.at(&[0, 0]).clone();
    let theta = Cochain::from_fn(1, f.w_order, |_| c.clone());
    let normalized = f.sub(sigma.target(), &coboundary(sigma, &theta)?);
    debug_assert!(normalized.is_normalized());
    Ok((normalized, theta))
}

/// Returns `θ` with `f − g = dθ`, or `None` when `f` and `g` are not cohomologous.
pub fn cohomologous(sigma: &GAction, f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    for c in [f, g] {
        if c.degree != 2 || !is_cocycle(sigma, c)? {
            return Err(Error::NotCocycle("cohomologous needs 2-cocycles".into()));
        }
    }
    let t = sigma.target();
    let n = sigma.source().order();
    let d1 = coboundary_map(sigma, 1, false);
    let diff = f.sub(t, g);
    let (x, _) = match d1.solve(&flatten(t, &diff.values)) {
        Some(s) => s,
        None => return Ok(None),
    };
    let theta = Cochain::from_values(1, n, t, unflatten(t, &x, n))?;
    debug_assert_eq!(coboundary(sigma, &theta)?, diff);
    Ok(Some(theta))
}

fn flatten(t: &FinAbGroup, values: &[AbElement]) -> AbElement {
    let mut out = Vec::with_capacity(values.len() * t.rank());
    for v in values {
        out.extend_from_slice(&v.0);
    }
    AbElement(out)
}

fn unflatten(t: &FinAbGroup, x: &AbElement, count: usize) -> Vec<AbElement> {
    let m = t.rank();
    (0..count)
        .map(|i| AbElement(x.0[i * m..(i + 1) * m].to_vec()))
        .collect()
}

/// Accumulates a block matrix whose blocks are `m × m` endomorphisms of `T`.
struct BlockMatrix<'a> {
    sigma: &'a GAction,
    m: usize,
    cells: Vec<Vec<i64>>,
}

impl<'a> BlockMatrix<'a> {
    fn new(sigma: &'a GAction, row_blocks: usize, col_blocks: usize) -> Self {
        let m = sigma.target().rank();
        BlockMatrix {
            sigma,
            m,
            cells: vec![vec![0; col_blocks * m]; row_blocks * m],
        }
    }

    fn add_identity(&mut self, r: usize, c: usize, sign: i64) {
        for i in 0..self.m {
            self.cells[r * self.m + i][c * self.m + i] += sign;
        }
    }

    fn add_sigma(&mut self, r: usize, c: usize, w: usize) {
        let mat = self.sigma.matrix(w);
        for i in 0..self.m {
            for j in 0..self.m {
                self.cells[r * self.m + i][c * self.m + j] += mat[i][j];
            }
        }
    }

    fn finish(self, domain_blocks: usize, codomain_blocks: usize) -> AbHom {
        let t = self.sigma.target();
        AbHom::new(t.power(domain_blocks), t.power(codomain_blocks), self.cells)
            .expect("block matrix of endomorphisms is well defined")
    }
}

/// `d` in degree `n ∈ {1, 2}` as a matrix. With `normalized`, the domain is normalized
/// cochains and the codomain is restricted to arguments without an identity entry, which is
/// where a coboundary of a normalized cochain can be nonzero.
fn coboundary_map(sigma: &GAction, degree: usize, normalized: bool) -> AbHom {
    let w = sigma.source();
    let n = w.order();
    let (k, lo) = if normalized { (n - 1, 1) } else { (n, 0) };
    let slot = |args: &[usize]| -> Option<usize> {
        if normalized && args.contains(&0) {
            return None;
        }
        Some(args.iter().fold(0, |acc, &a| acc * k + (a - lo)))
    };
    match degree {
        1 => {
            let mut b = BlockMatrix::new(sigma, k * k, k);
            for w1 in lo..n {
                for w2 in lo..n {
                    let r = slot(&[w1, w2]).expect("row in range");
                    if let Some(c) = slot(&[w2]) {
                        b.add_sigma(r, c, w1);
                    }
                    if let Some(c) = slot(&[w.mul(w1, w2)]) {
                        b.add_identity(r, c, -1);
                    }
                    if let Some(c) = slot(&[w1]) {
                        b.add_identity(r, c, 1);
                    }
                }
            }
            b.finish(k, k * k)
        }
        2 => {
            let mut b = BlockMatrix::new(sigma, k * k * k, k * k);
            for w1 in lo..n {
                for w2 in lo..n {
                    for w3 in lo..n {
                        let r = slot(&[w1, w2, w3]).expect("row in range");
                        if let Some(c) = slot(&[w2, w3]) {
                            b.add_sigma(r, c, w1);
                        }
                        if let Some(c) = slot(&[w.mul(w1, w2), w3]) {
                            b.add_identity(r, c, -1);
                        }
                        if let Some(c) = slot(&[w1, w.mul(w2, w3)]) {
                            b.add_identity(r, c, 1);
                        }
                        if let Some(c) = slot(&[w1, w2]) {
                            b.add_identity(r, c, -1);
                        }
                    }
                }
            }
            b.finish(k * k, k * k * k)
        }
        _ => unreachable!("only degrees 1 and 2 are assembled"),
    }
}

/// `H¹(W, T)` as crossed homomorphisms modulo principal ones, both inside `T^|W|`.
#[derive(Clone, Debug)]
pub struct H1 {
    pub z1: Subgroup,
    pub b1: Subgroup,
}

impl H1 {
    pub fn order(&self) -> BigUint {
        self.z1.order() / self.b1.order()
    }
}

pub fn h1(sigma: &GAction) -> H1 {
    let t = sigma.target();
    let n = sigma.source().order();
    let z1 = coboundary_map(sigma, 1, false).kernel();
    // d: T → T^|W|, x ↦ (σ(w)x − x)_w
    let m = t.rank();
    let mut rows = Vec::with_capacity(n * m);
    for w in 0..n {
        for i in 0..m {
            let mut r = sigma.matrix(w)[i].clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    let d0 = AbHom::new(t.clone(), t.power(n), rows).expect("difference of automorphisms");
    H1 {
        z1,
        b1: d0.image(),
    }
}

/// A cohomology class: coordinates in the computed decomposition of `H²` and the canonical
/// normalized representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub group: FinAbGroup,
    pub coords: Vec<u64>,
    pub rep: Cochain,
}

impl CohClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// `H²(W, T)` together with `Z²` and `B²` on normalized cochains.
#[derive(Clone, Debug)]
pub struct H2 {
    sigma: GAction,
    z2: Subgroup,
    b2: Subgroup,
    quotient: Quotient,
    group: FinAbGroup,
}

pub fn h2(sigma: &GAction, budget: &Budget) -> Result<H2> {
    let n = sigma.source().order() as u128;
    let m = sigma.target().rank() as u128;
    let k = n.saturating_sub(1);
    // elimination on (k²m unknowns)² × k³m equations
    budget.check("H² elimination work", k.pow(7) * m.pow(3))?;
    let d2 = coboundary_map(sigma, 2, true);
    let d1 = coboundary_map(sigma, 1, true);
    let z2 = d2.kernel();
    let b2 = d1.image();
    let quotient = z2.quotient(&b2)?;
    let group = quotient.as_group();
    Ok(H2 {
        sigma: sigma.clone(),
        z2,
        b2,
        quotient,
        group,
    })
}

impl H2 {
    pub fn action(&self) -> &GAction {
        &self.sigma
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> BigUint {
        self.quotient.order()
    }

    /// Normalized cocycles as a subgroup of `T^((|W|−1)²)`.
    pub fn z2(&self) -> &Subgroup {
        &self.z2
    }

    pub fn b2(&self) -> &Subgroup {
        &self.b2
    }

    fn slots(&self) -> usize {
        self.sigma.source().order() - 1
    }

    /// Encodes a normalized 2-cochain.
    pub fn encode(&self, f: &Cochain) -> Result<AbElement> {
        if f.degree != 2 || f.w_order != self.sigma.source().order() || !f.is_normalized() {
            return Err(Error::NotCocycle("expected a normalized 2-cochain".into()));
        }
        let k = self.slots();
        let mut out = Vec::with_capacity(k * k * self.sigma.target().rank());
        for w1 in 1..=k {
            for w2 in 1..=k {
                out.extend_from_slice(&f.at(&[w1, w2]).0);
            }
        }
        Ok(AbElement(out))
    }

    pub fn decode(&self, x: &AbElement) -> Cochain {
        let t = self.sigma.target();
        let m = t.rank();
        let k = self.slots();
        Cochain::from_fn(2, k + 1, |a| {
            if a[0] == 0 || a[1] == 0 {
                return t.zero();
            }
            let s = (a[0] - 1) * k + (a[1] - 1);
            AbElement(x.0[s * m..(s + 1) * m].to_vec())
        })
    }

    /// The class of any 2-cocycle, normalizing it first.
    pub fn classify(&self, f: &Cochain) -> Result<CohClass> {
        Ok(self.class(&self.coords(f)?))
    }

    /// Coordinates of the class of a 2-cocycle, skipping the representative search.
    pub fn coords(&self, f: &Cochain) -> Result<Vec<u64>> {
        // membership in Z² is decided by the lattice, so normalized input skips the check
        let x = if f.is_normalized() {
            self.encode(f)?
        } else {
            self.encode(&normalize(&self.sigma, f)?.0)?
        };
        self.quotient
            .coords(&x)
            .ok_or_else(|| Error::NotCocycle("cochain fails the cocycle identity".into()))
    }

    /// The class with the given coordinates. Its representative is the lexicographically
    /// smallest normalized cocycle in the class.
    pub fn class(&self, coords: &[u64]) -> CohClass {
        let coords = self.group.reduce(&coords.iter().map(|&c| c as i64).collect::<Vec<_>>());
        let rep = self.decode(&self.quotient.representative(&coords.0));
        CohClass {
            group: self.group.clone(),
            coords: coords.0,
            rep,
        }
    }

    pub fn zero_class(&self) -> CohClass {
        self.class(&vec![0; self.group.rank()])
    }

    /// One class per cyclic factor of `H²`.
    pub fn basis(&self) -> Vec<CohClass> {
        (0..self.group.rank())
            .map(|i| {
                let mut c = vec![0u64; self.group.rank()];
                c[i] = 1;
                self.class(&c)
            })
            .collect()
    }

    pub fn classes(&self) -> impl Iterator<Item = CohClass> + '_ {
        self.group.elements().map(move |c| self.class(&c.0))
    }

    /// A uniformly random normalized cocycle.
    pub fn random_cocycle<R: Rng>(&self, rng: &mut R) -> Cochain {
        let coords: Vec<u64> = self.z2.orders().iter().map(|&d| rng.gen_range(0..d)).collect();
        self.decode(&self.z2.element(&coords))
    }

    pub fn same_class(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        Ok(self.classify(f)?.coords == self.classify(g)?.coords)
    }
}
