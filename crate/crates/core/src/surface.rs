//! Surface groups `π_g = ⟨a₁, b₁, …, a_g, b_g | [a₁,b₁]⋯[a_g,b_g]⟩` and `Hom(π_g, G)`.
//!
//! Words are sequences of nonzero integers: `k` is the `k`-th generator (1-based, in the
//! order `a₁, b₁, a₂, …`) and `−k` its inverse. `[x, y] = x·y·x⁻¹·y⁻¹`.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type Word = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceGroup {
    genus: usize,
}

impl SurfaceGroup {
    pub fn new(genus: usize) -> SurfaceGroup {
        SurfaceGroup { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> Word {
        let mut w = Vec::with_capacity(4 * self.genus);
        for i in 0..self.genus as i32 {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            w.extend_from_slice(&[a, b, -a, -b]);
        }
        w
    }

    pub fn generator_name(&self, k: usize) -> String {
        format!("{}{}", if k % 2 == 0 { 'a' } else { 'b' }, k / 2 + 1)
    }
}

/// A homomorphism `π_g → G`, given by the images of `a₁, b₁, …, a_g, b_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceRep {
    pub images: Vec<usize>,
}

impl SurfaceRep {
    pub fn new(g: &FiniteGroup, images: Vec<usize>) -> Result<SurfaceRep> {
        if images.len() % 2 != 0 || images.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidRepresentation(
                "need 2g images inside the group".into(),
            ));
        }
        let rep = SurfaceRep { images };
        if !rep.satisfies_relation(g) {
            return Err(Error::InvalidRepresentation(
                "images do not satisfy the surface relation".into(),
            ));
        }
        Ok(rep)
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }

    pub fn eval(&self, g: &FiniteGroup, word: &[i32]) -> usize {
        word.iter().fold(0, |acc, &l| {
            let x = self.images[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l > 0 { x } else { g.inv(x) })
        })
    }

    pub fn satisfies_relation(&self, g: &FiniteGroup) -> bool {
        self.eval(g, &SurfaceGroup::new(self.genus()).relator()) == 0
    }

    pub fn is_surjective(&self, g: &FiniteGroup) -> bool {
        g.generates(&self.images)
    }

    /// `x ↦ n·ρ(x)·n⁻¹`.
    pub fn conjugate(&self, g: &FiniteGroup, n: usize) -> SurfaceRep {
        SurfaceRep {
            images: self.images.iter().map(|&x| g.conjugate(n, x)).collect(),
        }
    }

    /// Composite with a group homomorphism given as an element map.
    pub fn compose(&self, map: &[usize]) -> SurfaceRep {
        SurfaceRep {
            images: self.images.iter().map(|&x| map[x]).collect(),
        }
    }
}

/// For each `a`, the elements `b` grouped by `b·a·b⁻¹`.
struct ConjugatorTable {
    by_target: Vec<HashMap<usize, Vec<usize>>>,
}

impl ConjugatorTable {
    fn new(g: &FiniteGroup) -> ConjugatorTable {
        let by_target = (0..g.order())
            .map(|a| {
                let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
                for b in 0..g.order() {
                    m.entry(g.conjugate(b, a)).or_default().push(b);
                }
                m
            })
            .collect();
        ConjugatorTable { by_target }
    }

    /// All `b` with `[a, b] = x`, ascending.
    fn solve(&self, g: &FiniteGroup, a: usize, x: usize) -> &[usize] {
        // a·b·a⁻¹·b⁻¹ = x  ⟺  b·a·b⁻¹ = x⁻¹·a
        let y = g.mul(g.inv(x), a);
        self.by_target[a].get(&y).map_or(&[], Vec::as_slice)
    }
}

/// Work needed to enumerate `Hom(π_g, G)`: prefixes of length `2g − 1`.
pub fn enumeration_cost(genus: usize, g: &FiniteGroup) -> u128 {
    if genus == 0 {
        return 1;
    }
    (g.order() as u128).saturating_pow(2 * genus as u32 - 1)
}

/// Calls `visit` on every homomorphism, in lexicographic order of the image tuple.
pub fn for_each_hom<F>(genus: usize, g: &FiniteGroup, budget: &Budget, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    budget.check("homomorphism enumeration", enumeration_cost(genus, g))?;
    if genus == 0 {
        visit(&[]);
        return Ok(());
    }
    let table = ConjugatorTable::new(g);
    for first in 0..g.order() {
        walk_prefix(genus, g, &table, first, &mut visit);
    }
    Ok(())
}

/// All tuples starting with `first`, with the last image solved from the relation.
fn walk_prefix<F>(genus: usize, g: &FiniteGroup, table: &ConjugatorTable, first: usize, visit: &mut F)
where
    F: FnMut(&[usize]),
{
    let n = g.order();
    let len = 2 * genus;
    let mut tuple = vec![0usize; len];
    tuple[0] = first;
    // odometer over positions 1..len−1
    loop {
        // product of the complete commutators before the last pair
        let mut p = 0;
        for i in 0..genus - 1 {
            p = g.mul(p, g.commutator(tuple[2 * i], tuple[2 * i + 1]));
        }
        let a = tuple[len - 2];
        for &b in table.solve(g, a, g.inv(p)) {
            tuple[len - 1] = b;
            visit(&tuple);
        }
        let mut i = len - 2;
        loop {
            if i == 0 {
                return;
            }
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
            i -= 1;
        }
    }
}

pub fn enumerate_homs(genus: usize, g: &FiniteGroup, budget: &Budget) -> Result<Vec<SurfaceRep>> {
    let mut out = Vec::new();
    for_each_hom(genus, g, budget, |t| {
        out.push(SurfaceRep { images: t.to_vec() })
    })?;
    Ok(out)
}

/// The surjective homomorphisms, in enumeration order. Covers are selected by index into
/// this list.
pub fn surjections(genus: usize, g: &FiniteGroup, budget: &Budget) -> Result<Vec<SurfaceRep>> {
    let mut out = Vec::new();
    for_each_hom(genus, g, budget, |t| {
        if g.generates(t) {
            out.push(SurfaceRep { images: t.to_vec() })
        }
    })?;
    Ok(out)
}

/// [`enumerate_homs`] split by the image of `a₁` across `workers` threads. The output is
/// identical to the sequential enumeration.
pub fn enumerate_homs_parallel(
    genus: usize,
    g: &FiniteGroup,
    budget: &Budget,
    workers: usize,
) -> Result<Vec<SurfaceRep>> {
    if genus == 0 || workers <= 1 {
        return enumerate_homs(genus, g, budget);
    }
    budget.check("homomorphism enumeration", enumeration_cost(genus, g))?;
    let table = ConjugatorTable::new(g);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let chunks: Vec<Vec<SurfaceRep>> = pool.install(|| {
        (0..g.order())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                walk_prefix(genus, g, &table, first, &mut |t: &[usize]| {
                    out.push(SurfaceRep { images: t.to_vec() })
                });
                out
            })
            .collect()
    });
    Ok(chunks.into_iter().flatten().collect())
}

pub fn count_homs(genus: usize, g: &FiniteGroup, budget: &Budget) -> Result<u128> {
    let mut n = 0u128;
    for_each_hom(genus, g, budget, |_| n += 1)?;
    Ok(n)
}

/// `|Hom(π_g, G)|` from the distribution of commutators: `μ(x) = #{(a, b) : [a, b] = x}`,
/// then the `g`-fold convolution of `μ` evaluated at the identity.
pub fn commutator_convolution_count(genus: usize, g: &FiniteGroup) -> BigUint {
    let n = g.order();
    let mut mu = vec![BigUint::from(0u32); n];
    for a in 0..n {
        for b in 0..n {
            mu[g.commutator(a, b)] += 1u32;
        }
    }
    let mut acc = vec![BigUint::from(0u32); n];
    acc[0] = BigUint::from(1u32);
    for _ in 0..genus {
        let mut next = vec![BigUint::from(0u32); n];
        for (x, ax) in acc.iter().enumerate() {
            if *ax == BigUint::from(0u32) {
                continue;
            }
            for (y, my) in mu.iter().enumerate() {
                if *my != BigUint::from(0u32) {
                    next[g.mul(x, y)] += ax * my;
                }
            }
        }
        acc = next;
    }
    acc.swap_remove(0)
}

/// Orbits of `homs` under simultaneous conjugation, as lists of indices into `homs`, each
/// sorted, ordered by smallest member. Representations outside `homs` are ignored.
pub fn conjugacy_classes(homs: &[SurfaceRep], g: &FiniteGroup) -> Vec<Vec<usize>> {
    let index: HashMap<&[usize], usize> = homs
        .iter()
        .enumerate()
        .map(|(i, r)| (r.images.as_slice(), i))
        .collect();
    let mut seen = vec![false; homs.len()];
    let mut out = Vec::new();
    for i in 0..homs.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for n in 0..g.order() {
            let c = homs[i].conjugate(g, n);
            if let Some(&j) = index.get(c.images.as_slice()) {
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Elements of `G` fixing `ρ` under conjugation: the centralizer of its image.
pub fn stabilizer(rep: &SurfaceRep, g: &FiniteGroup) -> Vec<usize> {
    (0..g.order())
        .filter(|&n| rep.images.iter().all(|&x| g.conjugate(n, x) == x))
        .collect()
}
