//! Brute-force oracles that share nothing with the library beyond its multiplication and
//! action tables.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use fibercheck::abelian::{AbElement, FinAbGroup};
use fibercheck::group::{FiniteGroup, GAction};

/// `(a ∘ b)(x) = a(b(x))` on 0-based image vectors.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Order of the permutation group generated by `gens`, by breadth-first closure.
pub fn closure_order(gens: &[Vec<usize>]) -> usize {
    let n = gens.iter().map(Vec::len).max().unwrap_or(0);
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// All tuples of a product of cyclic groups, first coordinate fastest.
pub fn tuples(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in orders {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Number of `x ∈ Tʳ` with `Σ mᵢ xᵢ = 0` for every row.
pub fn count_hom_solutions(matrix: &[Vec<i64>], r: usize, t: &[u64]) -> usize {
    let all = tuples(&vec![t.to_vec(); r].concat());
    let m = t.len();
    all.iter()
        .filter(|x| {
            matrix.iter().all(|row| {
                (0..m).all(|j| {
                    let d = t[j] as i64;
                    let s: i64 = (0..r).map(|i| row[i] * x[i * m + j] as i64).sum();
                    s.rem_euclid(d) == 0
                })
            })
        })
        .count()
}

pub fn element_orders(g: &FiniteGroup) -> Vec<usize> {
    let mut out: Vec<usize> = (0..g.order())
        .map(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = g.mul(x, a);
                k += 1;
            }
            k
        })
        .collect();
    out.sort_unstable();
    out
}

fn commutator(g: &FiniteGroup, a: usize, b: usize) -> usize {
    g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
}

/// `Π [aᵢ, bᵢ]` with `[a, b] = a b a⁻¹ b⁻¹`.
pub fn relator_value(g: &FiniteGroup, t: &[usize]) -> usize {
    t.chunks(2).fold(0, |acc, p| g.mul(acc, commutator(g, p[0], p[1])))
}

/// Every tuple in `G^(2g)` satisfying the surface relation.
pub fn homs(g: &FiniteGroup, genus: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let total = n.pow(2 * genus as u32);
    (0..total)
        .map(|mut i| {
            (0..2 * genus)
                .map(|_| {
                    let x = i % n;
                    i /= n;
                    x
                })
                .collect::<Vec<_>>()
        })
        .filter(|t| relator_value(g, t) == 0)
        .collect()
}

pub fn generates(g: &FiniteGroup, xs: &[usize]) -> bool {
    let mut seen = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &x in xs {
            let b = g.mul(a, x);
            if seen.insert(b) {
                queue.push_back(b);
            }
        }
    }
    seen.len() == g.order()
}

/// Number of conjugation orbits on a set of tuples.
pub fn orbit_count(g: &FiniteGroup, tuples: &[Vec<usize>]) -> usize {
    let canon: BTreeSet<Vec<usize>> = tuples
        .iter()
        .map(|t| {
            (0..g.order())
                .map(|c| t.iter().map(|&x| g.mul(g.mul(c, x), g.inv(c))).collect::<Vec<_>>())
                .min()
                .unwrap()
        })
        .collect();
    canon.len()
}

/// Normalized 2-cochains as maps on pairs of non-identity elements.
pub struct Cochains2 {
    pub w: usize,
    pub t: FinAbGroup,
}

impl Cochains2 {
    pub fn slots(&self) -> usize {
        (self.w - 1) * (self.w - 1)
    }

    pub fn value(&self, f: &[usize], a: usize, b: usize) -> AbElement {
        if a == 0 || b == 0 {
            self.t.zero()
        } else {
            self.t.element_at(f[(a - 1) * (self.w - 1) + (b - 1)])
        }
    }
}

/// `σ(a) f(b, c) − f(ab, c) + f(a, bc) − f(a, b)` vanishes everywhere.
pub fn is_cocycle(sigma: &GAction, c: &Cochains2, f: &[usize]) -> bool {
    let w = sigma.source();
    let t = &c.t;
    (1..c.w).all(|a| {
        (1..c.w).all(|b| {
            (1..c.w).all(|d| {
                let x = t.add(
                    &t.sub(&sigma.apply(a, &c.value(f, b, d)), &c.value(f, w.mul(a, b), d)),
                    &t.sub(&c.value(f, a, w.mul(b, d)), &c.value(f, a, b)),
                );
                x == t.zero()
            })
        })
    })
}

/// `(|Z²|, |B²|)` over normalized cochains, by enumerating all of them.
pub fn h2_counts(sigma: &GAction) -> (usize, usize) {
    let w = sigma.source();
    let t = sigma.target().clone();
    let nt = t.order_u64().unwrap() as usize;
    let c = Cochains2 { w: w.order(), t: t.clone() };
    let total = nt.pow(c.slots() as u32);
    let mut z = 0;
    let mut f = vec![0usize; c.slots()];
    for mut i in 0..total {
        for s in f.iter_mut() {
            *s = i % nt;
            i /= nt;
        }
        if is_cocycle(sigma, &c, &f) {
            z += 1;
        }
    }
    // coboundaries of normalized 1-cochains θ (θ(e) = 0)
    let mut b = HashSet::new();
    let m = w.order() - 1;
    for mut i in 0..nt.pow(m as u32) {
        let theta: Vec<AbElement> = std::iter::once(t.zero())
            .chain((0..m).map(|_| {
                let x = i % nt;
                i /= nt;
                t.element_at(x)
            }))
            .collect();
        let df: Vec<usize> = (1..w.order())
            .flat_map(|a| (1..w.order()).map(move |bb| (a, bb)))
            .map(|(a, bb)| {
                let v = t.add(&t.sub(&sigma.apply(a, &theta[bb]), &theta[w.mul(a, bb)]), &theta[a]);
                t.index_of(&v)
            })
            .collect();
        b.insert(df);
    }
    (z, b.len())
}
