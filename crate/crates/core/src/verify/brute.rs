//! Reference counts by exhaustive search, sharing no code with the lattice solver.

use std::collections::HashSet;

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::group::GAction;

/// `T` as indexed elements with addition and action tables.
struct Tables {
    size: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<Vec<usize>>,
}

impl Tables {
    fn new(sigma: &GAction) -> Result<Tables> {
        let t: &FinAbGroup = sigma.target();
        let size = t
            .order_u64()
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| Error::Unsupported("T too large to tabulate".into()))? as usize;
        let elems: Vec<_> = (0..size).map(|i| t.element_at(i)).collect();
        let mut add = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = t.index_of(&t.add(&elems[a], &elems[b]));
            }
        }
        let neg = elems.iter().map(|e| t.index_of(&t.neg(e))).collect();
        let act = (0..sigma.source().order())
            .map(|w| sigma.table(w).iter().map(|&x| x as usize).collect())
            .collect();
        Ok(Tables { size, add, neg, act })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }
}

/// `|Z²|` over normalized cochains, by depth-first assignment of `f(w₁, w₂)` for
/// `w₁, w₂ ≠ e` in row-major order. A branch is cut only when some cocycle identity has all
/// four of its values assigned and fails.
pub fn count_normalized_cocycles(sigma: &GAction) -> Result<u64> {
    let tb = Tables::new(sigma)?;
    let w = sigma.source();
    let n = w.order();
    let k = n - 1;
    let slot = |a: usize, b: usize| -> Option<usize> {
        (a != 0 && b != 0).then(|| (a - 1) * k + (b - 1))
    };
    // identities indexed by the last slot they involve
    let mut checks: Vec<Vec<[usize; 3]>> = vec![Vec::new(); k * k];
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let slots = [
                    slot(b, c),
                    slot(w.mul(a, b), c),
                    slot(a, w.mul(b, c)),
                    slot(a, b),
                ];
                let last = slots.iter().flatten().max().copied();
                if let Some(last) = last {
                    checks[last].push([a, b, c]);
                }
            }
        }
    }
    let mut f = vec![0usize; k * k];
    let value = |f: &[usize], a: usize, b: usize| slot(a, b).map_or(0, |s| f[s]);
    let holds = |f: &[usize], [a, b, c]: [usize; 3]| {
        let lhs = tb.add(
            tb.sub(tb.act[a][value(f, b, c)], value(f, w.mul(a, b), c)),
            value(f, a, w.mul(b, c)),
        );
        lhs == value(f, a, b)
    };
    fn search(
        pos: usize,
        f: &mut Vec<usize>,
        size: usize,
        checks: &[Vec<[usize; 3]>],
        holds: &dyn Fn(&[usize], [usize; 3]) -> bool,
    ) -> u64 {
        if pos == f.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..size {
            f[pos] = v;
            if checks[pos].iter().all(|&c| holds(f, c)) {
                total += search(pos + 1, f, size, checks, holds);
            }
        }
        total
    }
    if k == 0 {
        return Ok(1);
    }
    Ok(search(0, &mut f, tb.size, &checks, &holds))
}

/// `|B²|` over normalized cochains: distinct `dθ` over all normalized 1-cochains `θ`.
pub fn count_normalized_coboundaries(sigma: &GAction) -> Result<u64> {
    let tb = Tables::new(sigma)?;
    let w = sigma.source();
    let n = w.order();
    let total = tb
        .size
        .checked_pow((n - 1) as u32)
        .filter(|&x| x <= 1 << 24)
        .ok_or_else(|| Error::Unsupported("too many 1-cochains".into()))?;
    let mut seen = HashSet::new();
    let mut theta = vec![0usize; n];
    for mut i in 0..total {
        for x in theta.iter_mut().skip(1) {
            *x = i % tb.size;
            i /= tb.size;
        }
        let mut d = Vec::with_capacity((n - 1) * (n - 1));
        for a in 1..n {
            for b in 1..n {
                d.push(tb.add(tb.sub(tb.act[a][theta[b]], theta[w.mul(a, b)]), theta[a]));
            }
        }
        seen.insert(d);
    }
    Ok(seen.len() as u64)
}
