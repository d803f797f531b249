//! Finite groups as multiplication tables, permutation closure, and actions on finite
//! abelian groups.
//!
//! Elements are dense indices `0..order`; index `0` is always the identity.

mod action;
mod perm;

pub(crate) use action::twisted_product;
pub use action::{dihedral, semidirect, weyl_b, weyl_d, GAction, SemiDirect, MAX_TARGET_ORDER};
pub use perm::{parse_cycles, Perm};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Axioms are checked exhaustively up to this order.
pub const EXHAUSTIVE_CHECK_BOUND: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table. The identity is moved to index 0 if
    /// necessary; labels default to the original indices.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > DEFAULT_ORDER_BOUND {
            return Err(Error::InvalidGroup(format!(
                "order {n} exceeds the bound {DEFAULT_ORDER_BOUND}"
            )));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup("table is not n×n over 0..n".into()));
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidGroup("label count differs from order".into()));
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        // swap e and 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                mul[relabel(a) * n + relabel(b)] = relabel(c) as u32;
            }
        }
        let mut labels = labels;
        labels.swap(0, e);
        FiniteGroup::from_raw(n, mul, labels, None)
    }

    fn from_raw(
        n: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        perms: Option<Vec<Perm>>,
    ) -> Result<FiniteGroup> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = mul[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidGroup(format!(
                        "row {a} of the table repeats an element"
                    )));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        let g = FiniteGroup {
            n,
            mul,
            inv,
            labels,
            perms,
        };
        for a in 0..n {
            if g.mul(g.inv(a), a) != 0 {
                return Err(Error::InvalidGroup(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
        }
        g.check_associative()?;
        Ok(g)
    }

    /// Light's test: `(x·s)·y = x·(s·y)` for all `x, y` and `s` in a generating set.
    fn check_associative(&self) -> Result<()> {
        let gens = if self.n <= EXHAUSTIVE_CHECK_BOUND {
            (0..self.n).collect()
        } else {
            self.generators()
        };
        for &s in &gens {
            for x in 0..self.n {
                let xs = self.mul(x, s);
                for y in 0..self.n {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of permutation generators, in breadth-first order from the identity.
    pub fn from_permutations(gens: &[Perm], bound: usize) -> Result<FiniteGroup> {
        let degree = gens.iter().map(Perm::degree).max().unwrap_or(0);
        let gens: Vec<Perm> = gens.iter().map(|g| g.padded(degree)).collect();
        let id = Perm::identity(degree);
        let mut index: HashMap<Perm, usize> = HashMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(Error::InvalidGroup(format!(
                            "permutation closure exceeds the order bound {bound}"
                        )));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                mul[a * n + b] = index[&pa.compose(pb)] as u32;
            }
        }
        let labels = elems.iter().map(ToString::to_string).collect();
        FiniteGroup::from_raw(n, mul, labels, Some(elems))
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_permutations(&[], 1).expect("trivial group")
    }

    /// `Z/n`; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic order must be ≥ 1".into()));
        }
        let gen = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
        FiniteGroup::from_permutations(&[gen], DEFAULT_ORDER_BOUND)
    }

    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if n > 7 {
            return Err(Error::Unsupported(format!("symmetric group of degree {n}")));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::parse("(1 2)", Some(n))?);
        }
        if n >= 3 {
            gens.push(Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?);
        }
        let gens: Vec<Perm> = gens.into_iter().map(|g| g.padded(n)).collect();
        FiniteGroup::from_permutations(&gens, DEFAULT_ORDER_BOUND)
    }

    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        dihedral(n)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let n = a.n * b.n;
        if n > DEFAULT_ORDER_BOUND {
            return Err(Error::InvalidGroup(
                "direct product exceeds the order bound".into(),
            ));
        }
        // index = x·|b| + y
        let mut mul = vec![0u32; n * n];
        for x1 in 0..a.n {
            for y1 in 0..b.n {
                for x2 in 0..a.n {
                    for y2 in 0..b.n {
                        let i = x1 * b.n + y1;
                        let j = x2 * b.n + y2;
                        mul[i * n + j] = (a.mul(x1, x2) * b.n + b.mul(y1, y2)) as u32;
                    }
                }
            }
        }
        let labels = (0..n)
            .map(|i| format!("({},{})", a.label(i / b.n), b.label(i % b.n)))
            .collect();
        FiniteGroup::from_raw(n, mul, labels, None)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = 0;
        for _ in 0..k.unsigned_abs() % self.element_order(a) as u64 {
            out = self.mul(out, base);
        }
        out
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteGroup> {
        if labels.len() != self.n {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// The permutation representing `a`, when the group was built from permutations.
    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].degree())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// The inner automorphism `x ↦ g·x·g⁻¹` as a table.
    pub fn conjugation_action(&self, g: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.conjugate(g, x)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// Elements commuting with every element of `xs`.
    pub fn centralizer_of(&self, xs: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.n).map(|g| self.conjugate(g, x)).collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| inside[x]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated(gens).len() == self.n
    }

    /// A deterministic small generating set: scan elements in index order and keep those not
    /// already generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        for x in 1..self.n {
            if inside[x] {
                continue;
            }
            gens.push(x);
            for y in self.generated(&gens) {
                inside[y] = true;
            }
        }
        gens
    }

    /// Sign of each element from the permutation representation.
    pub fn sign_character(&self) -> Option<Vec<bool>> {
        self.perms
            .as_ref()
            .map(|ps| ps.iter().map(Perm::is_odd).collect())
    }

    /// `(order, sorted element orders)`: a cheap isomorphism invariant.
    pub fn fingerprint(&self) -> (usize, Vec<usize>) {
        let mut orders: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        (self.n, orders)
    }

    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// Full axiom check over all triples; intended for tests and small groups.
    pub fn verify_axioms(&self) -> Result<()> {
        for a in 0..self.n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidGroup("identity law".into()));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::InvalidGroup("inverse law".into()));
            }
            for b in 0..self.n {
                let ab = self.mul(a, b);
                for c in 0..self.n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup("associativity".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// An isomorphism `self → other` as an element map, found by searching images of a
    /// generating set. Exhaustive, so only sensible for small groups.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.n)
                    .filter(|&y| other.element_order(y) == k)
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
            if let Some(map) = self.extend_to_hom(other, &gens, &images) {
                let mut hit = vec![false; other.n];
                if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                    return Some(map);
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Extends `gens[i] ↦ images[i]` along the Cayley graph, or `None` if that is not a
    /// well-defined homomorphism.
    pub fn extend_to_hom(
        &self,
        target: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = target.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) || !self.is_homomorphism(target, &map) {
            return None;
        }
        Some(map)
    }

    /// Raw table rows, for serialization.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(cycles: &[&str]) -> Vec<Perm> {
        cycles
            .iter()
            .map(|c| Perm::parse(c, None).unwrap())
            .collect()
    }

    #[test]
    fn permutation_closures() {
        let g = FiniteGroup::from_permutations(&perms(&["(1 2)"]), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 2);
        let s3 = FiniteGroup::from_permutations(&perms(&["(1 2)", "(1 2 3)"]), 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        s3.verify_axioms().unwrap();
    }

    #[test]
    fn dihedral_ten_from_permutations() {
        let g =
            FiniteGroup::from_permutations(&perms(&["(1 2 3 4 5)", "(2 5)(3 4)"]), 100).unwrap();
        assert_eq!(g.order(), 10);
        g.verify_axioms().unwrap();
        // presentation ⟨r, s | r⁵, s², srs⁻¹ = r⁻¹⟩ on the generators
        let r = g.generators()[0];
        let s = (0..10).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(g.element_order(r), 5);
        assert_eq!(g.conjugate(s, r), g.inv(r));
        // same fingerprint as the semidirect construction
        let d = FiniteGroup::dihedral(5).unwrap();
        assert!(g.find_isomorphism(&d).is_some());
    }

    #[test]
    fn closure_bound_is_enforced() {
        let gens = perms(&["(1 2)", "(1 2 3 4 5)"]);
        assert!(FiniteGroup::from_permutations(&gens, 100).is_err());
        assert_eq!(
            FiniteGroup::from_permutations(&gens, 120).unwrap().order(),
            120
        );
    }

    #[test]
    fn conjugation_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let find = |c: &str| (0..6).find(|&i| s3.label(i) == c).unwrap();
        let t12 = find("(1 2)");
        let act = s3.conjugation_action(t12);
        assert_eq!(act[t12], t12);
        assert_eq!(act[find("(1 3)")], find("(2 3)"));
        assert_eq!(act[find("(2 3)")], find("(1 3)"));
        assert_eq!(s3.conjugation_action(0), (0..6).collect::<Vec<_>>());
        let z4 = FiniteGroup::cyclic(4).unwrap();
        for g in 0..4 {
            assert_eq!(z4.conjugation_action(g), (0..4).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tables_are_validated() {
        // Z/2 with identity at index 1
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.label(0), "1");
        assert_eq!(g.mul(1, 1), 0);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        // a Latin square that is not associative (a loop of order 5)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5, None).is_err());
    }

    #[test]
    fn cyclic_indices_are_powers() {
        let g = FiniteGroup::cyclic(6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), (a + b) % 6);
            }
        }
        assert_eq!(g.sign_character().unwrap()[1], true);
        assert_eq!(g.pow(1, -1), 5);
    }

    #[test]
    fn isomorphism_search() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&z2, &z2).unwrap();
        assert!(z4.find_isomorphism(&klein).is_none());
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let q8 = FiniteGroup::from_permutations(
            &perms(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
            100,
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        // same order but different element-order statistics
        assert!(d4.find_isomorphism(&q8).is_none());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let map = FiniteGroup::dihedral(3)
            .unwrap()
            .find_isomorphism(&s3)
            .unwrap();
        assert!(FiniteGroup::dihedral(3).unwrap().is_homomorphism(&s3, &map));
    }

    #[test]
    fn s3_conjugacy_classes() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(s3.center(), vec![0]);
    }
}
