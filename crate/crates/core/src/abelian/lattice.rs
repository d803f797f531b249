//! Integer lattices that contain `modulus·Zⁿ`.
//!
//! Every finite abelian group in this crate is a quotient `Λ_top / Λ_bottom` of two such
//! lattices, so all arithmetic can be kept reduced modulo the common exponent. Bases are kept
//! in Hermite normal form (row convention, upper triangular, pivots dividing the modulus),
//! which gives canonical coset representatives for free. Group structure comes from a
//! Smith normal form computed one prime at a time over `Z/pᵏ`, where pivoting by minimal
//! valuation never needs extra rows and entries never grow.

use num_bigint::BigUint;

pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, s, t) with s·a + t·b = g ≥ 0
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime-power decomposition of `n` as `(p, pᵏ)` pairs in increasing `p`.
pub(crate) fn prime_powers(n: u64) -> Vec<(u64, u64)> {
    factor(n).into_iter().map(|(p, k)| (p, p.pow(k))).collect()
}

/// Full-rank lattice `Λ ⊆ Zⁿ` with `modulus·Zⁿ ⊆ Λ`, stored as its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lattice {
    modulus: i64,
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Lattice spanned by `gens` together with `modulus·Zⁿ`.
    pub fn from_generators<I>(n: usize, modulus: i64, gens: I) -> Lattice
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        assert!(modulus >= 1);
        let e = modulus as i128;
        let mut work: Vec<Vec<i128>> = gens
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), n, "generator length");
                g.into_iter()
                    .map(|x| (x as i128).rem_euclid(e))
                    .collect::<Vec<_>>()
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut pivot = vec![0i128; n];
            pivot[j] = e;
            let mut next = Vec::with_capacity(work.len());
            for r in work.drain(..) {
                if r[j] == 0 {
                    next.push(r);
                    continue;
                }
                let (g, s, t) = ext_gcd(pivot[j], r[j]);
                let a = r[j] / g;
                let b = pivot[j] / g;
                let mut np = vec![0i128; n];
                let mut nr = vec![0i128; n];
                np[j] = g;
                for k in j + 1..n {
                    np[k] = (s * pivot[k] + t * r[k]).rem_euclid(e);
                    nr[k] = (a * pivot[k] - b * r[k]).rem_euclid(e);
                }
                pivot = np;
                if nr.iter().any(|&x| x != 0) {
                    next.push(nr);
                }
            }
            rows.push(pivot);
            work = next;
        }
        for j in 0..n {
            let h = rows[j][j];
            for i in 0..j {
                let q = rows[i][j].div_euclid(h);
                if q != 0 {
                    let (upper, lower) = rows.split_at_mut(j);
                    let ri = &mut upper[i];
                    let rj = &lower[0];
                    ri[j] -= q * rj[j];
                    for k in j + 1..n {
                        ri[k] = (ri[k] - q * rj[k]).rem_euclid(e);
                    }
                }
            }
        }
        Lattice {
            modulus,
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as i64).collect())
                .collect(),
        }
    }

    /// `Zⁿ` with the given per-coordinate moduli, i.e. the lattice `⊕ dⱼ·Z`.
    pub fn diagonal(orders: &[u64], modulus: i64) -> Lattice {
        let n = orders.len();
        let gens = orders.iter().enumerate().map(|(j, &d)| {
            let mut v = vec![0i64; n];
            v[j] = d as i64;
            v
        });
        Lattice::from_generators(n, modulus, gens)
    }

    /// Canonical representative of `v + Λ`: each coordinate lies in `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let e = self.modulus as i128;
        let n = self.dim();
        let mut w: Vec<i128> = v.iter().map(|&x| (x as i128).rem_euclid(e)).collect();
        for j in 0..n {
            let h = self.rows[j][j] as i128;
            let q = w[j].div_euclid(h);
            if q != 0 {
                w[j] -= q * h;
                for k in j + 1..n {
                    w[k] = (w[k] - q * self.rows[j][k] as i128).rem_euclid(e);
                }
            }
        }
        w.into_iter().map(|x| x as i64).collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// `[Zⁿ : Λ]`.
    #[cfg(test)]
    pub fn index(&self) -> BigUint {
        self.rows
            .iter()
            .enumerate()
            .fold(BigUint::from(1u32), |acc, (j, r)| {
                acc * BigUint::from(r[j] as u64)
            })
    }

    pub fn with_modulus(&self, modulus: i64) -> Lattice {
        Lattice::from_generators(self.dim(), modulus, self.rows.iter().cloned())
    }

    /// Solves `c·H = z` for the Hermite basis `H`, with `c` reduced mod the modulus.
    /// Returns `None` when `z ∉ Λ`. The result is exact up to `modulus·Zⁿ·H`.
    pub fn coefficients(&self, z: &[i64]) -> Option<Vec<i64>> {
        let e = self.modulus as i128;
        let n = self.dim();
        let mut c = vec![0i128; n];
        for j in 0..n {
            let mut num = (z[j] as i128).rem_euclid(e);
            for (i, ci) in c.iter().enumerate().take(j) {
                num -= ci * self.rows[i][j] as i128;
            }
            let h = self.rows[j][j] as i128;
            if num.rem_euclid(h) != 0 {
                return None;
            }
            c[j] = (num / h).rem_euclid(e);
        }
        Some(c.into_iter().map(|x| x as i64).collect())
    }

    /// `{x ∈ Zᵃ : Σ xᵢ·images[i] ∈ target}`.
    pub fn preimage(images: &[Vec<i64>], target: &Lattice) -> Lattice {
        let a = images.len();
        let b = target.dim();
        let e = target.modulus;
        let n = a + b;
        let mut gens = Vec::with_capacity(a + b);
        for (i, img) in images.iter().enumerate() {
            let mut v = vec![0i64; n];
            v[..b].copy_from_slice(img);
            v[b + i] = 1;
            gens.push(v);
        }
        for r in target.rows.iter().enumerate().filter(|(j, r)| r[*j] != e) {
            let mut v = vec![0i64; n];
            v[..b].copy_from_slice(r.1);
            gens.push(v);
        }
        let full = Lattice::from_generators(n, e, gens);
        Lattice {
            modulus: e,
            rows: full.rows[b..].iter().map(|r| r[b..].to_vec()).collect(),
        }
    }

    /// Solves `Σ xᵢ·images[i] ≡ rhs (mod target)`. Returns a particular solution and the
    /// homogeneous solution lattice, or `None` when the system is inconsistent.
    pub fn solve_affine(
        images: &[Vec<i64>],
        rhs: &[i64],
        target: &Lattice,
    ) -> Option<(Vec<i64>, Lattice)> {
        let a = images.len();
        let b = target.dim();
        let e = target.modulus;
        let n = b + 1 + a;
        let mut gens = Vec::with_capacity(a + b + 1);
        let mut s = vec![0i64; n];
        for k in 0..b {
            s[k] = -rhs[k];
        }
        s[b] = 1;
        gens.push(s);
        for (i, img) in images.iter().enumerate() {
            let mut v = vec![0i64; n];
            v[..b].copy_from_slice(img);
            v[b + 1 + i] = 1;
            gens.push(v);
        }
        for r in target.rows.iter().enumerate().filter(|(j, r)| r[*j] != e) {
            let mut v = vec![0i64; n];
            v[..b].copy_from_slice(r.1);
            gens.push(v);
        }
        let full = Lattice::from_generators(n, e, gens);
        let homogeneous = Lattice {
            modulus: e,
            rows: full.rows[b + 1..]
                .iter()
                .map(|r| r[b + 1..].to_vec())
                .collect(),
        };
        if full.rows[b][b] != 1 {
            return None;
        }
        Some((full.rows[b][b + 1..].to_vec(), homogeneous))
    }
}

/// One p-primary block of a quotient `Λ_top/Λ_bottom`.
#[derive(Clone, Debug)]
struct PrimaryBlock {
    q: i64,
    /// Column transform of the local Smith form (n×n, mod q).
    transform: Vec<Vec<i64>>,
    /// Its inverse (n×n, mod q).
    inverse: Vec<Vec<i64>>,
    /// Nontrivial positions with their cyclic orders.
    slots: Vec<(usize, u64)>,
}

/// Finite abelian group `Λ_top / Λ_bottom` with an explicit cyclic decomposition.
#[derive(Clone, Debug)]
pub(crate) struct SubQuotient {
    top: Lattice,
    bottom: Lattice,
    blocks: Vec<PrimaryBlock>,
    orders: Vec<u64>,
    basis: Vec<Vec<i64>>,
}

fn valuation(x: i64, p: i64, q: i64) -> u32 {
    if x.rem_euclid(q) == 0 {
        return u32::MAX;
    }
    let mut x = x.rem_euclid(q);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inverse_mod(a: i64, q: i64) -> i64 {
    let (g, s, _) = ext_gcd(a as i128, q as i128);
    debug_assert_eq!(g, 1);
    (s.rem_euclid(q as i128)) as i64
}

/// Smith form of `a` over `Z/q`, `q = pᵏ`. Returns (column transform, inverse, diagonal
/// valuations) with `u32::MAX` standing for a zero diagonal entry.
fn local_smith(mut a: Vec<Vec<i64>>, p: i64, q: i64) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<u32>) {
    let n = a.first().map_or(0, |r| r.len());
    let m = a.len();
    let mut t: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut ti = t.clone();
    let mut diag = vec![u32::MAX; n];
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(q);
        }
    }
    for k in 0..n.min(m) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                let v = valuation(x, p, q);
                if v != u32::MAX && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, bi, bj)) = best else { break };
        a.swap(k, bi);
        if bj != k {
            for row in a.iter_mut() {
                row.swap(k, bj);
            }
            for row in t.iter_mut() {
                row.swap(k, bj);
            }
            ti.swap(k, bj);
        }
        let pv = p.pow(v);
        let unit = a[k][k] / pv;
        let uinv = inverse_mod(unit, q) as i128;
        for x in a[k].iter_mut() {
            *x = ((*x as i128 * uinv).rem_euclid(q as i128)) as i64;
        }
        for i in k + 1..m {
            if a[i][k] != 0 {
                let f = (a[i][k] / pv) as i128;
                for j in k..n {
                    a[i][j] =
                        ((a[i][j] as i128 - f * a[k][j] as i128).rem_euclid(q as i128)) as i64;
                }
            }
        }
        for j in k + 1..n {
            if a[k][j] != 0 {
                let f = (a[k][j] / pv) as i128;
                for row in a.iter_mut() {
                    row[j] = ((row[j] as i128 - f * row[k] as i128).rem_euclid(q as i128)) as i64;
                }
                for row in t.iter_mut() {
                    row[j] = ((row[j] as i128 - f * row[k] as i128).rem_euclid(q as i128)) as i64;
                }
                for c in 0..n {
                    ti[k][c] =
                        ((ti[k][c] as i128 + f * ti[j][c] as i128).rem_euclid(q as i128)) as i64;
                }
            }
        }
        diag[k] = v;
    }
    (t, ti, diag)
}

impl SubQuotient {
    pub fn new(top: Lattice, bottom: Lattice) -> SubQuotient {
        assert_eq!(top.modulus, bottom.modulus);
        debug_assert!(top.contains_lattice(&bottom));
        let n = top.dim();
        let e = top.modulus;
        let relations = Lattice::preimage(&top.rows, &bottom);
        let mut blocks = Vec::new();
        let mut orders = Vec::new();
        let mut basis = Vec::new();
        for (p, q) in prime_powers(e as u64) {
            let (p, q) = (p as i64, q as i64);
            let (transform, inverse, diag) = local_smith(relations.rows.clone(), p, q);
            let cof = e / q;
            // ≡ 1 mod q, ≡ 0 mod e/q
            let idempotent = ((cof as i128 * inverse_mod(cof.rem_euclid(q), q) as i128)
                .rem_euclid(e as i128)) as i64;
            let mut slots = Vec::new();
            for (k, &v) in diag.iter().enumerate() {
                let order = if v == u32::MAX {
                    q as u64
                } else {
                    (p as u64).pow(v)
                };
                if order > 1 {
                    slots.push((k, order));
                }
            }
            for &(k, order) in &slots {
                let c: Vec<i64> = inverse[k]
                    .iter()
                    .map(|&x| ((x as i128 * idempotent as i128).rem_euclid(e as i128)) as i64)
                    .collect();
                basis.push(bottom.reduce(&combine(&c, &top.rows, e)));
                orders.push(order);
            }
            blocks.push(PrimaryBlock {
                q,
                transform,
                inverse,
                slots,
            });
        }
        debug_assert!(blocks.iter().all(|b| b.inverse.len() == n));
        SubQuotient {
            top,
            bottom,
            blocks,
            orders,
            basis,
        }
    }

    pub fn top(&self) -> &Lattice {
        &self.top
    }

    pub fn bottom(&self) -> &Lattice {
        &self.bottom
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Coordinates of `z + Λ_bottom` in the cyclic decomposition, or `None` if `z ∉ Λ_top`.
    pub fn coords(&self, z: &[i64]) -> Option<Vec<u64>> {
        let c = self.top.coefficients(z)?;
        let mut out = Vec::with_capacity(self.orders.len());
        for b in &self.blocks {
            for &(k, order) in &b.slots {
                let mut acc: i128 = 0;
                for (i, ci) in c.iter().enumerate() {
                    acc += (*ci as i128).rem_euclid(b.q as i128) * b.transform[i][k] as i128;
                }
                out.push(acc.rem_euclid(order as i128) as u64);
            }
        }
        Some(out)
    }

    /// Canonical representative of the element with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.orders.len());
        let n = self.top.dim();
        let e = self.top.modulus as i128;
        let mut v = vec![0i128; n];
        for (c, b) in coords.iter().zip(&self.basis) {
            for k in 0..n {
                v[k] = (v[k] + *c as i128 * b[k] as i128).rem_euclid(e);
            }
        }
        let v: Vec<i64> = v.into_iter().map(|x| x as i64).collect();
        self.bottom.reduce(&v)
    }

    pub fn order(&self) -> BigUint {
        self.orders
            .iter()
            .fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d))
    }
}

fn combine(c: &[i64], rows: &[Vec<i64>], e: i64) -> Vec<i64> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut v = vec![0i128; n];
    for (ci, r) in c.iter().zip(rows) {
        if *ci == 0 {
            continue;
        }
        for k in 0..n {
            v[k] += *ci as i128 * r[k] as i128;
        }
    }
    v.into_iter()
        .map(|x| x.rem_euclid(e as i128) as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_basis_of_mixed_generators() {
        // span{(2,1)} + 4Z² in Z² has basis (2,1), (0,2)
        let l = Lattice::from_generators(2, 4, vec![vec![2, 1]]);
        assert_eq!(l.rows(), &[vec![2, 1], vec![0, 2]]);
        assert!(!l.contains(&[0, 1]));
        assert_eq!(l.index(), BigUint::from(4u32));
    }

    #[test]
    fn preimage_of_parity_condition() {
        // x ↦ 2x into Z/4: kernel {0, 2}
        let target = Lattice::diagonal(&[4], 4);
        let k = Lattice::preimage(&[vec![2]], &target);
        assert_eq!(k.rows(), &[vec![2]]);
    }

    #[test]
    fn affine_parity_obstruction() {
        let target = Lattice::diagonal(&[4], 4);
        assert!(Lattice::solve_affine(&[vec![2]], &[1], &target).is_none());
        let (x, hom) = Lattice::solve_affine(&[vec![2]], &[2], &target).unwrap();
        assert_eq!((2 * x[0]).rem_euclid(4), 2);
        assert_eq!(hom.rows(), &[vec![2]]);
    }

    #[test]
    fn quotient_structure_of_mixed_orders() {
        // (Z/2 × Z/4 × Z/3) / 0
        let top =
            Lattice::from_generators(3, 12, vec![vec![6, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]);
        let bottom = Lattice::from_generators(3, 12, Vec::<Vec<i64>>::new());
        assert_eq!(bottom.index(), BigUint::from(1728u32));
        let sq = SubQuotient::new(top, bottom);
        let mut o = sq.orders().to_vec();
        o.sort();
        assert_eq!(o, vec![2, 3, 4]);
        for (i, b) in sq.basis().iter().enumerate() {
            let c = sq.coords(b).unwrap();
            for (j, &x) in c.iter().enumerate() {
                assert_eq!(x, u64::from(i == j));
            }
        }
    }
}
