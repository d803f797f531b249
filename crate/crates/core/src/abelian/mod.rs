//! Finite abelian groups, their subgroups and homomorphisms, and exact integer linear algebra.

mod lattice;
mod smith;
mod subgroup;

pub use smith::{smith_normal_form, IntMatrix, SmithForm};
pub use subgroup::{AbHom, Quotient, Subgroup};

pub(crate) use lattice::{gcd, lcm};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product of cyclic groups `Z/d₁ × … × Z/dₘ`, kept exactly as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

/// Element of a [`FinAbGroup`]; `coords[i] ∈ [0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbElement(pub Vec<u64>);

impl fmt::Display for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGroup("cyclic orders must be ≥ 1".into()));
        }
        if orders.iter().any(|&d| d > i32::MAX as u64) {
            return Err(Error::Unsupported("cyclic order too large".into()));
        }
        let mut e: u64 = 1;
        for &d in &orders {
            e = lcm(e, d);
            if e > i32::MAX as u64 {
                return Err(Error::Overflow("group exponent"));
            }
        }
        Ok(FinAbGroup { orders })
    }

    pub fn cyclic(n: u64) -> Self {
        FinAbGroup::new(vec![n]).expect("valid cyclic order")
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: Vec::new() }
    }

    /// `Tʳ`, coordinates laid out block by block.
    pub fn power(&self, r: usize) -> Self {
        let mut orders = Vec::with_capacity(self.orders.len() * r);
        for _ in 0..r {
            orders.extend_from_slice(&self.orders);
        }
        FinAbGroup { orders }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> BigUint {
        self.orders
            .iter()
            .fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d))
    }

    /// Cardinality when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&d| d == 1)
    }

    /// Invariant-factor form `d₁ | d₂ | …` with trivial factors dropped.
    pub fn normalized(&self) -> Self {
        use std::collections::BTreeMap;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in &self.orders {
            for (p, q) in lattice::prime_powers(d) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let off = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                factors[off + i] *= q;
            }
        }
        FinAbGroup { orders: factors }
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.orders.len()])
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<AbElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has {}",
                coords.len(),
                self.orders.len()
            )));
        }
        if coords.iter().zip(&self.orders).any(|(c, d)| c >= d) {
            return Err(Error::Dimension("coordinate out of range".into()));
        }
        Ok(AbElement(coords))
    }

    /// Reduces signed coordinates into range.
    pub fn reduce(&self, coords: &[i64]) -> AbElement {
        AbElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        )
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn sub(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &AbElement) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &d)| ((k as i128 * x as i128).rem_euclid(d as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &AbElement) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &d)| lcm(acc, d / gcd(x, d)))
    }

    /// Mixed-radix index, first coordinate fastest.
    pub fn index_of(&self, a: &AbElement) -> usize {
        let mut idx = 0usize;
        for (x, d) in a.0.iter().zip(&self.orders).rev() {
            idx = idx * (*d as usize) + *x as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut coords = Vec::with_capacity(self.orders.len());
        for &d in &self.orders {
            coords.push((idx % d as usize) as u64);
            idx /= d as usize;
        }
        AbElement(coords)
    }

    /// All elements in index order. Intended for small groups.
    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        let n = self.order_u64().expect("group too large to enumerate") as usize;
        (0..n).map(move |i| self.element_at(i))
    }

    pub(crate) fn lattice(&self, modulus: i64) -> lattice::Lattice {
        lattice::Lattice::diagonal(&self.orders, modulus)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// All `x ∈ Tʳ` with `Σᵢ mᵢ·xᵢ = 0` in `T` for every row `m` of `matrix`, i.e.
/// `Hom(Zʳ / rowspace(M), T)`. Computed as a kernel over `Z/exp(T)`, so no integer growth
/// occurs; [`hom_count`] gives the cardinality from the Smith form instead.
pub fn hom_solutions(matrix: &IntMatrix, t: &FinAbGroup) -> Result<Subgroup> {
    Ok(tensor_hom(matrix, t)?.kernel())
}

/// `|Hom(Zʳ / rowspace(M), T)| = Πⱼ Πₖ gcd(Dₖ, tⱼ)` with `Dₖ = 0` past the rank.
pub fn hom_count(matrix: &IntMatrix, t: &FinAbGroup) -> BigUint {
    let diag = smith_normal_form(matrix).diagonal();
    let mut count = BigUint::from(1u32);
    for &d in t.orders() {
        for k in 0..matrix.cols() {
            let dk = diag.get(k).map_or(0, |x| {
                u64::try_from(x.magnitude() % d).expect("residue below a u64 modulus")
            });
            count *= BigUint::from(gcd(dk, d));
        }
    }
    count
}

/// `M ⊗ id_T : Tʳ → Tˢ` for an `s × r` matrix.
fn tensor_hom(matrix: &IntMatrix, t: &FinAbGroup) -> Result<AbHom> {
    let r = matrix.cols();
    let m = t.rank();
    let mut rows = vec![vec![0i64; r * m]; matrix.rows() * m];
    for row in 0..matrix.rows() {
        for col in 0..r {
            let x = matrix.entry(row, col);
            for (j, &d) in t.orders().iter().enumerate() {
                let residue = x.mod_floor(&BigInt::from(d));
                rows[row * m + j][col * m + j] = i64::try_from(residue).expect("residue fits");
            }
        }
    }
    AbHom::new(t.power(r), t.power(matrix.rows()), rows)
}

/// Full solution set of `Σᵢ mᵢ·xᵢ = rhs_row` in `T`, one equation per row of `matrix`.
pub fn solve_affine(
    matrix: &IntMatrix,
    t: &FinAbGroup,
    rhs: &[AbElement],
) -> Result<Option<(Vec<AbElement>, Subgroup)>> {
    if rhs.len() != matrix.rows() {
        return Err(Error::Dimension(format!(
            "{} right-hand sides for {} equations",
            rhs.len(),
            matrix.rows()
        )));
    }
    let r = matrix.cols();
    let m = t.rank();
    let hom = tensor_hom(matrix, t)?;
    let target = AbElement(rhs.iter().flat_map(|e| e.0.iter().copied()).collect());
    Ok(hom.solve(&target).map(|(x, sub)| {
        let parts = (0..r)
            .map(|c| AbElement(x.0[c * m..(c + 1) * m].to_vec()))
            .collect();
        (parts, sub)
    }))
}
