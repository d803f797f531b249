use num_bigint::BigUint;

use super::lattice::{Lattice, SubQuotient};
use super::{lcm, AbElement, FinAbGroup};
use crate::error::{Error, Result};

fn to_i64(a: &AbElement) -> Vec<i64> {
    a.0.iter().map(|&x| x as i64).collect()
}

fn modulus_of(g: &FinAbGroup) -> i64 {
    g.exponent() as i64
}

/// A subgroup of a [`FinAbGroup`], stored as a lattice between `Zⁿ` and the relation lattice
/// of the ambient group, together with its own cyclic decomposition.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FinAbGroup,
    sq: SubQuotient,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.sq.top() == other.sq.top()
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn from_generators<I>(ambient: &FinAbGroup, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = AbElement>,
    {
        let e = modulus_of(ambient);
        let bottom = ambient.lattice(e);
        let n = ambient.rank();
        let top = Lattice::from_generators(
            n,
            e,
            gens.into_iter()
                .map(|g| to_i64(&g))
                .chain(bottom.rows().iter().cloned()),
        );
        Subgroup {
            ambient: ambient.clone(),
            sq: SubQuotient::new(top, bottom),
        }
    }

    /// `lattice` must contain the relation lattice of `ambient`; its modulus may be any
    /// multiple of the ambient exponent.
    pub(crate) fn from_lattice(ambient: &FinAbGroup, lattice: &Lattice) -> Subgroup {
        let e = modulus_of(ambient);
        let bottom = ambient.lattice(e);
        let top = Lattice::from_generators(
            ambient.rank(),
            e,
            lattice
                .rows()
                .iter()
                .cloned()
                .chain(bottom.rows().iter().cloned()),
        );
        Subgroup {
            ambient: ambient.clone(),
            sq: SubQuotient::new(top, bottom),
        }
    }

    pub fn whole(ambient: &FinAbGroup) -> Subgroup {
        let n = ambient.rank();
        let gens = (0..n).map(|i| {
            let mut v = vec![0u64; n];
            if ambient.orders()[i] > 1 {
                v[i] = 1;
            }
            AbElement(v)
        });
        Subgroup::from_generators(ambient, gens)
    }

    pub fn zero(ambient: &FinAbGroup) -> Subgroup {
        Subgroup::from_generators(ambient, std::iter::empty())
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub(crate) fn lattice(&self) -> &Lattice {
        self.sq.top()
    }

    pub fn order(&self) -> BigUint {
        self.sq.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.orders()
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Orders of the cyclic factors in the computed decomposition (prime-power orders).
    pub fn orders(&self) -> &[u64] {
        self.sq.orders()
    }

    /// The subgroup as an abstract group in its own coordinates.
    pub fn as_group(&self) -> FinAbGroup {
        FinAbGroup::new(self.orders().to_vec()).expect("orders divide the ambient exponent")
    }

    /// Independent generators matching [`Subgroup::orders`].
    pub fn generators(&self) -> Vec<AbElement> {
        self.sq
            .basis()
            .iter()
            .map(|b| self.ambient.reduce(b))
            .collect()
    }

    pub fn contains(&self, a: &AbElement) -> bool {
        self.sq.top().contains(&to_i64(a))
    }

    /// Coordinates of `a` with respect to [`Subgroup::generators`], or `None` if `a` is not in
    /// the subgroup.
    pub fn coords(&self, a: &AbElement) -> Option<Vec<u64>> {
        self.sq.coords(&to_i64(a))
    }

    pub fn element(&self, coords: &[u64]) -> AbElement {
        self.ambient.reduce(&self.sq.element(coords))
    }

    /// Elements in the mixed-radix order of their coordinates.
    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        let g = self.as_group();
        let n = g.order_u64().expect("subgroup too large to enumerate") as usize;
        (0..n).map(move |i| self.element(&g.element_at(i).0))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && other.sq.top().contains_lattice(self.sq.top())
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient, other.ambient);
        Subgroup::from_generators(
            &self.ambient,
            self.generators().into_iter().chain(other.generators()),
        )
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient, other.ambient);
        let rows = self.sq.top().rows();
        let coeffs = Lattice::preimage(rows, other.sq.top());
        let e = self.sq.top().modulus() as i128;
        let n = self.ambient.rank();
        let gens = coeffs.rows().iter().map(|c| {
            let mut v = vec![0i128; n];
            for (ci, r) in c.iter().zip(rows) {
                for k in 0..n {
                    v[k] += *ci as i128 * r[k] as i128;
                }
            }
            self.ambient.reduce(
                &v.into_iter()
                    .map(|x| x.rem_euclid(e) as i64)
                    .collect::<Vec<_>>(),
            )
        });
        Subgroup::from_generators(&self.ambient, gens)
    }

    /// Image of a subgroup of [`Subgroup::as_group`] under the coordinate map.
    pub fn embed(&self, sub: &Subgroup) -> Subgroup {
        Subgroup::from_generators(
            &self.ambient,
            sub.generators().iter().map(|g| self.element(&g.0)),
        )
    }

    /// `self / sub`; `sub` must be contained in `self`.
    pub fn quotient(&self, sub: &Subgroup) -> Result<Quotient> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Dimension("quotient by a non-subgroup".into()));
        }
        Ok(Quotient {
            ambient: self.ambient.clone(),
            sq: SubQuotient::new(self.sq.top().clone(), sub.sq.top().clone()),
        })
    }
}

/// A quotient `A / B` of two subgroups of the same ambient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: FinAbGroup,
    sq: SubQuotient,
}

impl Quotient {
    pub fn orders(&self) -> &[u64] {
        self.sq.orders()
    }

    pub fn order(&self) -> BigUint {
        self.sq.order()
    }

    pub fn as_group(&self) -> FinAbGroup {
        FinAbGroup::new(self.orders().to_vec()).expect("orders divide the ambient exponent")
    }

    /// Class coordinates of `a`, or `None` if `a` is outside the numerator.
    pub fn coords(&self, a: &AbElement) -> Option<Vec<u64>> {
        self.sq.coords(&to_i64(a))
    }

    /// Canonical representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> AbElement {
        self.ambient.reduce(&self.sq.element(coords))
    }

    /// Canonical representative of the class of `a`.
    pub fn canonical(&self, a: &AbElement) -> AbElement {
        self.ambient.reduce(&self.sq.bottom().reduce(&to_i64(a)))
    }

    pub fn same_class(&self, a: &AbElement, b: &AbElement) -> bool {
        let d = self.ambient.sub(a, b);
        self.sq.bottom().contains(&to_i64(&d))
    }
}

/// A homomorphism between finite abelian groups given by an integer matrix: row `i` gives
/// coordinate `i` of the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl AbHom {
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<AbHom> {
        let (a, b) = (domain.rank(), codomain.rank());
        if matrix.len() != b || matrix.iter().any(|r| r.len() != a) {
            return Err(Error::Dimension(format!(
                "homomorphism matrix must be {b}x{a}"
            )));
        }
        let e = lcm(domain.exponent(), codomain.exponent());
        if e > i32::MAX as u64 {
            return Err(Error::Overflow("homomorphism modulus"));
        }
        let matrix: Vec<Vec<i64>> = matrix
            .into_iter()
            .zip(codomain.orders())
            .map(|(r, &d)| r.into_iter().map(|x| x.rem_euclid(d as i64)).collect())
            .collect();
        for (j, &dj) in domain.orders().iter().enumerate() {
            for (i, &di) in codomain.orders().iter().enumerate() {
                if (matrix[i][j] as i128 * dj as i128) % di as i128 != 0 {
                    return Err(Error::InvalidAction(format!(
                        "matrix entry ({i},{j}) does not respect orders {dj} -> {di}"
                    )));
                }
            }
        }
        Ok(AbHom {
            domain,
            codomain,
            matrix,
        })
    }

    /// Homomorphism determined by its values on the coordinate generators.
    pub fn from_fn<F>(domain: FinAbGroup, codomain: FinAbGroup, f: F) -> Result<AbHom>
    where
        F: Fn(&AbElement) -> AbElement,
    {
        let a = domain.rank();
        let mut matrix = vec![vec![0i64; a]; codomain.rank()];
        for j in 0..a {
            let mut unit = vec![0u64; a];
            unit[j] = 1 % domain.orders()[j];
            let img = f(&AbElement(unit));
            for (i, row) in matrix.iter_mut().enumerate() {
                row[j] = img.0[i] as i64;
            }
        }
        AbHom::new(domain, codomain, matrix)
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn modulus(&self) -> i64 {
        lcm(self.domain.exponent(), self.codomain.exponent()) as i64
    }

    fn column_images(&self) -> Vec<Vec<i64>> {
        (0..self.domain.rank())
            .map(|j| self.matrix.iter().map(|r| r[j]).collect())
            .collect()
    }

    pub fn apply(&self, x: &AbElement) -> AbElement {
        let out: Vec<i64> = self
            .matrix
            .iter()
            .zip(self.codomain.orders())
            .map(|(r, &d)| {
                let s: i128 = r
                    .iter()
                    .zip(&x.0)
                    .map(|(&m, &c)| m as i128 * c as i128)
                    .sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect();
        AbElement(out.into_iter().map(|v| v as u64).collect())
    }

    /// `{x : f(x) ∈ target}`.
    pub fn preimage(&self, target: &Subgroup) -> Subgroup {
        assert_eq!(target.ambient(), &self.codomain);
        let e = self.modulus();
        let t = target.lattice().with_modulus(e);
        let l = Lattice::preimage(&self.column_images(), &t);
        Subgroup::from_lattice(&self.domain, &l)
    }

    /// Tall systems are processed a block of rows at a time, shrinking the domain to the
    /// kernel found so far, which keeps the lattice dimension near the domain rank.
    pub fn kernel(&self) -> Subgroup {
        let (a, b) = (self.domain.rank(), self.codomain.rank());
        let chunk = a.max(16);
        if b <= 2 * chunk {
            return self.preimage(&Subgroup::zero(&self.codomain));
        }
        let mut k = Subgroup::whole(&self.domain);
        for start in (0..b).step_by(chunk) {
            let end = b.min(start + chunk);
            let cod = FinAbGroup::new(self.codomain.orders()[start..end].to_vec())
                .expect("factor of a valid group");
            let block = AbHom {
                domain: self.domain.clone(),
                codomain: cod,
                matrix: self.matrix[start..end].to_vec(),
            };
            let piece = block.restrict(&k);
            let ker = piece.preimage(&Subgroup::zero(piece.codomain()));
            k = k.embed(&ker);
        }
        k
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<AbElement> = (0..self.domain.rank())
            .map(|j| {
                self.codomain
                    .reduce(&self.matrix.iter().map(|r| r[j]).collect::<Vec<_>>())
            })
            .collect();
        Subgroup::from_generators(&self.codomain, gens)
    }

    /// All `x` with `f(x) = y`, as a particular solution plus the kernel.
    pub fn solve(&self, y: &AbElement) -> Option<(AbElement, Subgroup)> {
        let e = self.modulus();
        let target = self.codomain.lattice(e);
        let rhs: Vec<i64> = y.0.iter().map(|&c| c as i64).collect();
        let (x, hom) = Lattice::solve_affine(&self.column_images(), &rhs, &target)?;
        Some((
            self.domain.reduce(&x),
            Subgroup::from_lattice(&self.domain, &hom),
        ))
    }

    /// The composite `sub.as_group() → sub ⊆ domain → codomain`.
    pub fn restrict(&self, sub: &Subgroup) -> AbHom {
        assert_eq!(sub.ambient(), &self.domain);
        let gens = sub.generators();
        let mut matrix = vec![vec![0i64; gens.len()]; self.codomain.rank()];
        for (j, g) in gens.iter().enumerate() {
            let img = self.apply(g);
            for (i, row) in matrix.iter_mut().enumerate() {
                row[j] = img.0[i] as i64;
            }
        }
        AbHom::new(sub.as_group(), self.codomain.clone(), matrix)
            .expect("restriction of a homomorphism is well defined")
    }
}
