use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().map(BigInt::from).collect(),
        })
    }

    fn from_big(rows: Big, cols: usize) -> Self {
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// Entry as a machine integer; [`Error::Overflow`] if it does not fit.
    pub fn get(&self, i: usize, j: usize) -> Result<i64> {
        i64::try_from(self.entry(i, j)).map_err(|_| Error::Overflow("matrix entry"))
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = BigInt::from(v);
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// All entries as machine integers.
    pub fn to_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entry(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.entries[i * other.cols + j] = (0..self.cols)
                    .map(|k| self.entry(i, k) * other.entry(k, j))
                    .sum();
            }
        }
        Ok(out)
    }

    /// Exact determinant (Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = to_big(self);
        let mut sign = 1i32;
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k] == BigInt::ZERO {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != BigInt::ZERO) else {
                    return Ok(BigInt::ZERO);
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 {
            BigInt::from(1)
        } else {
            a[n - 1][n - 1].clone() * sign
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || *self.entry(i, j) == BigInt::ZERO))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.entry(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal()
            .iter()
            .filter(|x| **x != BigInt::ZERO)
            .count()
    }
}

type Big = Vec<Vec<BigInt>>;

fn to_big(m: &IntMatrix) -> Big {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn identity_big(n: usize) -> Big {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let zero = BigInt::from(0);
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::from(1), BigInt::from(0));
    let (mut t0, mut t1) = (BigInt::from(0), BigInt::from(1));
    while r1 != zero {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, s0, s1, t0, t1) = (r1, r2, s1, s2, t1, t2);
    }
    if r0 < zero {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `(rᵢ, rⱼ) ← (a·rᵢ + b·rⱼ, c·rᵢ + d·rⱼ)` on rows.
fn rows_op(x: &mut Big, i: usize, j: usize, k: [&BigInt; 4]) {
    let (ri, rj) = (x[i].clone(), x[j].clone());
    for (col, (p, q)) in ri.iter().zip(&rj).enumerate() {
        x[i][col] = k[0] * p + k[1] * q;
        x[j][col] = k[2] * p + k[3] * q;
    }
}

/// Same on columns.
fn cols_op(x: &mut Big, i: usize, j: usize, k: [&BigInt; 4]) {
    for row in x.iter_mut() {
        let (p, q) = (row[i].clone(), row[j].clone());
        row[i] = k[0] * &p + k[1] * &q;
        row[j] = k[2] * &p + k[3] * &q;
    }
}

/// Smith normal form by Bezout row and column steps. Exact; the transforms can have entries
/// much larger than those of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = to_big(m);
    let mut u = identity_big(rows);
    let mut v = identity_big(cols);
    let zero = BigInt::from(0);
    let one = BigInt::from(1);

    for t in 0..rows.min(cols) {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if *x != zero
                    && best
                        .as_ref()
                        .is_none_or(|(b, _, _)| x.magnitude() < b.magnitude())
                {
                    best = Some((x.clone(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            for i in t + 1..rows {
                if a[i][t] == zero {
                    continue;
                }
                let (p, x) = (a[t][t].clone(), a[i][t].clone());
                if &x % &p == zero {
                    let q = -(&x / &p);
                    rows_op(&mut a, t, i, [&one, &zero, &q, &one]);
                    rows_op(&mut u, t, i, [&one, &zero, &q, &one]);
                } else {
                    let (g, s, w) = ext_gcd(&p, &x);
                    let (c, d) = (-(&x / &g), &p / &g);
                    rows_op(&mut a, t, i, [&s, &w, &c, &d]);
                    rows_op(&mut u, t, i, [&s, &w, &c, &d]);
                }
            }
            for j in t + 1..cols {
                if a[t][j] == zero {
                    continue;
                }
                let (p, x) = (a[t][t].clone(), a[t][j].clone());
                if &x % &p == zero {
                    let q = -(&x / &p);
                    cols_op(&mut a, t, j, [&one, &zero, &q, &one]);
                    cols_op(&mut v, t, j, [&one, &zero, &q, &one]);
                } else {
                    let (g, s, w) = ext_gcd(&p, &x);
                    let (c, d) = (-(&x / &g), &p / &g);
                    cols_op(&mut a, t, j, [&s, &w, &c, &d]);
                    cols_op(&mut v, t, j, [&s, &w, &c, &d]);
                }
            }
            if (t + 1..rows).any(|i| a[i][t] != zero) {
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| &a[i][j] % &p != zero));
            match bad {
                Some(i) => {
                    rows_op(&mut a, t, i, [&one, &one, &zero, &one]);
                    rows_op(&mut u, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if a[t][t] < zero {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    SmithForm {
        u: IntMatrix::from_big(u, rows),
        d: IntMatrix::from_big(a, cols),
        v: IntMatrix::from_big(v, cols),
    }
}
