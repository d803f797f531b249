//! Permutations on `{0, …, n−1}` and the cycle-notation parser.
//!
//! Cycle notation is 1-based: `(1 2)(3 4 5)`. The identity is written `()` or `e`.
//! Products compose right to left: `(p·q)(x) = p(q(x))`.

use std::fmt;

use crate::error::{Error, Result};

/// Points beyond this are rejected by the parser.
pub const MAX_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidGroup("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u32).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..n as u32);
        Perm(v)
    }

    /// `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation. The degree is the largest point mentioned unless `degree`
    /// is given, in which case all points must lie within it.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Perm> {
        let cycles = parse_cycles(s)?;
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = match degree {
            Some(d) if max > d => {
                return Err(Error::Parse(format!("point {max} exceeds degree {d}")));
            }
            Some(d) => d,
            None => max,
        };
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in &cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if moved[p - 1] {
                    return Err(Error::Parse(format!(
                        "point {p} appears in more than one cycle"
                    )));
                }
                moved[p - 1] = true;
                images[p - 1] = next - 1;
            }
        }
        Perm::from_images(images)
    }
}

/// Tokenizes `(a b c)(d e)` into 1-based cycles. Commas may separate points.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    if s == "e" || s == "id" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!(
                "expected '(' in cycle notation: {s:?}"
            )));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::Parse(format!("unclosed cycle in {s:?}")));
        };
        let inner = &body[..close];
        let mut cycle = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))?;
            if p == 0 || p > MAX_DEGREE {
                return Err(Error::Parse(format!(
                    "point {p} out of range 1..={MAX_DEGREE}"
                )));
            }
            if cycle.contains(&p) {
                return Err(Error::Parse(format!("point {p} repeated in a cycle")));
            }
            cycle.push(p);
        }
        if cycle.len() > 1 {
            out.push(cycle);
        }
        rest = &body[close + 1..];
    }
    Ok(out)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
