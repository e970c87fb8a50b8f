//! Permutations on `{0, .., degree-1}`, written 1-based in cycle notation.

use std::fmt;

use crate::group_kernel::GroupError;

/// A permutation stored as its image table.
///
/// Products compose left to right: `p.then(q)` applies `p` first, so
/// `(p.then(q))(i) = q(p(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image table {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Builds a permutation of the given degree from disjoint-or-not cycles
    /// of 0-based points. Cycles are applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut result = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u16> = (0..degree as u16).collect();
            let mut seen = vec![false; degree];
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if seen[p] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} repeated within a cycle",
                        p + 1
                    )));
                }
                seen[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u16;
            }
            result = result.then(&Perm(images.into_boxed_slice()));
        }
        Ok(result)
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`, `(1 2 3 4)` or `()`.
    pub fn parse(degree: usize, text: &str) -> Result<Self, GroupError> {
        let bad = |msg: &str| GroupError::InvalidPermutation(format!("{msg} in {text:?}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty permutation"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = &body[..close];
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| bad("non-numeric point"))?;
                if p == 0 {
                    return Err(bad("points are 1-based"));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
