//! Named infinite families: cyclic, dihedral, generalized quaternion
//! (dicyclic) and direct products of cyclic groups.

use std::fmt;
use std::str::FromStr;

use super::group::{Element, FiniteGroup};
use super::perm::Perm;
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `C_n`, order `n`.
    Cyclic(u32),
    /// `D_n`, symmetries of the `n`-gon, order `2n`.
    Dihedral(u32),
    /// `⟨x, y | xⁿ = y², y⁻¹xy = x⁻¹⟩`, order `4n`, `n >= 2`.
    GeneralizedQuaternion(u32),
    /// `C_{n1} × … × C_{nk}`.
    AbelianProduct(Vec<u32>),
}

impl Family {
    pub fn order(&self) -> u64 {
        match self {
            Family::Cyclic(n) => *n as u64,
            Family::Dihedral(n) => 2 * *n as u64,
            Family::GeneralizedQuaternion(n) => 4 * *n as u64,
            Family::AbelianProduct(fs) => fs.iter().map(|&f| f as u64).product(),
        }
    }

    /// Canonical group name, parseable back with [`Family::from_str`].
    pub fn name(&self) -> String {
        match self {
            Family::Cyclic(n) => format!("C{n}"),
            Family::Dihedral(n) => format!("D{n}"),
            Family::GeneralizedQuaternion(n) => format!("Q{}", 4 * n),
            Family::AbelianProduct(fs) => fs
                .iter()
                .map(|f| format!("C{f}"))
                .collect::<Vec<_>>()
                .join("x"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::BadParameter(format!("not a family name: {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        if s.contains('x') {
            let fs = s
                .split('x')
                .map(|part| part.strip_prefix('C').ok_or_else(bad).and_then(num))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Family::AbelianProduct(fs));
        }
        if let Some(n) = s.strip_prefix('C') {
            Ok(Family::Cyclic(num(n)?))
        } else if let Some(n) = s.strip_prefix('D') {
            Ok(Family::Dihedral(num(n)?))
        } else if let Some(n) = s.strip_prefix('Q') {
            let m = num(n)?;
            if m % 4 != 0 {
                return Err(bad());
            }
            Ok(Family::GeneralizedQuaternion(m / 4))
        } else {
            Err(bad())
        }
    }
}

fn cycle_perm(degree: usize, start: usize, len: usize) -> Perm {
    let mut images: Vec<u16> = (0..degree as u16).collect();
    for k in 0..len {
        images[start + k] = (start + (k + 1) % len) as u16;
    }
    Perm::from_images(images).expect("cycle is a bijection")
}

fn with_names(g: FiniteGroup, names: &[&str], perms: &[Perm]) -> FiniteGroup {
    let named = names
        .iter()
        .zip(perms)
        .map(|(n, p)| {
            (
                n.to_string(),
                g.element_of(p).expect("generator is an element"),
            )
        })
        .collect();
    g.with_named(named)
}

/// Builds a member of a named family. Distinguished generators are
/// retrievable through [`FiniteGroup::named`]: `x` (and `y`, `z`, … where
/// the family has more than one).
pub fn make_family(kind: &Family, cap: usize) -> Result<FiniteGroup, GroupError> {
    if kind.order() > cap as u64 {
        return Err(GroupError::CapExceeded { cap });
    }
    let name = kind.name();
    match *kind {
        Family::Cyclic(n) => {
            if n == 0 {
                return Err(GroupError::BadParameter("C_0 is not a finite group".into()));
            }
            let n = n as usize;
            let x = cycle_perm(n, 0, n);
            let g = FiniteGroup::enumerate(name, n, vec![x.clone()], cap)?;
            Ok(with_names(g, &["x"], &[x]))
        }
        Family::Dihedral(n) => {
            let n = n as usize;
            let (degree, x, y) = match n {
                0 => return Err(GroupError::BadParameter("D_0 is not a finite group".into())),
                1 => (2, Perm::identity(2), cycle_perm(2, 0, 2)),
                2 => (
                    4,
                    Perm::parse(4, "(1,2)(3,4)")?,
                    Perm::parse(4, "(1,3)(2,4)")?,
                ),
                _ => {
                    let refl: Vec<u16> = (0..n).map(|i| ((n - i) % n) as u16).collect();
                    (n, cycle_perm(n, 0, n), Perm::from_images(refl)?)
                }
            };
            let g = FiniteGroup::enumerate(name, degree, vec![x.clone(), y.clone()], cap)?;
            Ok(with_names(g, &["x", "y"], &[x, y]))
        }
        Family::GeneralizedQuaternion(n) => {
            if n < 2 {
                return Err(GroupError::BadParameter(format!(
                    "generalized quaternion needs n >= 2, got {n}"
                )));
            }
            // right regular representation on words x^i y^j, i < 2n, j < 2
            let n = n as usize;
            let m = 2 * n;
            let idx = |i: usize, j: usize| i + m * j;
            let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| {
                // x^i y^j x^k y^l = x^(i ± k) y^(j+l), with y² = xⁿ
                let e = if j == 0 { i + k } else { i + m - k };
                if j + l == 2 {
                    ((e + n) % m, 0)
                } else {
                    (e % m, j + l)
                }
            };
            let regular = |g: (usize, usize)| {
                let mut images = vec![0u16; 2 * m];
                for j in 0..2 {
                    for i in 0..m {
                        let (a, b) = mul((i, j), g);
                        images[idx(i, j)] = idx(a, b) as u16;
                    }
                }
                Perm::from_images(images).expect("regular representation is a bijection")
            };
            let x = regular((1, 0));
            let y = regular((0, 1));
            let g = FiniteGroup::enumerate(name, 2 * m, vec![x.clone(), y.clone()], cap)?;
            Ok(with_names(g, &["x", "y"], &[x, y]))
        }
        Family::AbelianProduct(ref fs) => {
            if fs.is_empty() || fs.contains(&0) {
                return Err(GroupError::BadParameter(format!(
                    "abelian product needs positive factors, got {fs:?}"
                )));
            }
            let degree: usize = fs.iter().map(|&f| f as usize).sum();
            let mut start = 0;
            let mut gens = Vec::new();
            for &f in fs {
                gens.push(cycle_perm(degree, start, f as usize));
                start += f as usize;
            }
            let g = FiniteGroup::enumerate(name, degree, gens.clone(), cap)?;
            let names: Vec<String> = (0..fs.len())
                .map(|i| match i {
                    0 => "x".to_string(),
                    1 => "y".to_string(),
                    2 => "z".to_string(),
                    _ => format!("x{}", i + 1),
                })
                .collect();
            let named = names
                .into_iter()
                .zip(&gens)
                .map(|(n, p)| (n, g.element_of(p).expect("generator is an element")))
                .collect::<Vec<(String, Element)>>();
            Ok(g.with_named(named))
        }
    }
}
