//! Versioned catalog of small groups.
//!
//! The text format is line based. Blank lines and `#` comments are ignored.
//!
//! ```text
//! skelsig-catalog 1
//! complete 1-32
//! family C6xC2 | order 12
//! group A4 | order 12 | degree 4 | gens (1,2,3); (1,2)(3,4)
//! group G16_3 | order 16 | degree 16 | gens ... | finer
//! ```
//!
//! `family` records name a member of one of the [`Family`] constructions;
//! `group` records give permutation generators in 1-based cycle notation.
//! The `finer` flag marks entries whose coarse [`Fingerprint`] collides with
//! another entry of the same order and which are told apart by
//! [`refined_fingerprint`] instead.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use super::family::{make_family, Family};
use super::group::{Element, Fingerprint, FiniteGroup, DEFAULT_ORDER_CAP};
use super::perm::Perm;
use super::GroupError;

pub const CATALOG_VERSION: u32 = 1;

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.txt");

/// Number of isomorphism classes of groups of order `n`, for `n <= 32`.
const GROUP_COUNTS: [usize; 33] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4,
    1, 51,
];

pub fn known_group_count(n: usize) -> Option<usize> {
    GROUP_COUNTS.get(n).copied().filter(|&c| c > 0)
}

#[derive(Clone, Debug)]
enum Source {
    Family(Family),
    Explicit { degree: usize, gens: Vec<Perm> },
}

#[derive(Debug)]
pub struct CatalogEntry {
    name: String,
    order: usize,
    finer: bool,
    source: Source,
    group: OnceLock<Arc<FiniteGroup>>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn needs_finer_distinction(&self) -> bool {
        self.finer
    }

    pub fn family(&self) -> Option<&Family> {
        match &self.source {
            Source::Family(f) => Some(f),
            Source::Explicit { .. } => None,
        }
    }

    /// Builds (once) and returns the group.
    pub fn group(&self) -> Arc<FiniteGroup> {
        self.group
            .get_or_init(|| Arc::new(build_source(&self.name, &self.source).expect("validated")))
            .clone()
    }
}

fn build_source(name: &str, source: &Source) -> Result<FiniteGroup, GroupError> {
    match source {
        Source::Family(f) => Ok(make_family(f, DEFAULT_ORDER_CAP)?.with_name(name)),
        Source::Explicit { degree, gens } => {
            FiniteGroup::enumerate(name, *degree, gens.clone(), DEFAULT_ORDER_CAP)
        }
    }
}

/// Groups of one order, flagged complete when they provably cover every
/// isomorphism class of that order.
#[derive(Clone, Debug)]
pub struct OrderSlice {
    pub groups: Vec<Arc<FiniteGroup>>,
    pub complete: bool,
}

#[derive(Debug)]
pub struct Catalog {
    entries: BTreeMap<usize, Vec<CatalogEntry>>,
    by_name: HashMap<String, (usize, usize)>,
    complete_orders: BTreeSet<usize>,
    digest: String,
}

/// Invariants finer than [`Fingerprint`], used to tell apart catalog
/// entries whose coarse fingerprints agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RefinedFingerprint {
    pub coarse: Fingerprint,
    /// Sorted `(order, centralizer order, order of square, square roots)` per element.
    pub element_profile: Vec<(u32, usize, u32, usize)>,
    /// `((order, normal, abelian, cyclic), count)` over the subgroup lattice.
    pub subgroup_profile: Vec<((usize, bool, bool, bool), usize)>,
    pub center_histogram: Vec<(u32, u32)>,
    pub derived_histogram: Vec<(u32, u32)>,
}

fn subgroup_histogram(g: &FiniteGroup, s: &super::Subgroup) -> Vec<(u32, u32)> {
    let mut h = BTreeMap::new();
    for e in s.members() {
        *h.entry(g.element_order(e)).or_insert(0u32) += 1;
    }
    h.into_iter().collect()
}

pub fn refined_fingerprint(g: &FiniteGroup) -> RefinedFingerprint {
    let mut roots = vec![0usize; g.order()];
    for a in g.elements() {
        roots[g.mul(a, a).index()] += 1;
    }
    let mut element_profile: Vec<(u32, usize, u32, usize)> = g
        .elements()
        .map(|a| {
            let cent = g.elements().filter(|&b| g.mul(a, b) == g.mul(b, a)).count();
            (
                g.element_order(a),
                cent,
                g.element_order(g.mul(a, a)),
                roots[a.index()],
            )
        })
        .collect();
    element_profile.sort_unstable();
    let mut counts = BTreeMap::new();
    if let Ok(lattice) = g.subgroup_lattice() {
        for s in lattice {
            let ms: Vec<Element> = s.members().collect();
            let abelian = ms
                .iter()
                .all(|&a| ms.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            let cyclic = ms.iter().any(|&a| g.element_order(a) as usize == s.order());
            let key = (s.order(), s.is_normal_in(g), abelian, cyclic);
            *counts.entry(key).or_insert(0usize) += 1;
        }
    }
    RefinedFingerprint {
        coarse: g.fingerprint(),
        element_profile,
        subgroup_profile: counts.into_iter().collect(),
        center_histogram: subgroup_histogram(g, &g.center()),
        derived_histogram: subgroup_histogram(g, &g.derived_subgroup()),
    }
}

fn parse_range_list(text: &str) -> Result<BTreeSet<usize>, String> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range {part:?}"))?;
                let b: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range {part:?}"))?;
                if a == 0 || a > b || b > 1 << 20 {
                    return Err(format!("bad range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => {
                let n: usize = part.parse().map_err(|_| format!("bad order {part:?}"))?;
                if n == 0 {
                    return Err("order 0".into());
                }
                out.insert(n);
            }
        }
    }
    Ok(out)
}

impl Catalog {
    pub fn load_default() -> Result<Self, GroupError> {
        Catalog::parse(DEFAULT_CATALOG)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Catalog(format!("{}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    /// Parses the text form and validates it (see the module docs).
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let err = |line: usize, msg: String| GroupError::Catalog(format!("line {line}: {msg}"));
        let mut version = None;
        let mut complete_orders = BTreeSet::new();
        let mut entries: BTreeMap<usize, Vec<CatalogEntry>> = BTreeMap::new();
        let mut by_name = HashMap::new();

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            if version.is_none() {
                if keyword != "skelsig-catalog" {
                    return Err(err(
                        lineno,
                        "missing 'skelsig-catalog <version>' header".into(),
                    ));
                }
                let v: u32 = rest
                    .parse()
                    .map_err(|_| err(lineno, "bad version".into()))?;
                if v != CATALOG_VERSION {
                    return Err(err(lineno, format!("unsupported catalog version {v}")));
                }
                version = Some(v);
                continue;
            }
            match keyword {
                "complete" => {
                    complete_orders.extend(parse_range_list(rest).map_err(|m| err(lineno, m))?);
                }
                "group" | "family" => {
                    let mut fields = rest.split('|').map(str::trim);
                    let name = fields.next().unwrap_or("").to_string();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(err(lineno, format!("bad group name {name:?}")));
                    }
                    let mut order = None;
                    let mut degree = None;
                    let mut gens_text = None;
                    let mut finer = false;
                    for field in fields {
                        let (k, v) = field.split_once(char::is_whitespace).unwrap_or((field, ""));
                        let v = v.trim();
                        match k {
                            "order" => {
                                order = Some(
                                    v.parse::<usize>()
                                        .map_err(|_| err(lineno, format!("bad order {v:?}")))?,
                                )
                            }
                            "degree" => {
                                degree = Some(
                                    v.parse::<usize>()
                                        .map_err(|_| err(lineno, format!("bad degree {v:?}")))?,
                                )
                            }
                            "gens" => gens_text = Some(v),
                            "finer" if v.is_empty() => finer = true,
                            _ => return Err(err(lineno, format!("unknown field {k:?}"))),
                        }
                    }
                    let order = order.ok_or_else(|| err(lineno, "missing order".into()))?;
                    if order == 0 || order > DEFAULT_ORDER_CAP {
                        return Err(err(lineno, format!("order {order} out of range")));
                    }
                    let source = if keyword == "family" {
                        let fam: Family = name.parse().map_err(|e| err(lineno, format!("{e}")))?;
                        if fam.order() != order as u64 {
                            return Err(err(
                                lineno,
                                format!("{name} has order {}, declared {order}", fam.order()),
                            ));
                        }
                        Source::Family(fam)
                    } else {
                        let degree = degree.ok_or_else(|| err(lineno, "missing degree".into()))?;
                        if degree == 0 || degree > 1024 {
                            return Err(err(lineno, format!("degree {degree} out of range")));
                        }
                        let gens_text =
                            gens_text.ok_or_else(|| err(lineno, "missing gens".into()))?;
                        let gens = gens_text
                            .split(';')
                            .map(|g| Perm::parse(degree, g))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| err(lineno, e.to_string()))?;
                        Source::Explicit { degree, gens }
                    };
                    let bucket = entries.entry(order).or_default();
                    if by_name
                        .insert(name.clone(), (order, bucket.len()))
                        .is_some()
                    {
                        return Err(err(lineno, format!("duplicate group name {name}")));
                    }
                    bucket.push(CatalogEntry {
                        name,
                        order,
                        finer,
                        source,
                        group: OnceLock::new(),
                    });
                }
                _ => return Err(err(lineno, format!("unknown record {keyword:?}"))),
            }
        }
        if version.is_none() {
            return Err(GroupError::Catalog("empty catalog".into()));
        }
        let catalog = Catalog {
            entries,
            by_name,
            complete_orders,
            digest: hex::encode(Sha256::digest(text.as_bytes())),
        };
        catalog.validate()?;
        Ok(catalog)
    }

    fn validate(&self) -> Result<(), GroupError> {
        for entries in self.entries.values() {
            for e in entries {
                if let Source::Explicit { .. } = e.source {
                    let g = build_source(&e.name, &e.source)
                        .map_err(|err| GroupError::Catalog(format!("{}: {err}", e.name)))?;
                    if g.order() != e.order {
                        return Err(GroupError::Catalog(format!(
                            "{} generates a group of order {}, declared {}",
                            e.name,
                            g.order(),
                            e.order
                        )));
                    }
                    if !g.check_group_axioms(1000) {
                        return Err(GroupError::Catalog(format!(
                            "{} fails group axioms",
                            e.name
                        )));
                    }
                    let _ = e.group.set(Arc::new(g));
                }
            }
        }
        for &n in &self.complete_orders {
            let expected = known_group_count(n).ok_or_else(|| {
                GroupError::Catalog(format!(
                    "order {n} declared complete but its count is unknown"
                ))
            })?;
            let entries = self.entries.get(&n).map(Vec::as_slice).unwrap_or(&[]);
            if entries.len() != expected {
                return Err(GroupError::Catalog(format!(
                    "order {n} declared complete with {} groups, expected {expected}",
                    entries.len()
                )));
            }
            let prints: Vec<Fingerprint> =
                entries.iter().map(|e| e.group().fingerprint()).collect();
            let mut refined = Vec::new();
            for (i, e) in entries.iter().enumerate() {
                let clash = prints
                    .iter()
                    .enumerate()
                    .any(|(j, p)| j != i && *p == prints[i]);
                if clash && !e.finer {
                    return Err(GroupError::Catalog(format!(
                        "{} shares its fingerprint with another order-{n} group but is not marked finer",
                        e.name
                    )));
                }
                if e.finer {
                    refined.push((e.name.as_str(), refined_fingerprint(&e.group())));
                }
            }
            for (i, (a, fa)) in refined.iter().enumerate() {
                if let Some((b, _)) = refined[i + 1..].iter().find(|(_, fb)| fb == fa) {
                    return Err(GroupError::Catalog(format!(
                        "{a} and {b} are not distinguished by refined fingerprints"
                    )));
                }
            }
        }
        Ok(())
    }

    /// SHA-256 of the catalog source text.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn complete_orders(&self) -> &BTreeSet<usize> {
        &self.complete_orders
    }

    pub fn is_complete(&self, n: usize) -> bool {
        self.complete_orders.contains(&n)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    /// All catalog groups of order `n`.
    pub fn groups_of_order(&self, n: usize) -> OrderSlice {
        let groups = self
            .entries
            .get(&n)
            .map(|es| es.iter().map(CatalogEntry::group).collect())
            .unwrap_or_default();
        OrderSlice {
            groups,
            complete: self.is_complete(n),
        }
    }

    pub fn get(&self, name: &str) -> Option<Arc<FiniteGroup>> {
        let &(order, i) = self.by_name.get(name)?;
        Some(self.entries[&order][i].group())
    }

    /// Looks a group up by catalog name, falling back to family names.
    pub fn resolve(&self, name: &str) -> Option<Arc<FiniteGroup>> {
        self.get(name).or_else(|| {
            let fam: Family = name.parse().ok()?;
            make_family(&fam, DEFAULT_ORDER_CAP).ok().map(Arc::new)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "skelsig-catalog 1\ncomplete 1-4\n\
        family C1 | order 1\nfamily C2 | order 2\nfamily C3 | order 3\n\
        family C4 | order 4\ngroup V4 | order 4 | degree 4 | gens (1,2)(3,4); (1,3)(2,4)\n";

    #[test]
    fn parses_tiny_catalog() {
        let c = Catalog::parse(TINY).unwrap();
        assert_eq!(c.len(), 5);
        let four = c.groups_of_order(4);
        assert!(four.complete);
        assert_eq!(four.groups.len(), 2);
        assert!(!c.groups_of_order(5).complete);
        assert_eq!(c.get("V4").unwrap().order(), 4);
        assert_eq!(c.resolve("D7").unwrap().order(), 14);
    }

    #[test]
    fn rejects_wrong_counts_and_orders() {
        let short = TINY.replace(
            "group V4 | order 4 | degree 4 | gens (1,2)(3,4); (1,3)(2,4)\n",
            "",
        );
        assert!(Catalog::parse(&short).is_err());
        let wrong = TINY.replace("family C3 | order 3", "family C3 | order 4");
        assert!(Catalog::parse(&wrong).is_err());
        let bad_order = TINY.replace("gens (1,2)(3,4); (1,3)(2,4)", "gens (1,2,3,4)");
        assert!(Catalog::parse(&bad_order).is_err());
        assert!(Catalog::parse("complete 1-3").is_err());
        assert!(Catalog::parse("skelsig-catalog 2").is_err());
    }

    #[test]
    fn rejects_unmarked_fingerprint_clash() {
        let text = "skelsig-catalog 1\nfamily C2 | order 2\ngroup Z2 | order 2 | degree 2 | gens (1,2)\ncomplete 2\n";
        // two entries for a complete order with one class fails on count first
        assert!(Catalog::parse(text).is_err());
    }

    #[test]
    fn default_catalog_is_complete_to_32() {
        let c = Catalog::load_default().unwrap();
        for n in 1..=32 {
            assert!(c.is_complete(n), "order {n}");
            let slice = c.groups_of_order(n);
            assert_eq!(Some(slice.groups.len()), known_group_count(n));
            for g in &slice.groups {
                assert_eq!(g.order(), n);
            }
        }
        assert_eq!(c.groups_of_order(12).groups.len(), 5);
        assert_eq!(c.groups_of_order(20).groups.len(), 5);
        let elevens: Vec<String> = c
            .groups_of_order(11)
            .groups
            .iter()
            .map(|g| g.name().to_string())
            .collect();
        assert_eq!(elevens, ["C11"]);
        assert!(!c.is_complete(64));
        assert_eq!(c.get("Q16").unwrap().order(), 16);
        assert_eq!(c.get("SL(2,3)").unwrap().order(), 24);
    }

    #[test]
    fn default_catalog_small_groups_satisfy_axioms() {
        let c = Catalog::load_default().unwrap();
        for e in c.entries().filter(|e| e.order() <= 64) {
            let g = e.group();
            assert!(g.check_group_axioms(usize::MAX), "{}", e.name());
            for a in g.elements() {
                assert_eq!(g.order() % g.element_order(a) as usize, 0);
            }
        }
    }

    #[test]
    fn family_entries_match_direct_construction() {
        let c = Catalog::load_default().unwrap();
        for name in ["C7", "D5", "Q12", "C6xC2", "C100", "D50", "Q64"] {
            let fam: Family = name.parse().unwrap();
            let direct = make_family(&fam, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(c.get(name).unwrap().checksum(), direct.checksum(), "{name}");
        }
    }
}
