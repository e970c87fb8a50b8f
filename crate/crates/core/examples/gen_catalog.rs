//! Regenerates `data/catalog.txt`.
//!
//! Every group of order < 60 is solvable, so it has a normal subgroup `H` of
//! prime index `p` and is a cyclic extension `G = H⟨g⟩` with `g^p = h0 ∈ H`
//! and conjugation by `g` an automorphism `α` of `H` satisfying
//! `α(h0) = h0` and `α^p = conj(h0)`. Running over all such data for every
//! `H` already found and deduplicating up to isomorphism yields all groups of
//! each order; the counts are then checked against the known table.
//!
//! ```bash
//! cargo run --release -p skelsig --example gen_catalog > crates/core/data/catalog.txt
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use skelsig::group_kernel::{
    known_group_count, make_family, refined_fingerprint, Element, Family, FiniteGroup, Perm,
    DEFAULT_ORDER_CAP,
};

const MAX_COMPLETE: usize = 32;
const FAMILY_MAX: u32 = 256;

fn primes_dividing(n: usize) -> Vec<usize> {
    (2..=n)
        .filter(|&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
        .collect()
}

/// A small generating set: repeatedly add the element of largest order
/// outside the current subgroup.
fn small_generating_set(g: &FiniteGroup) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut cur = g.generated_subgroup(&[]);
    while cur.order() < g.order() {
        let best = g
            .elements()
            .filter(|&e| !cur.contains(e))
            .max_by_key(|&e| {
                let mut t = gens.clone();
                t.push(e);
                (g.generated_subgroup(&t).order(), std::cmp::Reverse(e.0))
            })
            .unwrap();
        gens.push(best);
        cur = g.generated_subgroup(&gens);
    }
    gens
}

/// Extends `gens -> images` to a homomorphism defined on `⟨gens⟩`, or fails.
fn extend_hom(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[Element],
    images: &[Element],
) -> Option<Vec<Option<Element>>> {
    let mut map: Vec<Option<Element>> = vec![None; src.order()];
    map[0] = Some(Element::IDENTITY);
    let mut queue = vec![Element::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x.index()].unwrap();
        for (g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, *g);
            let fy = dst.mul(fx, img);
            match map[y.index()] {
                Some(v) if v != fy => return None,
                Some(_) => {}
                None => {
                    map[y.index()] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    // injective on the domain
    let mut seen = vec![false; dst.order()];
    for v in map.iter().flatten() {
        if std::mem::replace(&mut seen[v.index()], true) {
            return None;
        }
    }
    Some(map)
}

fn element_key(g: &FiniteGroup, a: Element) -> (u32, usize) {
    let cent = g.elements().filter(|&b| g.mul(a, b) == g.mul(b, a)).count();
    (g.element_order(a), cent)
}

/// All injective homomorphisms `src -> dst` onto groups of equal order,
/// i.e. isomorphisms, as full element maps. Stops after `limit` results.
fn isomorphisms(src: &FiniteGroup, dst: &FiniteGroup, limit: usize) -> Vec<Vec<Element>> {
    if src.order() != dst.order() {
        return Vec::new();
    }
    let gens = small_generating_set(src);
    let dst_keys: Vec<(u32, usize)> = dst.elements().map(|e| element_key(dst, e)).collect();
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&g| {
            let k = element_key(src, g);
            dst.elements()
                .filter(|e| dst_keys[e.index()] == k)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::new();
    fn rec(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gens: &[Element],
        cands: &[Vec<Element>],
        images: &mut Vec<Element>,
        out: &mut Vec<Vec<Element>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let k = images.len();
        if k == gens.len() {
            let map = extend_hom(src, dst, gens, images).unwrap();
            out.push(map.into_iter().map(Option::unwrap).collect());
            return;
        }
        for &c in &cands[k] {
            images.push(c);
            if extend_hom(src, dst, &gens[..=k], images).is_some() {
                rec(src, dst, gens, cands, images, out, limit);
            }
            images.pop();
        }
    }
    rec(src, dst, &gens, &candidates, &mut images, &mut out, limit);
    out
}

fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    !isomorphisms(a, b, 1).is_empty()
}

fn automorphisms(h: &FiniteGroup) -> Vec<Vec<Element>> {
    isomorphisms(h, h, usize::MAX)
}

/// Right regular representation of a group given by its multiplication rule.
fn regular_group(
    name: &str,
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
) -> FiniteGroup {
    let perms: Vec<Perm> = gens
        .iter()
        .map(|&g| Perm::from_images((0..n).map(|x| mul(x, g) as u16).collect()).unwrap())
        .collect();
    FiniteGroup::enumerate(name, n, perms, DEFAULT_ORDER_CAP).unwrap()
}

fn compose(a: &[Element], b: &[Element]) -> Vec<Element> {
    // apply a then b
    a.iter().map(|x| b[x.index()]).collect()
}

fn extensions(h: &FiniteGroup, p: usize) -> Vec<FiniteGroup> {
    let m = h.order();
    let auts = automorphisms(h);
    let hgens = small_generating_set(h);
    let mut out = Vec::new();
    for alpha in &auts {
        let mut alpha_p: Vec<Element> = h.elements().collect();
        for _ in 0..p {
            alpha_p = compose(&alpha_p, alpha);
        }
        for h0 in h.elements() {
            if alpha[h0.index()] != h0 {
                continue;
            }
            // α^p = x ↦ h0 x h0⁻¹
            let ok = h
                .elements()
                .all(|x| alpha_p[x.index()] == h.mul(h.mul(h0, x), h.inv(h0)));
            if !ok {
                continue;
            }
            // element (x, i) = x g^i has index i*m + x
            let pow_alpha: Vec<Vec<Element>> = {
                let mut v = vec![h.elements().collect::<Vec<_>>()];
                for i in 1..p {
                    let next = compose(&v[i - 1], alpha);
                    v.push(next);
                }
                v
            };
            let mul = |a: usize, b: usize| {
                let (x1, i) = (Element((a % m) as u16), a / m);
                let (x2, j) = (Element((b % m) as u16), b / m);
                let mut x = h.mul(x1, pow_alpha[i][x2.index()]);
                let mut k = i + j;
                if k >= p {
                    x = h.mul(x, h0);
                    k -= p;
                }
                k * m + x.index()
            };
            let mut gens: Vec<usize> = hgens.iter().map(|e| e.index()).collect();
            gens.push(m);
            out.push(regular_group("ext", m * p, mul, &gens));
        }
    }
    out
}

/// Order histogram, center order, derived order, sorted element keys.
type CheapKey = (Vec<(u32, u32)>, usize, usize, Vec<(u32, usize)>);

fn cheap_key(g: &FiniteGroup) -> CheapKey {
    let fp = g.fingerprint();
    let mut keys: Vec<(u32, usize)> = g.elements().map(|e| element_key(g, e)).collect();
    keys.sort_unstable();
    (fp.order_histogram, fp.center_order, fp.derived_order, keys)
}

fn all_groups(max: usize) -> BTreeMap<usize, Vec<FiniteGroup>> {
    let mut groups: BTreeMap<usize, Vec<FiniteGroup>> = BTreeMap::new();
    groups.insert(1, vec![make_family(&Family::Cyclic(1), 1).unwrap()]);
    for n in 2..=max {
        let mut reps: Vec<FiniteGroup> = Vec::new();
        let mut by_key: HashMap<_, Vec<usize>> = HashMap::new();
        for p in primes_dividing(n) {
            for h in &groups[&(n / p)] {
                for cand in extensions(h, p) {
                    let key = cheap_key(&cand);
                    let bucket = by_key.entry(key).or_default();
                    if bucket.iter().any(|&i| isomorphic(&reps[i], &cand)) {
                        continue;
                    }
                    bucket.push(reps.len());
                    reps.push(cand);
                }
            }
        }
        let expected = known_group_count(n).unwrap();
        assert_eq!(
            reps.len(),
            expected,
            "order {n}: found {} groups",
            reps.len()
        );
        eprintln!("order {n}: {} groups", reps.len());
        groups.insert(n, reps);
    }
    groups
}

fn invariant_factor_lists(n: u32, max_factors: usize) -> Vec<Vec<u32>> {
    // chains d1 | d2 | ... with product n, every d >= 2, returned largest first
    fn rec(rem: u32, min: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 1 {
            if !cur.is_empty() {
                let mut v = cur.clone();
                v.reverse();
                out.push(v);
            }
            return;
        }
        if left == 0 {
            return;
        }
        let mut d = min;
        while d <= rem {
            if rem.is_multiple_of(d) && cur.last().is_none_or(|&l| d.is_multiple_of(l)) {
                cur.push(d);
                rec(rem / d, d, left - 1, cur, out);
                cur.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 2, max_factors, &mut Vec::new(), &mut out);
    out
}

fn abelian_family(n: u32, factors: Vec<u32>) -> Family {
    if factors.len() == 1 {
        Family::Cyclic(n)
    } else {
        Family::AbelianProduct(factors)
    }
}

fn sl23() -> FiniteGroup {
    // SL(2,3) acting on the 8 nonzero vectors of F_3^2
    let vecs: Vec<(u8, u8)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[u8; 2]; 2]| {
        let images = vecs
            .iter()
            .map(|&(a, b)| {
                let w = (
                    (m[0][0] * a + m[0][1] * b) % 3,
                    (m[1][0] * a + m[1][1] * b) % 3,
                );
                vecs.iter().position(|&v| v == w).unwrap() as u16
            })
            .collect();
        Perm::from_images(images).unwrap()
    };
    let gens = vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])];
    FiniteGroup::enumerate("SL(2,3)", 8, gens, 64).unwrap()
}

fn direct_product(a: &FiniteGroup, b: &FiniteGroup, name: String) -> FiniteGroup {
    let (da, db) = (a.degree(), b.degree());
    let shift = |p: &Perm, offset: usize, own: usize| {
        let mut images: Vec<u16> = (0..(da + db) as u16).collect();
        for i in 0..own {
            images[offset + i] = (offset + p.image(i)) as u16;
        }
        Perm::from_images(images).unwrap()
    };
    let mut gens: Vec<Perm> = a.generators().iter().map(|p| shift(p, 0, da)).collect();
    gens.extend(b.generators().iter().map(|p| shift(p, da, db)));
    FiniteGroup::enumerate(name, da + db, gens, DEFAULT_ORDER_CAP).unwrap()
}

enum Named {
    Family(Family),
    Group(String),
}

fn name_groups(groups: &BTreeMap<usize, Vec<FiniteGroup>>) -> BTreeMap<usize, Vec<(Named, usize)>> {
    let specials: Vec<FiniteGroup> = vec![
        FiniteGroup::enumerate(
            "A4",
            4,
            vec![
                Perm::parse(4, "(1,2,3)").unwrap(),
                Perm::parse(4, "(1,2)(3,4)").unwrap(),
            ],
            64,
        )
        .unwrap(),
        FiniteGroup::enumerate(
            "S4",
            4,
            vec![
                Perm::parse(4, "(1,2,3,4)").unwrap(),
                Perm::parse(4, "(1,2)").unwrap(),
            ],
            64,
        )
        .unwrap(),
        sl23(),
    ];
    let mut named_nonabelian: Vec<FiniteGroup> = Vec::new();
    let mut out = BTreeMap::new();
    for (&n, reps) in groups {
        let mut names = Vec::new();
        let mut fallback = 0;
        for (i, g) in reps.iter().enumerate() {
            let mut fams: Vec<Family> = invariant_factor_lists(n as u32, 8)
                .into_iter()
                .map(|f| abelian_family(n as u32, f))
                .collect();
            if n == 1 {
                fams.push(Family::Cyclic(1));
            }
            if n % 2 == 0 && n >= 6 {
                fams.push(Family::Dihedral(n as u32 / 2));
            }
            if n % 4 == 0 && n >= 8 {
                fams.push(Family::GeneralizedQuaternion(n as u32 / 4));
            }
            let fam = fams
                .into_iter()
                .find(|f| make_family(f, DEFAULT_ORDER_CAP).is_ok_and(|fg| isomorphic(&fg, g)));
            let named = if let Some(f) = fam {
                Named::Family(f)
            } else if let Some(s) = specials.iter().find(|s| isomorphic(s, g)) {
                Named::Group(s.name().to_string())
            } else {
                let mut found = None;
                'outer: for a in &named_nonabelian {
                    if n % a.order() != 0 || a.order() == n {
                        continue;
                    }
                    for f in invariant_factor_lists((n / a.order()) as u32, 3) {
                        let fam = abelian_family((n / a.order()) as u32, f);
                        let b = make_family(&fam, DEFAULT_ORDER_CAP).unwrap();
                        let name = format!("{}x{}", a.name(), fam.name());
                        let prod = direct_product(a, &b, name.clone());
                        if isomorphic(&prod, g) {
                            found = Some(name);
                            break 'outer;
                        }
                    }
                }
                Named::Group(found.unwrap_or_else(|| {
                    fallback += 1;
                    format!("G{n}_{fallback}")
                }))
            };
            if !g.is_abelian() {
                let label = match &named {
                    Named::Family(f) => f.name(),
                    Named::Group(s) => s.clone(),
                };
                named_nonabelian.push(g.clone().with_name(label));
            }
            names.push((named, i));
        }
        out.insert(n, names);
    }
    out
}

fn named_label(named: &Named) -> String {
    match named {
        Named::Family(f) => f.name(),
        Named::Group(s) => s.clone(),
    }
}

fn main() {
    let groups = all_groups(MAX_COMPLETE);
    let names = name_groups(&groups);

    let mut text = String::new();
    writeln!(text, "# skelsig small-groups catalog").unwrap();
    writeln!(
        text,
        "# Regenerate with: cargo run --release -p skelsig --example gen_catalog"
    )
    .unwrap();
    writeln!(text, "skelsig-catalog 1").unwrap();
    writeln!(text, "complete 1-{MAX_COMPLETE}").unwrap();

    for (&n, reps) in &groups {
        writeln!(text, "\n# order {n}").unwrap();
        let prints: Vec<_> = reps.iter().map(|g| g.fingerprint()).collect();
        let mut refined = Vec::new();
        for (named, i) in &names[&n] {
            let g = &reps[*i];
            let finer = prints
                .iter()
                .enumerate()
                .any(|(j, p)| j != *i && *p == prints[*i]);
            let flag = if finer { " | finer" } else { "" };
            if finer {
                refined.push((named_label(named), refined_fingerprint(g)));
            }
            match named {
                Named::Family(f) => {
                    writeln!(text, "family {} | order {n}{flag}", f.name()).unwrap()
                }
                Named::Group(name) => {
                    let gens: Vec<String> = small_generating_set(g)
                        .into_iter()
                        .map(|e| g.perm(e).to_string())
                        .collect();
                    writeln!(
                        text,
                        "group {name} | order {n} | degree {} | gens {}{flag}",
                        g.degree(),
                        gens.join("; ")
                    )
                    .unwrap()
                }
            }
        }
        for (i, (na, a)) in refined.iter().enumerate() {
            for (nb, b) in &refined[i + 1..] {
                assert!(
                    a != b,
                    "order {n}: refined fingerprints of {na} and {nb} collide"
                );
            }
        }
    }

    writeln!(
        text,
        "\n# families beyond the complete range (partial orders)"
    )
    .unwrap();
    let first = MAX_COMPLETE as u32 + 1;
    for n in first..=FAMILY_MAX {
        writeln!(text, "family C{n} | order {n}").unwrap();
    }
    for n in first.div_ceil(2)..=FAMILY_MAX / 2 {
        writeln!(text, "family D{n} | order {}", 2 * n).unwrap();
    }
    for n in first.div_ceil(4)..=FAMILY_MAX / 4 {
        writeln!(text, "family Q{} | order {}", 4 * n, 4 * n).unwrap();
    }
    for n in first..=FAMILY_MAX {
        for f in invariant_factor_lists(n, 3) {
            if f.len() > 1 {
                writeln!(
                    text,
                    "family {} | order {n}",
                    Family::AbelianProduct(f).name()
                )
                .unwrap();
            }
        }
    }
    print!("{text}");
}
