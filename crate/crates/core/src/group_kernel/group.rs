use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::perm::Perm;
use super::subgroup::Subgroup;
use super::GroupError;

/// Default bound on `|G|` for element enumeration.
pub const DEFAULT_ORDER_CAP: usize = 1024;

/// Handle of an element in its group's element table. Handle 0 is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u16);

impl Element {
    pub const IDENTITY: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Coarse isomorphism invariant used to validate catalog entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub abelian: bool,
    /// `(element order, number of elements of that order)`, ascending.
    pub order_histogram: Vec<(u32, u32)>,
    pub center_order: usize,
    pub derived_order: usize,
}

/// A finite group realized by permutation generators, with every element
/// enumerated and a full Cayley table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, Element>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    generator_handles: Vec<Element>,
    named: Vec<(String, Element)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("degree", &self.degree)
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the closure of `generators` breadth first: identity first,
    /// then discovery order with generator index as tie-break.
    pub fn enumerate(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(GroupError::InvalidPermutation(format!(
                "degree {degree} out of range"
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::InvalidPermutation(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let cap = cap.min(u16::MAX as usize);

        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(identity, Element(0));
        // right multiplication by each generator, filled in as we go
        let mut by_gen: Vec<Vec<u16>> = vec![Vec::new(); generators.len()];
        // BFS tree: element = parent * generator
        let mut parent: Vec<(u16, u16)> = vec![(0, 0)];

        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            for (gi, g) in generators.iter().enumerate() {
                let y = x.then(g);
                let idx = match lookup.get(&y) {
                    Some(&e) => e.0,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        let e = elements.len() as u16;
                        lookup.insert(y.clone(), Element(e));
                        elements.push(y);
                        parent.push((head as u16, gi as u16));
                        e
                    }
                };
                by_gen[gi].push(idx);
            }
            head += 1;
        }

        let n = elements.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            table[a * n] = a as u16;
        }
        // a * b = (a * parent(b)) * gen(b); fill columns in BFS order
        for b in 1..n {
            let (p, gi) = parent[b];
            let col = &by_gen[gi as usize];
            for a in 0..n {
                let ap = table[a * n + p as usize];
                table[a * n + b] = col[ap as usize];
            }
        }

        let mut inverse = vec![0u16; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .expect("group element without inverse");
            inverse[a] = b as u16;
        }

        let mut orders = vec![1u32; n];
        for (a, ord) in orders.iter_mut().enumerate().skip(1) {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            *ord = k;
        }

        let generator_handles = generators.iter().map(|g| lookup[g]).collect();
        Ok(FiniteGroup {
            name: name.into(),
            degree,
            generators,
            elements,
            lookup,
            table,
            inverse,
            orders,
            generator_handles,
            named: Vec::new(),
        })
    }

    /// Attaches names to distinguished elements (for example `x`, `y`).
    pub fn with_named(mut self, named: Vec<(String, Element)>) -> Self {
        self.named = named;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_elements(&self) -> &[Element] {
        &self.generator_handles
    }

    pub fn named(&self, name: &str) -> Option<Element> {
        self.named.iter().find(|(n, _)| n == name).map(|&(_, e)| e)
    }

    pub fn named_elements(&self) -> &[(String, Element)] {
        &self.named
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + Clone {
        (0..self.order() as u16).map(Element)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.index() < self.order()
    }

    pub fn perm(&self, e: Element) -> &Perm {
        &self.elements[e.index()]
    }

    pub fn element_of(&self, p: &Perm) -> Option<Element> {
        self.lookup.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.table[a.index() * self.order() + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        Element(self.inverse[a.index()])
    }

    pub fn pow(&self, a: Element, k: i64) -> Element {
        let ord = self.element_order(a) as i64;
        let k = k.rem_euclid(ord);
        let mut x = Element::IDENTITY;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn product(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items
            .into_iter()
            .fold(Element::IDENTITY, |acc, x| self.mul(acc, x))
    }

    #[inline]
    pub fn element_order(&self, a: Element) -> u32 {
        self.orders[a.index()]
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(self.mul(ai, bi), self.mul(a, b))
    }

    pub fn conjugate(&self, a: Element, by: Element) -> Element {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn is_abelian(&self) -> bool {
        self.generator_handles.iter().all(|&a| {
            self.generator_handles
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn elements_of_order(&self, n: u32) -> Vec<Element> {
        self.elements()
            .filter(|&e| self.element_order(e) == n)
            .collect()
    }

    /// Distinct element orders, ascending.
    pub fn element_orders(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.orders.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn order_histogram(&self) -> Vec<(u32, u32)> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0u32) += 1;
        }
        h.into_iter().collect()
    }

    /// Bitset closure of `seed` under multiplication.
    pub(crate) fn closure_bits(&self, seed: &[Element]) -> FixedBitSet {
        let n = self.order();
        let mut members = FixedBitSet::with_capacity(n);
        members.insert(0);
        let gens: Vec<Element> = seed.iter().copied().filter(|e| e.0 != 0).collect();
        if gens.is_empty() {
            return members;
        }
        let mut queue = VecDeque::from([Element::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.put(y.index()) {
                    queue.push_back(y);
                }
            }
        }
        members
    }

    /// Smallest subgroup containing `seed`; empty seed yields the trivial subgroup.
    pub fn generated_subgroup(&self, seed: &[Element]) -> Subgroup {
        Subgroup::from_members(self.closure_bits(seed))
    }

    pub fn generates(&self, seed: &[Element]) -> bool {
        self.closure_bits(seed).count_ones(..) == self.order()
    }

    pub fn center(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for z in self.elements() {
            if self
                .generator_handles
                .iter()
                .all(|&g| self.mul(z, g) == self.mul(g, z))
            {
                bits.insert(z.index());
            }
        }
        Subgroup::from_members(bits)
    }

    /// Commutator subgroup, generated by all `[a, b]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = FixedBitSet::with_capacity(self.order());
        for a in self.elements() {
            for b in self.elements() {
                comms.insert(self.commutator(a, b).index());
            }
        }
        let seed: Vec<Element> = comms.ones().map(|i| Element(i as u16)).collect();
        self.generated_subgroup(&seed)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            abelian: self.is_abelian(),
            order_histogram: self.order_histogram(),
            center_order: self.center().order(),
            derived_order: self.derived_subgroup().order(),
        }
    }

    /// SHA-256 over the degree and the element table in handle order, hex encoded.
    /// Witness handles are only meaningful against a group with the same checksum.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.degree as u32).to_le_bytes());
        for p in &self.elements {
            for &i in p.images() {
                h.update(i.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Checks closure, identity, inverses and associativity. Associativity is
    /// checked on every triple when `|G|³ <= max_triples`, otherwise on a
    /// deterministic stride through the triples.
    pub fn check_group_axioms(&self, max_triples: usize) -> bool {
        let n = self.order();
        if !self.elements[0].is_identity() {
            return false;
        }
        for a in self.elements() {
            if self.mul(a, self.inv(a)) != Element::IDENTITY {
                return false;
            }
            if self.mul(Element::IDENTITY, a) != a || self.mul(a, Element::IDENTITY) != a {
                return false;
            }
        }
        // the table is built from generator columns; spot-check it against
        // direct permutation products
        let total = n * n * n;
        let stride = if total <= max_triples {
            1
        } else {
            (total / max_triples) | 1
        };
        let mut t = 0;
        while t < total {
            let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
            let (a, b, c) = (Element(a as u16), Element(b as u16), Element(c as u16));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return false;
            }
            let direct = self.perm(a).then(self.perm(b));
            if self.element_of(&direct) != Some(self.mul(a, b)) {
                return false;
            }
            t += stride;
        }
        true
    }
}
