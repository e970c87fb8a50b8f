use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::group::{Element, FiniteGroup};
use super::GroupError;

/// Default bound on `|G|` for full subgroup-lattice enumeration.
pub const LATTICE_ORDER_CAP: usize = 128;

/// A subgroup of some parent [`FiniteGroup`], stored as a membership bitset
/// over the parent's element handles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
}

impl Subgroup {
    pub(crate) fn from_members(members: FixedBitSet) -> Self {
        let order = members.count_ones(..);
        Subgroup { members, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.contains(e.index())
    }

    pub fn members(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.ones().map(|i| Element(i as u16))
    }

    pub fn member_bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Direct check of the subgroup axioms inside `parent`.
    pub fn is_closed_in(&self, parent: &FiniteGroup) -> bool {
        if !self.contains(Element::IDENTITY) {
            return false;
        }
        let ms: Vec<Element> = self.members().collect();
        ms.iter().all(|&a| {
            self.contains(parent.inv(a)) && ms.iter().all(|&b| self.contains(parent.mul(a, b)))
        })
    }

    pub fn is_normal_in(&self, parent: &FiniteGroup) -> bool {
        self.members().all(|a| {
            parent
                .generator_elements()
                .iter()
                .all(|&g| self.contains(parent.conjugate(a, g)))
        })
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.order, self.members.ones().collect())
    }
}

impl FiniteGroup {
    /// Every subgroup exactly once, sorted by `(order, member handles)`.
    pub fn subgroup_lattice(&self) -> Result<Vec<Subgroup>, GroupError> {
        self.subgroup_lattice_capped(LATTICE_ORDER_CAP)
    }

    pub fn subgroup_lattice_capped(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order() > cap {
            return Err(GroupError::CapExceeded { cap });
        }
        // Every subgroup is a join of cyclic subgroups, so repeatedly joining
        // known subgroups with single elements reaches all of them.
        let mut cyclic_reps: Vec<Element> = Vec::new();
        let mut seen_cyclic = std::collections::HashSet::new();
        for e in self.elements().skip(1) {
            let bits = self.closure_bits(&[e]);
            if seen_cyclic.insert(bits) {
                cyclic_reps.push(e);
            }
        }

        let trivial = self.closure_bits(&[]);
        let mut found: Vec<(FixedBitSet, Vec<Element>)> = vec![(trivial.clone(), Vec::new())];
        let mut index: HashMap<FixedBitSet, usize> = HashMap::from([(trivial, 0)]);
        let mut i = 0;
        while i < found.len() {
            for &x in &cyclic_reps {
                if found[i].0.contains(x.index()) {
                    continue;
                }
                let mut gens = found[i].1.clone();
                gens.push(x);
                let bits = self.closure_bits(&gens);
                if !index.contains_key(&bits) {
                    index.insert(bits.clone(), found.len());
                    found.push((bits, gens));
                }
            }
            i += 1;
        }

        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|(bits, _)| Subgroup::from_members(bits))
            .collect();
        subs.sort_by_cached_key(Subgroup::sort_key);
        Ok(subs)
    }
}
