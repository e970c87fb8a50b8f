//! Generating vectors: verification and an exhaustive existence search.
//!
//! A vector `(a1, b1, …, ah, bh, c1, …, cr)` for a signature
//! `(h; n1, …, nr)` must generate `G`, give `ord(cj) = nj`, and satisfy
//! `∏[ai, bi] · ∏cj = e`.
//!
//! The search is a dynamic program over states `(S, p)` where `S` is the
//! subgroup generated by the entries chosen so far and `p` their running
//! product. Hyperbolic slots add a pair contribution `(⟨a, b⟩, [a, b])`
//! drawn from a table built once per group; cone slots add a single element
//! of the required order. A vector exists iff the state `(G, e)` is reached
//! after the last slot.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group_kernel::{Element, FiniteGroup};
use crate::signatures::Signature;

/// Default cap on DP transitions per search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenvecError {
    #[error("vector shape does not match {signature}: {detail}")]
    ShapeMismatch { signature: String, detail: String },
    #[error("search budget of {budget} transitions exceeded")]
    BudgetExceeded { budget: u64 },
}

/// Which product counts as the commutator `[a, b]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CommutatorConvention {
    /// `a⁻¹ b⁻¹ a b`
    #[default]
    Standard,
    /// `a b a⁻¹ b⁻¹`
    Reversed,
}

impl CommutatorConvention {
    pub fn apply(self, g: &FiniteGroup, a: Element, b: Element) -> Element {
        match self {
            CommutatorConvention::Standard => g.commutator(a, b),
            CommutatorConvention::Reversed => g.product([a, b, g.inv(a), g.inv(b)]),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratingVector {
    #[serde(rename = "pairs")]
    pub hyperbolic_pairs: Vec<(Element, Element)>,
    #[serde(rename = "cone")]
    pub cone_elements: Vec<Element>,
}

impl GeneratingVector {
    pub fn entries(&self) -> impl Iterator<Item = Element> + '_ {
        self.hyperbolic_pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.cone_elements.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExistenceResult {
    Witness(GeneratingVector),
    /// No vector exists; `exhaustive` is set when the whole space was covered.
    None {
        exhaustive: bool,
    },
}

impl ExistenceResult {
    pub fn witness(&self) -> Option<&GeneratingVector> {
        match self {
            ExistenceResult::Witness(v) => Some(v),
            ExistenceResult::None { .. } => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, ExistenceResult::Witness(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefilter {
    RuledOut,
    Unknown,
}

/// Abelian groups have trivial commutators, so a single branch point would
/// need `c1 = e`, contradicting `ord(c1) ≥ 2`.
pub fn abelian_prefilter(g: &FiniteGroup, sig: &Signature) -> Prefilter {
    if sig.r() == 1 && g.is_abelian() {
        Prefilter::RuledOut
    } else {
        Prefilter::Unknown
    }
}

pub fn verify_generating_vector(
    g: &FiniteGroup,
    sig: &Signature,
    v: &GeneratingVector,
) -> Result<bool, GenvecError> {
    verify_with_convention(g, sig, v, CommutatorConvention::Standard)
}

pub fn verify_with_convention(
    g: &FiniteGroup,
    sig: &Signature,
    v: &GeneratingVector,
    convention: CommutatorConvention,
) -> Result<bool, GenvecError> {
    let mismatch = |detail: String| GenvecError::ShapeMismatch {
        signature: sig.to_string(),
        detail,
    };
    if v.hyperbolic_pairs.len() != sig.h() as usize {
        return Err(mismatch(format!(
            "{} hyperbolic pairs",
            v.hyperbolic_pairs.len()
        )));
    }
    if v.cone_elements.len() != sig.r() as usize {
        return Err(mismatch(format!("{} cone elements", v.cone_elements.len())));
    }
    if let Some(e) = v.entries().find(|&e| !g.contains(e)) {
        return Err(mismatch(format!(
            "handle {} outside a group of order {}",
            e.0,
            g.order()
        )));
    }
    let mut orders: Vec<u32> = v
        .cone_elements
        .iter()
        .map(|&c| g.element_order(c))
        .collect();
    orders.sort_unstable();
    if orders != sig.expanded() {
        return Ok(false);
    }
    let product = g.product(
        v.hyperbolic_pairs
            .iter()
            .map(|&(a, b)| convention.apply(g, a, b))
            .chain(v.cone_elements.iter().copied()),
    );
    if product != g.identity() {
        return Ok(false);
    }
    let entries: Vec<Element> = v.entries().collect();
    Ok(g.generates(&entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub convention: CommutatorConvention,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            convention: CommutatorConvention::Standard,
        }
    }
}

pub fn exists_generating_vector(
    g: &FiniteGroup,
    sig: &Signature,
) -> Result<ExistenceResult, GenvecError> {
    Searcher::new(g, SearchOptions::default()).search(sig)
}

pub fn exists_with_options(
    g: &FiniteGroup,
    sig: &Signature,
    options: SearchOptions,
) -> Result<ExistenceResult, GenvecError> {
    Searcher::new(g, options).search(sig)
}

/// Subgroups met during a search, interned with cached joins.
#[derive(Default)]
struct SubgroupCache {
    sets: Vec<FixedBitSet>,
    gens: Vec<Vec<Element>>,
    index: HashMap<FixedBitSet, u32>,
    join_elem: HashMap<(u32, u16), u32>,
    join_sub: HashMap<(u32, u32), u32>,
}

impl SubgroupCache {
    fn new(g: &FiniteGroup) -> Self {
        let mut cache = SubgroupCache::default();
        cache.intern(g.closure_bits(&[]), Vec::new());
        cache
    }

    fn intern(&mut self, bits: FixedBitSet, gens: Vec<Element>) -> u32 {
        if let Some(&id) = self.index.get(&bits) {
            return id;
        }
        let id = self.sets.len() as u32;
        self.index.insert(bits.clone(), id);
        self.sets.push(bits);
        self.gens.push(gens);
        id
    }

    fn order(&self, s: u32) -> usize {
        self.sets[s as usize].count_ones(..)
    }

    fn join_elem(&mut self, g: &FiniteGroup, s: u32, x: Element) -> u32 {
        if self.sets[s as usize].contains(x.index()) {
            return s;
        }
        if let Some(&t) = self.join_elem.get(&(s, x.0)) {
            return t;
        }
        let mut gens = self.gens[s as usize].clone();
        gens.push(x);
        let t = self.intern(g.closure_bits(&gens), gens);
        self.join_elem.insert((s, x.0), t);
        t
    }

    fn join_sub(&mut self, g: &FiniteGroup, s: u32, t: u32) -> u32 {
        if s == 0 || s == t {
            return t;
        }
        if t == 0 {
            return s;
        }
        if let Some(&u) = self.join_sub.get(&(s, t)) {
            return u;
        }
        let mut u = s;
        for x in self.gens[t as usize].clone() {
            u = self.join_elem(g, u, x);
        }
        self.join_sub.insert((s, t), u);
        u
    }
}

#[derive(Clone, Copy)]
struct PairContribution {
    sub: u32,
    commutator: Element,
    a: Element,
    b: Element,
}

#[derive(Clone, Copy)]
struct State {
    sub: u32,
    prod: Element,
    parent: u32,
    /// Index into the pair table for hyperbolic layers, element for cone layers.
    choice: u32,
}

/// Reusable search context for one group: caches subgroups, joins and the
/// pair-contribution table across searches.
pub struct Searcher<'g> {
    group: &'g FiniteGroup,
    options: SearchOptions,
    subgroups: SubgroupCache,
    pairs: Option<Vec<PairContribution>>,
    by_order: HashMap<u32, Vec<Element>>,
    full: Option<u32>,
    spent: u64,
}

impl<'g> Searcher<'g> {
    pub fn new(group: &'g FiniteGroup, options: SearchOptions) -> Self {
        let mut by_order: HashMap<u32, Vec<Element>> = HashMap::new();
        for e in group.elements() {
            by_order.entry(group.element_order(e)).or_default().push(e);
        }
        Searcher {
            group,
            options,
            subgroups: SubgroupCache::new(group),
            pairs: None,
            by_order,
            full: None,
            spent: 0,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    /// Transitions used by the most recent search.
    pub fn transitions(&self) -> u64 {
        self.spent
    }

    fn charge(&mut self, n: u64) -> Result<(), GenvecError> {
        self.spent += n;
        if self.spent > self.options.budget {
            return Err(GenvecError::BudgetExceeded {
                budget: self.options.budget,
            });
        }
        Ok(())
    }

    fn pair_table(&mut self) -> Result<&[PairContribution], GenvecError> {
        if self.pairs.is_none() {
            let g = self.group;
            let n = g.order() as u64;
            self.charge(n * n)?;
            let mut seen: HashMap<(u32, u16), usize> = HashMap::new();
            let mut table = Vec::new();
            for a in g.elements() {
                let sa = self.subgroups.join_elem(g, 0, a);
                for b in g.elements() {
                    let sub = self.subgroups.join_elem(g, sa, b);
                    let commutator = self.options.convention.apply(g, a, b);
                    seen.entry((sub, commutator.0)).or_insert_with(|| {
                        table.push(PairContribution {
                            sub,
                            commutator,
                            a,
                            b,
                        });
                        table.len() - 1
                    });
                }
            }
            self.pairs = Some(table);
        }
        Ok(self.pairs.as_deref().expect("pair table built above"))
    }

    fn full_group(&mut self) -> u32 {
        if let Some(f) = self.full {
            return f;
        }
        let g = self.group;
        let gens = g.generator_elements().to_vec();
        let mut s = 0;
        for x in gens {
            s = self.subgroups.join_elem(g, s, x);
        }
        debug_assert_eq!(self.subgroups.order(s), g.order());
        self.full = Some(s);
        s
    }

    pub fn search(&mut self, sig: &Signature) -> Result<ExistenceResult, GenvecError> {
        self.spent = 0;
        let g = self.group;
        if abelian_prefilter(g, sig) == Prefilter::RuledOut
            || sig
                .periods()
                .iter()
                .any(|(n, _)| !self.by_order.contains_key(n))
        {
            return Ok(ExistenceResult::None { exhaustive: true });
        }
        let full = self.full_group();

        let mut layers: Vec<Vec<State>> = vec![vec![State {
            sub: 0,
            prod: g.identity(),
            parent: u32::MAX,
            choice: 0,
        }]];
        let mut index: HashMap<(u32, u16), u32> = HashMap::new();

        if sig.h() > 0 {
            let pairs = self.pair_table()?.to_vec();
            for _ in 0..sig.h() {
                let prev = layers.last().expect("at least one layer");
                self.charge(prev.len() as u64 * pairs.len() as u64)?;
                index.clear();
                let mut next = Vec::new();
                for (pi, st) in prev.iter().enumerate() {
                    for (ci, c) in pairs.iter().enumerate() {
                        let sub = self.subgroups.join_sub(g, st.sub, c.sub);
                        let prod = g.mul(st.prod, c.commutator);
                        index.entry((sub, prod.0)).or_insert_with(|| {
                            next.push(State {
                                sub,
                                prod,
                                parent: pi as u32,
                                choice: ci as u32,
                            });
                            next.len() as u32 - 1
                        });
                    }
                }
                layers.push(next);
            }
        }

        for n in sig.expanded() {
            let choices = self.by_order[&n].clone();
            let prev = layers.last().expect("at least one layer");
            self.charge(prev.len() as u64 * choices.len() as u64)?;
            index.clear();
            let mut next = Vec::new();
            for (pi, st) in prev.iter().enumerate() {
                for &x in &choices {
                    let sub = self.subgroups.join_elem(g, st.sub, x);
                    let prod = g.mul(st.prod, x);
                    index.entry((sub, prod.0)).or_insert_with(|| {
                        next.push(State {
                            sub,
                            prod,
                            parent: pi as u32,
                            choice: x.0 as u32,
                        });
                        next.len() as u32 - 1
                    });
                }
            }
            layers.push(next);
        }

        let last = layers.last().expect("at least one layer");
        let Some(end) = last
            .iter()
            .position(|st| st.sub == full && st.prod == g.identity())
        else {
            return Ok(ExistenceResult::None { exhaustive: true });
        };

        let h = sig.h() as usize;
        let mut pairs_rev = Vec::with_capacity(h);
        let mut cone_rev = Vec::new();
        let mut at = end;
        for depth in (1..layers.len()).rev() {
            let st = layers[depth][at];
            if depth > h {
                cone_rev.push(Element(st.choice as u16));
            } else {
                let c = self.pairs.as_ref().expect("pairs built for h > 0")[st.choice as usize];
                pairs_rev.push((c.a, c.b));
            }
            at = st.parent as usize;
        }
        pairs_rev.reverse();
        cone_rev.reverse();
        let v = GeneratingVector {
            hyperbolic_pairs: pairs_rev,
            cone_elements: cone_rev,
        };
        debug_assert_eq!(
            verify_with_convention(g, sig, &v, self.options.convention),
            Ok(true),
            "search produced an invalid vector for {sig} in {}",
            g.name()
        );
        Ok(ExistenceResult::Witness(v))
    }
}

/// Serialized witness: element handles plus enough to find and check the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub group: String,
    pub checksum: String,
    pub signature: Signature,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<GeneratingVector>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("checksum mismatch for {0}")]
    ChecksumMismatch(String),
    #[error("vector does not verify for {group} {signature}")]
    Invalid { group: String, signature: String },
    #[error(transparent)]
    Shape(#[from] GenvecError),
}

impl WitnessRecord {
    pub fn new(g: &FiniteGroup, sig: &Signature, vector: Option<GeneratingVector>) -> Self {
        WitnessRecord {
            group: g.name().to_string(),
            checksum: g.checksum(),
            signature: sig.clone(),
            vector,
        }
    }

    /// Resolves the group, compares checksums and re-verifies the vector
    /// when one is present.
    pub fn check(
        &self,
        resolve: impl Fn(&str) -> Option<Arc<FiniteGroup>>,
    ) -> Result<Arc<FiniteGroup>, RecordError> {
        let g =
            resolve(&self.group).ok_or_else(|| RecordError::UnknownGroup(self.group.clone()))?;
        if g.checksum() != self.checksum {
            return Err(RecordError::ChecksumMismatch(self.group.clone()));
        }
        if let Some(v) = &self.vector {
            if !verify_generating_vector(&g, &self.signature, v)? {
                return Err(RecordError::Invalid {
                    group: self.group.clone(),
                    signature: self.signature.to_string(),
                });
            }
        }
        Ok(g)
    }
}
