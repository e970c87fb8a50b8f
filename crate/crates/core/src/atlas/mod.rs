//! Per-genus atlases of witnessed skeletal points.
//!
//! An atlas is a lower set of `K_σ`: every stored point carries at least one
//! verified witness, and a missing point means only that the swept scope
//! found nothing.

mod cache;
mod conjectures;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{
    construct_witness, harvey_c4, ActionWitness, ConstructionKind, CriteriaError, WitnessVector,
};
use crate::genvec::{
    ExistenceResult, GeneratingVector, GenvecError, RecordError, SearchOptions, Searcher,
    DEFAULT_BUDGET,
};
use crate::group_kernel::{make_family, Catalog, Family, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::regions::{
    gap_allowed, is_hyperbolic, k_sigma, s_count_formula, s_lattice_points, Region,
};
use crate::signatures::{
    enumerate_signatures, rh_integral_genus, Genus, Signature, SignatureConstraints, SkeletalPoint,
};
use crate::transforms::C4Signature;

pub use cache::{AtlasDocument, PointDocument, WitnessDocument, SCHEMA_VERSION};
pub use conjectures::{
    scan_conjectures, Claim, Conjecture, ConjectureEntry, ConjectureReport, PointStatus,
};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("atlas document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where a witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Construction(ConstructionKind),
    C4Sweep,
    CatalogSweep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasWitness {
    pub provenance: Provenance,
    pub witness: ActionWitness,
}

/// A (group, signature) search that hit the budget.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnresolvedTask {
    pub group: String,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchScope {
    /// Catalog groups of order `2..=max_order` were swept.
    pub max_order: usize,
    pub groups_swept: usize,
    pub signatures_searched: usize,
    /// Largest `m` with every order in `1..=m` complete in the catalog.
    pub complete_through: usize,
    pub budget: u64,
    pub catalog_digest: String,
    pub unresolved: Vec<UnresolvedTask>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KAtlas {
    pub genus: Genus,
    pub points: BTreeMap<SkeletalPoint, Vec<AtlasWitness>>,
    pub scope: SearchScope,
    /// Set only when every order up to the Hurwitz bound was complete and
    /// searched without hitting the budget.
    pub complete: bool,
}

impl KAtlas {
    pub fn contains(&self, p: SkeletalPoint) -> bool {
        self.points.contains_key(&p)
    }

    pub fn point_set(&self) -> BTreeSet<SkeletalPoint> {
        self.points.keys().copied().collect()
    }

    pub fn witnesses(&self, p: SkeletalPoint) -> &[AtlasWitness] {
        self.points.get(&p).map_or(&[], Vec::as_slice)
    }

    /// Checks every stored witness and the region constraints, returning a
    /// description of each failure.
    pub fn violations(&self) -> Vec<String> {
        let s = self.genus.get();
        let mut out = Vec::new();
        for (&p, ws) in &self.points {
            if ws.is_empty() {
                out.push(format!("{p}: no witness"));
            }
            if !Region::T(s).contains(p) {
                out.push(format!("{p}: outside T({s})"));
            }
            if !gap_allowed(s, p) {
                out.push(format!("{p}: inside the forbidden gap"));
            }
            if !is_hyperbolic(p) {
                out.push(format!("{p}: not hyperbolic"));
            }
            for w in ws {
                let a = &w.witness;
                if a.skeletal() != p || a.genus != self.genus {
                    out.push(format!(
                        "{p}: misfiled witness {} {}",
                        a.group.name(),
                        a.signature
                    ));
                }
                if !a.verify() {
                    out.push(format!(
                        "{p}: witness {} {} fails",
                        a.group.name(),
                        a.signature
                    ));
                }
                if !Region::L(s, a.order() as u64).contains(p) {
                    out.push(format!("{p}: outside L({s}, {})", a.order()));
                }
            }
        }
        out
    }
}

/// Hurwitz bound `84(σ-1)`.
pub fn hurwitz_bound(genus: Genus) -> usize {
    84 * (genus.get() as usize - 1)
}

/// One C₄ signature and vector per skeletal point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C4Witness {
    pub signature: C4Signature,
    pub vector: GeneratingVector,
}

/// The C₄ group used by the sweep, with the catalog's name.
pub fn c4_group() -> Arc<FiniteGroup> {
    Arc::new(make_family(&Family::Cyclic(4), DEFAULT_ORDER_CAP).expect("C4 fits the cap"))
}

/// Every skeletal point of a C₄ signature passing [`harvey_c4`] at this
/// genus, each with the first such signature in `(h, t2)` order and a
/// generating vector for it.
pub fn c4_sweep(genus: Genus) -> BTreeMap<SkeletalPoint, C4Witness> {
    let c4 = c4_group();
    let mut searcher = Searcher::new(&c4, SearchOptions::default());
    let s = genus.get() as i64;
    let mut out = BTreeMap::new();
    for h in 0..=s {
        for t2 in (0..=s + 2).step_by(2) {
            // σ = 4h - 3 + t1 + 3·t2/2
            let t1 = s + 3 - 4 * h - 3 * t2 / 2;
            if !(0..=2 * s + 2).contains(&t1) {
                continue;
            }
            let sig = C4Signature::new(h as u32, t1 as u32, t2 as u32);
            let full = sig.to_signature();
            debug_assert_eq!(rh_integral_genus(4, &full), Some(genus));
            if !harvey_c4(&full).expect("C4 shape") || out.contains_key(&sig.skeletal()) {
                continue;
            }
            match searcher.search(&full) {
                Ok(ExistenceResult::Witness(vector)) => {
                    out.insert(
                        sig.skeletal(),
                        C4Witness {
                            signature: sig,
                            vector,
                        },
                    );
                }
                other => debug_assert!(
                    false,
                    "C4 criterion and search disagree on {full}: {other:?}"
                ),
            }
        }
    }
    out
}

/// `((k+1)(k+3)/4, |S_σ|)`.
pub fn lower_bound_actions(genus: Genus) -> (Ratio<i64>, u64) {
    let k = k_sigma(genus.get()) as i64;
    let bound = Ratio::new((k + 1) * (k + 3), 4);
    let count = s_lattice_points(genus.get()).len() as u64;
    debug_assert_eq!(count, s_count_formula(genus.get()));
    assert!(bound <= Ratio::from_integer(count as i64));
    (bound, count)
}

#[derive(Clone, Debug)]
pub struct AtlasOptions {
    pub budget: u64,
    /// Largest catalog order to sweep; defaults to the Hurwitz bound.
    pub max_order: Option<usize>,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            budget: DEFAULT_BUDGET,
            max_order: None,
        }
    }
}

struct GroupSweep {
    witnesses: Vec<ActionWitness>,
    unresolved: Vec<UnresolvedTask>,
    searched: usize,
}

fn sweep_group(group: Arc<FiniteGroup>, genus: Genus, budget: u64) -> GroupSweep {
    let periods: Vec<u32> = group
        .order_histogram()
        .into_iter()
        .map(|(n, _)| n)
        .filter(|&n| n > 1)
        .collect();
    let sigs = enumerate_signatures(
        group.order() as u64,
        genus,
        &SignatureConstraints::periods(periods),
    );
    let mut out = GroupSweep {
        witnesses: Vec::new(),
        unresolved: Vec::new(),
        searched: sigs.len(),
    };
    let options = SearchOptions {
        budget,
        ..Default::default()
    };
    let mut searcher = Searcher::new(&group, options);
    for sig in sigs {
        match searcher.search(&sig) {
            Ok(ExistenceResult::Witness(v)) => out.witnesses.push(ActionWitness {
                genus,
                group: group.clone(),
                signature: sig,
                vector: WitnessVector::Explicit(v),
            }),
            Ok(ExistenceResult::None { .. }) => {}
            Err(GenvecError::BudgetExceeded { .. }) => out.unresolved.push(UnresolvedTask {
                group: group.name().to_string(),
                signature: sig,
            }),
            Err(e) => unreachable!("search reported {e} without a vector to check"),
        }
    }
    out
}

fn complete_through(catalog: &Catalog) -> usize {
    (1..)
        .take_while(|&n| catalog.is_complete(n))
        .last()
        .unwrap_or(0)
}

/// Constructions, the C₄ sweep and an exhaustive search over catalog groups
/// of order up to the Hurwitz bound, merged deterministically.
pub fn build_atlas(
    genus: Genus,
    catalog: &Catalog,
    options: &AtlasOptions,
) -> Result<KAtlas, AtlasError> {
    let max_order = options.max_order.unwrap_or_else(|| hurwitz_bound(genus));
    let mut found: Vec<AtlasWitness> = Vec::new();

    for kind in ConstructionKind::all_for(genus) {
        found.push(AtlasWitness {
            provenance: Provenance::Construction(kind),
            witness: construct_witness(kind, genus)?,
        });
    }

    let c4 = c4_group();
    for (_, w) in c4_sweep(genus) {
        found.push(AtlasWitness {
            provenance: Provenance::C4Sweep,
            witness: ActionWitness {
                genus,
                group: c4.clone(),
                signature: w.signature.to_signature(),
                vector: WitnessVector::Explicit(w.vector),
            },
        });
    }

    let groups: Vec<Arc<FiniteGroup>> = catalog
        .entries()
        .filter(|e| (2..=max_order).contains(&e.order()))
        .map(|e| e.group())
        .collect();
    let sweeps: Vec<GroupSweep> = groups
        .par_iter()
        .map(|g| sweep_group(g.clone(), genus, options.budget))
        .collect();

    let mut unresolved = Vec::new();
    let mut searched = 0;
    for sweep in sweeps {
        searched += sweep.searched;
        unresolved.extend(sweep.unresolved);
        found.extend(sweep.witnesses.into_iter().map(|witness| AtlasWitness {
            provenance: Provenance::CatalogSweep,
            witness,
        }));
    }
    unresolved.sort();

    let through = complete_through(catalog);
    let scope = SearchScope {
        max_order,
        groups_swept: groups.len(),
        signatures_searched: searched,
        complete_through: through,
        budget: options.budget,
        catalog_digest: catalog.digest().to_string(),
        unresolved,
    };
    let complete =
        max_order >= hurwitz_bound(genus) && through >= max_order && scope.unresolved.is_empty();
    let atlas = KAtlas {
        genus,
        points: merge(found),
        scope,
        complete,
    };
    debug_assert_eq!(atlas.violations(), Vec::<String>::new());
    Ok(atlas)
}

fn witness_key(w: &AtlasWitness) -> (usize, String, Signature, Provenance) {
    (
        w.witness.order(),
        w.witness.group.name().to_string(),
        w.witness.signature.clone(),
        w.provenance,
    )
}

/// Groups witnesses by point, ordered by `(|G|, group, signature)`; for a
/// repeated (group, signature) only the earliest provenance is kept.
fn merge(found: Vec<AtlasWitness>) -> BTreeMap<SkeletalPoint, Vec<AtlasWitness>> {
    let mut points: BTreeMap<SkeletalPoint, Vec<AtlasWitness>> = BTreeMap::new();
    for w in found {
        points.entry(w.witness.skeletal()).or_default().push(w);
    }
    for ws in points.values_mut() {
        ws.sort_by_cached_key(witness_key);
        ws.dedup_by(|b, a| {
            a.witness.group.name() == b.witness.group.name()
                && a.witness.signature == b.witness.signature
        });
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus(s: u32) -> Genus {
        Genus::new(s).unwrap()
    }

    fn pt(h: u32, r: u32) -> SkeletalPoint {
        SkeletalPoint::new(h, r)
    }

    #[test]
    fn c4_sweep_examples() {
        let twelve = c4_sweep(genus(12));
        for p in s_lattice_points(12) {
            assert!(twelve.contains_key(&p), "{p}");
        }
        assert!(twelve.contains_key(&pt(0, 14)));
        let six = c4_sweep(genus(6));
        assert_eq!(six[&pt(0, 8)].signature, C4Signature::new(0, 6, 2));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_actions(genus(12)), (Ratio::new(35, 4), 9));
        assert_eq!(lower_bound_actions(genus(9)), (Ratio::from_integer(6), 6));
        assert_eq!(lower_bound_actions(genus(6)), (Ratio::new(15, 4), 4));
    }

    #[test]
    fn small_atlas_without_catalog_sweep() {
        let catalog = Catalog::load_default().unwrap();
        let opts = AtlasOptions {
            max_order: Some(1),
            ..Default::default()
        };
        let atlas = build_atlas(genus(3), &catalog, &opts).unwrap();
        assert!(atlas.contains(pt(2, 0)));
        assert!(!atlas.complete);
        assert_eq!(atlas.scope.groups_swept, 0);
        assert!(atlas.violations().is_empty());
        let w = atlas.witnesses(pt(2, 0));
        assert!(w
            .iter()
            .all(|w| matches!(w.provenance, Provenance::Construction(_))));
    }

    #[test]
    fn merge_keeps_earliest_provenance() {
        let catalog = Catalog::load_default().unwrap();
        let opts = AtlasOptions {
            max_order: Some(4),
            ..Default::default()
        };
        let atlas = build_atlas(genus(2), &catalog, &opts).unwrap();
        let ws = atlas.witnesses(pt(0, 6));
        let c2: Vec<_> = ws
            .iter()
            .filter(|w| w.witness.group.name() == "C2")
            .collect();
        assert_eq!(c2.len(), 1);
        assert!(matches!(c2[0].provenance, Provenance::Construction(_)));
    }
}
