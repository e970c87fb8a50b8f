//! Closed-form existence rules and explicit constructions for specific
//! skeletal points: the C₄ criterion, the hyperelliptic and C₃ lines, the
//! Klein-four point, two-branch and free cyclic actions, and the
//! generalized quaternion family.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genvec::{
    exists_with_options, verify_generating_vector, ExistenceResult, GeneratingVector, GenvecError,
    RecordError, SearchOptions, WitnessRecord,
};
use crate::group_kernel::{
    make_family, Catalog, Family, FiniteGroup, GroupError, DEFAULT_ORDER_CAP,
};
use crate::signatures::{rh_satisfied, Genus, Signature, SkeletalPoint};
use crate::transforms::C4Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("signature {0} has a period outside {{2, 4}}")]
    BadShape(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Search(#[from] GenvecError),
    #[error("no generating vector for {signature} in {group}")]
    NoVector { group: String, signature: String },
}

/// Existence of a C₄ action with signature `(h; [2,t1], [4,t2])`, assuming
/// the Riemann-Hurwitz genus is an integer `≥ 2`.
///
/// Branch points of order 4 must come in even number. When there are none,
/// the cone product is `g^(2·t1)`, so `t1` must be even and the pairs must
/// generate, which needs `h ≥ 1`. See [`harvey_c4_as_stated`] for the
/// weaker rule that omits the `t2 = 0` case.
pub fn harvey_c4(sig: &Signature) -> Result<bool, CriteriaError> {
    let c = C4Signature::from_signature(sig)?;
    Ok(c.t2 % 2 == 0 && (c.t2 > 0 || (c.h >= 1 && c.t1 % 2 == 0)))
}

/// The rule `t2` even, plus `t2 > 0` when `h = 0`. It accepts
/// `(h; [2,t1])` with `h ≥ 1` and `t1` odd, which has no vector.
pub fn harvey_c4_as_stated(sig: &Signature) -> Result<bool, CriteriaError> {
    let c = C4Signature::from_signature(sig)?;
    Ok(c.t2 % 2 == 0 && (c.h != 0 || c.t2 > 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionKind {
    /// C₂ with `(h0; [2, 2σ+2-4h0])`.
    HyperellipticLine(u32),
    /// C₃ with `(h0; [3, σ+2-3h0])`.
    C3Line(u32),
    /// C₂×C₂ with `(0; [2, σ+3])`.
    VPoint,
    /// C_σ with `(1; [σ, 2])`.
    TwoBranch,
    /// C_k acting freely with quotient genus `h0`, `k = (σ-1)/(h0-1)`.
    FreeCyclic(u32),
    /// `Q_{4n}` with `(h0; [n, 1])`.
    Quaternion(u32, u32),
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionKind::HyperellipticLine(h) => write!(f, "hyperelliptic-line({h})"),
            ConstructionKind::C3Line(h) => write!(f, "c3-line({h})"),
            ConstructionKind::VPoint => f.write_str("v-point"),
            ConstructionKind::TwoBranch => f.write_str("two-branch"),
            ConstructionKind::FreeCyclic(h) => write!(f, "free-cyclic({h})"),
            ConstructionKind::Quaternion(h, n) => write!(f, "quaternion({h},{n})"),
        }
    }
}

impl ConstructionKind {
    /// Every construction whose preconditions hold at this genus.
    pub fn all_for(genus: Genus) -> Vec<ConstructionKind> {
        let s = genus.get();
        let mut out = Vec::new();
        for h0 in 0..=(2 * s + 2) / 4 {
            out.push(ConstructionKind::HyperellipticLine(h0));
        }
        for h0 in 0..=s.div_ceil(3) {
            if s + 2 - 3 * h0 != 1 {
                out.push(ConstructionKind::C3Line(h0));
            }
        }
        out.push(ConstructionKind::VPoint);
        out.push(ConstructionKind::TwoBranch);
        for h0 in 2..=s {
            if free_cyclic_order(s, h0).is_some() {
                out.push(ConstructionKind::FreeCyclic(h0));
            }
        }
        for n in 2..=(DEFAULT_ORDER_CAP as u32 / 4) {
            // σ = 4n(h0-1) + 2n - 1
            let base = 2 * n - 1;
            if s < base {
                break;
            }
            if (s - base).is_multiple_of(4 * n) {
                out.push(ConstructionKind::Quaternion((s - base) / (4 * n) + 1, n));
            }
        }
        out
    }
}

fn free_cyclic_order(sigma: u32, h0: u32) -> Option<u32> {
    if h0 < 2 || !(sigma - 1).is_multiple_of(h0 - 1) {
        return None;
    }
    let k = (sigma - 1) / (h0 - 1);
    (k >= 2).then_some(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVector {
    Explicit(GeneratingVector),
    /// Existence rests on [`harvey_c4`] alone.
    CriterionOnly,
}

/// A group, signature and generating vector certifying a skeletal point.
#[derive(Clone, Debug)]
pub struct ActionWitness {
    pub genus: Genus,
    pub group: Arc<FiniteGroup>,
    pub signature: Signature,
    pub vector: WitnessVector,
}

impl PartialEq for ActionWitness {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.group.name() == other.group.name()
            && self.group.checksum() == other.group.checksum()
            && self.signature == other.signature
            && self.vector == other.vector
    }
}

impl Eq for ActionWitness {}

/// JSON form of an [`ActionWitness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionWitnessJson {
    pub genus: Genus,
    #[serde(flatten)]
    pub record: WitnessRecord,
}

impl ActionWitness {
    pub fn skeletal(&self) -> SkeletalPoint {
        self.signature.skeletal()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Riemann-Hurwitz plus either the vector or the C₄ criterion.
    pub fn verify(&self) -> bool {
        if !rh_satisfied(self.group.order() as u64, &self.signature, self.genus) {
            return false;
        }
        match &self.vector {
            WitnessVector::Explicit(v) => {
                verify_generating_vector(&self.group, &self.signature, v).unwrap_or(false)
            }
            WitnessVector::CriterionOnly => {
                self.group.order() == 4
                    && self.group.is_abelian()
                    && self.group.elements_of_order(4).len() == 2
                    && harvey_c4(&self.signature).unwrap_or(false)
            }
        }
    }

    pub fn record(&self) -> WitnessRecord {
        let vector = match &self.vector {
            WitnessVector::Explicit(v) => Some(v.clone()),
            WitnessVector::CriterionOnly => None,
        };
        WitnessRecord::new(&self.group, &self.signature, vector)
    }

    pub fn to_json(&self) -> ActionWitnessJson {
        ActionWitnessJson {
            genus: self.genus,
            record: self.record(),
        }
    }

    /// Rebuilds a witness from its record and re-verifies it.
    pub fn from_record(
        genus: Genus,
        record: &WitnessRecord,
        resolve: impl Fn(&str) -> Option<Arc<FiniteGroup>>,
    ) -> Result<Self, RecordError> {
        let group = record.check(resolve)?;
        let vector = match &record.vector {
            Some(v) => WitnessVector::Explicit(v.clone()),
            None => WitnessVector::CriterionOnly,
        };
        let w = ActionWitness {
            genus,
            group,
            signature: record.signature.clone(),
            vector,
        };
        if !w.verify() {
            return Err(RecordError::Invalid {
                group: record.group.clone(),
                signature: record.signature.to_string(),
            });
        }
        Ok(w)
    }
}

fn family(kind: Family) -> Result<Arc<FiniteGroup>, CriteriaError> {
    Ok(Arc::new(make_family(&kind, DEFAULT_ORDER_CAP)?))
}

/// Searches for a vector and packages a verified witness.
pub fn search_witness(
    genus: Genus,
    group: Arc<FiniteGroup>,
    signature: Signature,
    options: SearchOptions,
) -> Result<ActionWitness, CriteriaError> {
    match exists_with_options(&group, &signature, options)? {
        ExistenceResult::Witness(v) => Ok(ActionWitness {
            genus,
            group,
            signature,
            vector: WitnessVector::Explicit(v),
        }),
        ExistenceResult::None { .. } => Err(CriteriaError::NoVector {
            group: group.name().to_string(),
            signature: signature.to_string(),
        }),
    }
}

pub fn construct_witness(
    kind: ConstructionKind,
    genus: Genus,
) -> Result<ActionWitness, CriteriaError> {
    let s = genus.get();
    let out_of_range =
        |why: String| CriteriaError::OutOfRange(format!("{kind} at genus {s}: {why}"));
    let sig = |h: u32, pairs: Vec<(u32, u32)>| Signature::new(h, pairs).expect("valid periods");
    let (group, signature) = match kind {
        ConstructionKind::HyperellipticLine(h0) => {
            if 4 * h0 > 2 * s + 2 {
                return Err(out_of_range("2σ+2-4h0 < 0".into()));
            }
            (
                family(Family::Cyclic(2))?,
                sig(h0, vec![(2, 2 * s + 2 - 4 * h0)]),
            )
        }
        ConstructionKind::C3Line(h0) => {
            if 3 * h0 > s + 2 {
                return Err(out_of_range("σ+2-3h0 < 0".into()));
            }
            let r = s + 2 - 3 * h0;
            if r == 1 {
                return Err(out_of_range(
                    "an abelian group has no single-branch-point action".into(),
                ));
            }
            (family(Family::Cyclic(3))?, sig(h0, vec![(3, r)]))
        }
        ConstructionKind::VPoint => (
            family(Family::AbelianProduct(vec![2, 2]))?,
            sig(0, vec![(2, s + 3)]),
        ),
        ConstructionKind::TwoBranch => (family(Family::Cyclic(s))?, sig(1, vec![(s, 2)])),
        ConstructionKind::FreeCyclic(h0) => {
            let k = free_cyclic_order(s, h0)
                .ok_or_else(|| out_of_range("(σ-1)/(h0-1) is not an integer ≥ 2".into()))?;
            (family(Family::Cyclic(k))?, Signature::unbranched(h0))
        }
        ConstructionKind::Quaternion(h0, n) => {
            if h0 < 1 || n < 2 {
                return Err(out_of_range("needs h0 ≥ 1 and n ≥ 2".into()));
            }
            let want = 4 * n as u64 * (h0 as u64 - 1) + 2 * n as u64 - 1;
            if want != s as u64 {
                return Err(out_of_range(format!(
                    "the quaternion action lives at genus {want}"
                )));
            }
            return quaternion_witness(h0, n);
        }
    };
    search_witness(genus, group, signature, SearchOptions::default())
}

/// The explicit vector `(x, y, e, …, e, y x⁻² y⁻¹)` in `Q_{4n}` with
/// `h0 - 1` identity pairs.
fn quaternion_witness(h0: u32, n: u32) -> Result<ActionWitness, CriteriaError> {
    let group = family(Family::GeneralizedQuaternion(n))?;
    let x = group.named("x").expect("quaternion generator x");
    let y = group.named("y").expect("quaternion generator y");
    let c = group.product([y, group.pow(x, -2), group.inv(y)]);
    let e = group.identity();
    let mut pairs = vec![(x, y)];
    pairs.extend(std::iter::repeat_n((e, e), h0 as usize - 1));
    let sigma = 4 * n * (h0 - 1) + 2 * n - 1;
    let w = ActionWitness {
        genus: Genus::new(sigma).expect("n ≥ 2 gives genus ≥ 3"),
        group,
        signature: Signature::new(h0, [(n, 1)]).expect("n ≥ 2"),
        vector: WitnessVector::Explicit(GeneratingVector {
            hyperbolic_pairs: pairs,
            cone_elements: vec![c],
        }),
    };
    if !w.verify() {
        return Err(CriteriaError::NoVector {
            group: w.group.name().to_string(),
            signature: w.signature.to_string(),
        });
    }
    Ok(w)
}

/// Witness for `(h0, 1)` at genus `4n(h0-1) + 2n - 1`.
pub fn quaternion_higher_genus(h0: u32, n: u32) -> Result<ActionWitness, CriteriaError> {
    if h0 < 2 || n < 2 {
        return Err(CriteriaError::OutOfRange(format!(
            "quaternion({h0},{n}) needs h0 ≥ 2, n ≥ 2"
        )));
    }
    if 4 * n as usize > DEFAULT_ORDER_CAP {
        return Err(GroupError::CapExceeded {
            cap: DEFAULT_ORDER_CAP,
        }
        .into());
    }
    quaternion_witness(h0, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SporadicVerdict {
    /// Every case was searched exhaustively without finding a vector.
    ConfirmedAbsent,
    Inconclusive(String),
    /// A verified action with skeletal point `(1, 1)`.
    Counterexample(Box<ActionWitness>),
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// The four `(n, |G|)` pairs compatible with signature `(1; [n,1])` at
/// genus `p + 1`.
pub fn sporadic_cases(p: u32) -> [(u32, usize); 4] {
    let q = p as usize;
    [
        (2, 4 * q),
        (3, 3 * q),
        (p + 1, 2 * (q + 1)),
        (2 * p + 1, 2 * q + 1),
    ]
}

/// Decides whether `(1, 1)` is absent at genus `p + 1` by exhaustive search
/// over the catalog.
pub fn sporadic_11_excluded(
    p: u32,
    catalog: &Catalog,
    options: SearchOptions,
) -> Result<SporadicVerdict, CriteriaError> {
    if p < 5 || !is_prime(p) {
        return Err(CriteriaError::OutOfRange(format!("{p} is not a prime ≥ 5")));
    }
    let genus = Genus::new(p + 1).expect("p ≥ 5");
    for (_, order) in sporadic_cases(p) {
        if !catalog.is_complete(order) {
            return Ok(SporadicVerdict::Inconclusive(format!(
                "order {order} is not complete in the catalog"
            )));
        }
    }
    for (n, order) in sporadic_cases(p) {
        let sig = Signature::new(1, [(n, 1)]).expect("n ≥ 2");
        debug_assert!(rh_satisfied(order as u64, &sig, genus));
        for group in catalog.groups_of_order(order).groups {
            match exists_with_options(&group, &sig, options) {
                Ok(ExistenceResult::Witness(v)) => {
                    return Ok(SporadicVerdict::Counterexample(Box::new(ActionWitness {
                        genus,
                        group,
                        signature: sig,
                        vector: WitnessVector::Explicit(v),
                    })))
                }
                Ok(ExistenceResult::None { .. }) => {}
                Err(GenvecError::BudgetExceeded { budget }) => {
                    return Ok(SporadicVerdict::Inconclusive(format!(
                        "search in {} exceeded the budget of {budget}",
                        group.name()
                    )))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(SporadicVerdict::ConfirmedAbsent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> Signature {
        text.parse().unwrap()
    }

    fn genus(s: u32) -> Genus {
        Genus::new(s).unwrap()
    }

    #[test]
    fn harvey_examples() {
        assert_eq!(harvey_c4(&sig("(0; [2,3] [4,2])")), Ok(true));
        assert_eq!(harvey_c4(&sig("(1; [4,3])")), Ok(false));
        assert_eq!(harvey_c4(&sig("(0; [2,8])")), Ok(false));
        assert_eq!(harvey_c4(&sig("(2; [2,6])")), Ok(true));
        assert_eq!(harvey_c4(&sig("(2; -)")), Ok(true));
        assert!(matches!(
            harvey_c4(&sig("(0; [3,3])")),
            Err(CriteriaError::BadShape(_))
        ));
    }

    #[test]
    fn literal_rule_accepts_odd_order_two_count() {
        let s = sig("(2; [2,5])");
        assert_eq!(harvey_c4_as_stated(&s), Ok(true));
        assert_eq!(harvey_c4(&s), Ok(false));
        let c4 = make_family(&Family::Cyclic(4), 16).unwrap();
        assert!(!crate::genvec::exists_generating_vector(&c4, &s)
            .unwrap()
            .exists());
    }

    #[test]
    fn construction_examples() {
        let w = construct_witness(ConstructionKind::HyperellipticLine(0), genus(5)).unwrap();
        assert_eq!(w.group.name(), "C2");
        assert_eq!(w.signature, sig("(0; [2,12])"));
        assert_eq!(w.skeletal(), SkeletalPoint::new(0, 12));

        let w = construct_witness(ConstructionKind::Quaternion(1, 2), genus(3)).unwrap();
        assert_eq!(w.group.name(), "Q8");
        assert_eq!(w.signature, sig("(1; [2,1])"));
        let x = w.group.named("x").unwrap();
        let y = w.group.named("y").unwrap();
        assert_eq!(
            w.vector,
            WitnessVector::Explicit(GeneratingVector {
                hyperbolic_pairs: vec![(x, y)],
                cone_elements: vec![w.group.pow(x, 2)]
            })
        );

        let w = construct_witness(ConstructionKind::FreeCyclic(3), genus(5)).unwrap();
        assert_eq!(
            (w.group.name(), w.skeletal()),
            ("C2", SkeletalPoint::new(3, 0))
        );
        assert!(matches!(
            construct_witness(ConstructionKind::FreeCyclic(3), genus(6)),
            Err(CriteriaError::OutOfRange(_))
        ));

        let w = construct_witness(ConstructionKind::VPoint, genus(6)).unwrap();
        assert_eq!(
            (w.group.name(), w.signature.clone()),
            ("C2xC2", sig("(0; [2,9])"))
        );

        let w = construct_witness(ConstructionKind::TwoBranch, genus(6)).unwrap();
        assert_eq!(
            (w.group.name(), w.signature.clone()),
            ("C6", sig("(1; [6,2])"))
        );
    }

    #[test]
    fn c3_line_single_branch_point_is_out_of_range() {
        for s in (5..60).step_by(3) {
            assert!(matches!(
                construct_witness(ConstructionKind::C3Line((s + 1) / 3), genus(s)),
                Err(CriteriaError::OutOfRange(_))
            ));
        }
    }

    #[test]
    fn all_constructions_verify() {
        for s in 2..=16 {
            for kind in ConstructionKind::all_for(genus(s)) {
                let w = construct_witness(kind, genus(s)).unwrap();
                assert!(w.verify(), "{kind} at {s}");
                assert_eq!(w.genus, genus(s));
            }
        }
    }

    #[test]
    fn quaternion_examples() {
        for (h0, n, s) in [(2, 2, 11), (2, 3, 17), (3, 2, 19)] {
            let w = quaternion_higher_genus(h0, n).unwrap();
            assert_eq!(w.genus, genus(s));
            assert_eq!(w.skeletal(), SkeletalPoint::new(h0, 1));
            assert!(w.verify());
        }
        assert!(quaternion_higher_genus(1, 2).is_err());
        assert!(matches!(
            quaternion_higher_genus(2, 300),
            Err(CriteriaError::Group(_))
        ));
    }

    #[test]
    fn sporadic_cases_and_inconclusive() {
        assert_eq!(sporadic_cases(5), [(2, 20), (3, 15), (6, 12), (11, 11)]);
        let catalog = Catalog::load_default().unwrap();
        assert_eq!(
            sporadic_11_excluded(5, &catalog, SearchOptions::default()).unwrap(),
            SporadicVerdict::ConfirmedAbsent
        );
        assert!(matches!(
            sporadic_11_excluded(37, &catalog, SearchOptions::default()).unwrap(),
            SporadicVerdict::Inconclusive(_)
        ));
        assert!(sporadic_11_excluded(9, &catalog, SearchOptions::default()).is_err());
    }

    #[test]
    fn witness_json_round_trip() {
        let w = construct_witness(ConstructionKind::TwoBranch, genus(7)).unwrap();
        let text = serde_json::to_string(&w.to_json()).unwrap();
        let back: ActionWitnessJson = serde_json::from_str(&text).unwrap();
        let g = w.group.clone();
        let again =
            ActionWitness::from_record(back.genus, &back.record, |_| Some(g.clone())).unwrap();
        assert_eq!(again, w);
    }
}
