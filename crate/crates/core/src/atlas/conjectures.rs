//! Scans atlases against the conjectured shape of `K_σ`. Reports never
//! assert a conjecture: a point claimed present is `Witnessed` or
//! `UnknownNoWitness`, and only a verified witness at a point claimed
//! missing counts as a `Violation`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::KAtlas;
use crate::regions::{gap_allowed, Region};
use crate::signatures::SkeletalPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// `(0, r)` for `4 ≤ r ≤ σ+2` persistent.
    AxisZero,
    /// `(1, r)` for `3 ≤ r ≤ σ-1` persistent.
    AxisOne,
    /// Nothing strictly between the lines of slope -3 and -4 through
    /// `(1, σ-1)`, for `σ ≥ 9`.
    TriangularGap,
    /// The `h = 2` line: `(2, ⌊2σ/3 - 4⌉)` missing for `σ ≥ 7`, its
    /// neighbours up to `σ - 4` present, `(2, 1)` sporadic.
    LineTwo,
    /// The `h = 3` line: `(3, ⌊2σ/3 - 7⌉)`, `(3, ⌊2σ/3 - 8⌉)` and, for
    /// `σ ≡ 2 (mod 3)`, `(3, ⌊2σ/3 - 6⌉)` missing for `σ ≥ 18`; the rest up
    /// to `σ - 9` present; `(3, 1)` sporadic.
    LineThree,
    /// `(h, 1)` sporadic for every `h ≥ 2`.
    RankOneSporadic,
    /// Every `(h, r)` with `h, r ≥ 2` eventually persistent.
    StrongPersistence,
}

impl Conjecture {
    pub const ALL: [Conjecture; 7] = [
        Conjecture::AxisZero,
        Conjecture::AxisOne,
        Conjecture::TriangularGap,
        Conjecture::LineTwo,
        Conjecture::LineThree,
        Conjecture::RankOneSporadic,
        Conjecture::StrongPersistence,
    ];
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Conjecture::AxisZero => "axis-zero",
            Conjecture::AxisOne => "axis-one",
            Conjecture::TriangularGap => "triangular-gap",
            Conjecture::LineTwo => "line-two",
            Conjecture::LineThree => "line-three",
            Conjecture::RankOneSporadic => "rank-one-sporadic",
            Conjecture::StrongPersistence => "strong-persistence",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Present,
    Missing,
    Sporadic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointStatus {
    Witnessed,
    UnknownNoWitness,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub genus: u32,
    pub point: SkeletalPoint,
    pub claim: Claim,
    pub status: PointStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub genera: Vec<u32>,
    pub entries: Vec<ConjectureEntry>,
    /// Smallest scanned genus at which each point is witnessed.
    pub first_witnessed: BTreeMap<SkeletalPoint, u32>,
}

impl ConjectureReport {
    pub fn count(&self, status: PointStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn violations(&self) -> impl Iterator<Item = &ConjectureEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == PointStatus::Violation)
    }
}

/// Nearest integers to `x`; both neighbours when `x` is a half-integer.
fn round_candidates(x: Ratio<i64>) -> Vec<i64> {
    let fl = x.floor().to_integer();
    let frac = x - Ratio::from_integer(fl);
    match frac.cmp(&Ratio::new(1, 2)) {
        std::cmp::Ordering::Less => vec![fl],
        std::cmp::Ordering::Equal => vec![fl, fl + 1],
        std::cmp::Ordering::Greater => vec![fl + 1],
    }
}

fn two_thirds_minus(sigma: u32, c: i64) -> Vec<i64> {
    round_candidates(Ratio::new(2 * sigma as i64, 3) - Ratio::from_integer(c))
}

/// `(point, claim)` pairs a conjecture makes at one genus.
fn claims(conj: Conjecture, sigma: u32) -> Vec<(SkeletalPoint, Claim)> {
    let s = sigma as i64;
    let pt = |h: i64, r: i64| SkeletalPoint::new(h as u32, r as u32);
    let in_t = |h: i64, r: i64| h >= 0 && r >= 0 && Region::T(sigma).contains(pt(h, r));
    let mut out = Vec::new();
    match conj {
        Conjecture::AxisZero => {
            out.extend((4..=s + 2).map(|r| (pt(0, r), Claim::Present)));
        }
        Conjecture::AxisOne => {
            out.extend((3..=s - 1).map(|r| (pt(1, r), Claim::Present)));
        }
        Conjecture::TriangularGap if s >= 9 => {
            for h in 0..=(2 * s + 2) / 4 {
                let e = s + 2 - 3 * h;
                let d = s + 3 - 4 * h;
                for r in (e.min(d) + 1).max(0)..e.max(d) {
                    out.push((pt(h, r), Claim::Missing));
                }
            }
        }
        Conjecture::LineTwo => {
            if in_t(2, 1) {
                out.push((pt(2, 1), Claim::Sporadic));
            }
            if s >= 7 {
                let missing = two_thirds_minus(sigma, 4);
                for &x in &missing {
                    if x >= 0 {
                        out.push((pt(2, x), Claim::Missing));
                    }
                }
                for r in 2..=s - 4 {
                    if !missing.contains(&r) && !(s == 17 && r == 2) {
                        out.push((pt(2, r), Claim::Present));
                    }
                }
            }
        }
        Conjecture::LineThree => {
            if in_t(3, 1) {
                out.push((pt(3, 1), Claim::Sporadic));
            }
            let mut missing: Vec<i64> = two_thirds_minus(sigma, 7);
            missing.extend(two_thirds_minus(sigma, 8));
            if sigma % 3 == 2 {
                missing.extend(two_thirds_minus(sigma, 6));
            }
            missing.sort_unstable();
            missing.dedup();
            if s >= 18 {
                for &x in &missing {
                    if x >= 0 {
                        out.push((pt(3, x), Claim::Missing));
                    }
                }
            }
            for r in 2..=s - 9 {
                if !missing.contains(&r) {
                    out.push((pt(3, r), Claim::Present));
                }
            }
        }
        Conjecture::RankOneSporadic => {
            out.extend(
                (2..)
                    .take_while(|&h| in_t(h, 1))
                    .map(|h| (pt(h, 1), Claim::Sporadic)),
            );
        }
        Conjecture::StrongPersistence => {
            for p in Region::T(sigma).lattice_points() {
                if p.h >= 2 && p.r >= 2 && gap_allowed(sigma, p) {
                    out.push((p, Claim::Present));
                }
            }
        }
        Conjecture::TriangularGap => {}
    }
    out
}

pub fn scan_conjectures(atlases: &[KAtlas]) -> Vec<ConjectureReport> {
    let mut sorted: Vec<&KAtlas> = atlases.iter().collect();
    sorted.sort_by_key(|a| a.genus);
    Conjecture::ALL
        .iter()
        .map(|&conj| {
            let mut entries = Vec::new();
            let mut first_witnessed = BTreeMap::new();
            for atlas in &sorted {
                let sigma = atlas.genus.get();
                for (point, claim) in claims(conj, sigma) {
                    let witnessed = atlas.contains(point);
                    if witnessed {
                        first_witnessed.entry(point).or_insert(sigma);
                    }
                    let status = match (claim, witnessed) {
                        (Claim::Missing, true) => PointStatus::Violation,
                        (_, true) => PointStatus::Witnessed,
                        (_, false) => PointStatus::UnknownNoWitness,
                    };
                    entries.push(ConjectureEntry {
                        genus: sigma,
                        point,
                        claim,
                        status,
                    });
                }
            }
            ConjectureReport {
                conjecture: conj,
                genera: sorted.iter().map(|a| a.genus.get()).collect(),
                entries,
                first_witnessed,
            }
        })
        .collect()
}
