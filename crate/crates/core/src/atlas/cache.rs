//! JSON form of an atlas. Loading resolves every group, compares element
//! table checksums and re-verifies every witness.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AtlasError, AtlasWitness, KAtlas, Provenance, SearchScope};
use crate::criteria::ActionWitness;
use crate::genvec::WitnessRecord;
use crate::group_kernel::{Catalog, FiniteGroup};
use crate::signatures::{Genus, SkeletalPoint};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasDocument {
    pub schema_version: u32,
    pub genus: Genus,
    pub scope: SearchScope,
    pub complete: bool,
    pub points: Vec<PointDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub h: u32,
    pub r: u32,
    pub witnesses: Vec<WitnessDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    #[serde(flatten)]
    pub record: WitnessRecord,
    pub provenance: Provenance,
}

impl KAtlas {
    pub fn to_document(&self) -> AtlasDocument {
        AtlasDocument {
            schema_version: SCHEMA_VERSION,
            genus: self.genus,
            scope: self.scope.clone(),
            complete: self.complete,
            points: self
                .points
                .iter()
                .map(|(p, ws)| PointDocument {
                    h: p.h,
                    r: p.r,
                    witnesses: ws
                        .iter()
                        .map(|w| WitnessDocument {
                            record: w.witness.record(),
                            provenance: w.provenance,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("atlas serializes")
    }

    /// Rebuilds an atlas, re-verifying every witness against the groups
    /// `resolve` returns.
    pub fn from_document(
        doc: &AtlasDocument,
        resolve: impl Fn(&str) -> Option<Arc<FiniteGroup>>,
    ) -> Result<KAtlas, AtlasError> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(AtlasError::Document(format!(
                "schema version {} is not {SCHEMA_VERSION}",
                doc.schema_version
            )));
        }
        let mut points = BTreeMap::new();
        for pd in &doc.points {
            let p = SkeletalPoint::new(pd.h, pd.r);
            if pd.witnesses.is_empty() {
                return Err(AtlasError::Document(format!("{p} has no witness")));
            }
            let mut ws = Vec::with_capacity(pd.witnesses.len());
            for wd in &pd.witnesses {
                let witness = ActionWitness::from_record(doc.genus, &wd.record, &resolve)?;
                if witness.skeletal() != p {
                    return Err(AtlasError::Document(format!(
                        "{} {} is filed under {p}",
                        wd.record.group, wd.record.signature
                    )));
                }
                ws.push(AtlasWitness {
                    provenance: wd.provenance,
                    witness,
                });
            }
            if points.insert(p, ws).is_some() {
                return Err(AtlasError::Document(format!("{p} listed twice")));
            }
        }
        Ok(KAtlas {
            genus: doc.genus,
            points,
            scope: doc.scope.clone(),
            complete: doc.complete,
        })
    }

    pub fn from_json(text: &str, catalog: &Catalog) -> Result<KAtlas, AtlasError> {
        let doc: AtlasDocument = serde_json::from_str(text)?;
        KAtlas::from_document(&doc, |name| catalog.resolve(name))
    }

    pub fn save(&self, path: &Path) -> Result<(), AtlasError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path, catalog: &Catalog) -> Result<KAtlas, AtlasError> {
        KAtlas::from_json(&std::fs::read_to_string(path)?, catalog)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_atlas, AtlasOptions};
    use super::*;

    #[test]
    fn json_round_trip_and_tamper_detection() {
        let catalog = Catalog::load_default().unwrap();
        let opts = AtlasOptions {
            max_order: Some(8),
            ..Default::default()
        };
        let atlas = build_atlas(Genus::new(3).unwrap(), &catalog, &opts).unwrap();
        let text = atlas.to_json();
        assert_eq!(KAtlas::from_json(&text, &catalog).unwrap(), atlas);

        let mut doc = atlas.to_document();
        doc.points[0].witnesses[0].record.checksum = "0".repeat(64);
        assert!(KAtlas::from_document(&doc, |n| catalog.resolve(n)).is_err());

        let mut doc = atlas.to_document();
        doc.schema_version = 99;
        assert!(KAtlas::from_document(&doc, |n| catalog.resolve(n)).is_err());

        let mut doc = atlas.to_document();
        let moved = doc.points[0].witnesses[0].clone();
        doc.points[1].witnesses.push(moved);
        assert!(KAtlas::from_document(&doc, |n| catalog.resolve(n)).is_err());
    }
}
