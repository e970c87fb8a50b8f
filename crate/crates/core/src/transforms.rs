//! The operations `H1` and `E12` on C₄ signatures and their shadows on
//! skeletal points.

use thiserror::Error;

use crate::criteria::CriteriaError;
use crate::signatures::{Signature, SkeletalPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// `(h; [2,t1], [4,t2])`, either count possibly zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct C4Signature {
    pub h: u32,
    pub t1: u32,
    pub t2: u32,
}

impl C4Signature {
    pub const fn new(h: u32, t1: u32, t2: u32) -> Self {
        C4Signature { h, t1, t2 }
    }

    pub fn from_signature(sig: &Signature) -> Result<Self, CriteriaError> {
        if sig.periods().iter().any(|&(n, _)| n != 2 && n != 4) {
            return Err(CriteriaError::BadShape(sig.to_string()));
        }
        Ok(C4Signature::new(sig.h(), sig.count(2), sig.count(4)))
    }

    pub fn to_signature(self) -> Signature {
        Signature::new(self.h, [(2, self.t1), (4, self.t2)]).expect("periods 2 and 4")
    }

    pub fn skeletal(self) -> SkeletalPoint {
        SkeletalPoint::new(self.h, self.t1 + self.t2)
    }
}

/// `(h; [2,t1], [4,t2]) ↦ (h+1; [2,t1-4], [4,t2])`.
pub fn h1(sig: C4Signature) -> Result<C4Signature, TransformError> {
    if sig.t1 < 4 {
        return Err(TransformError::PreconditionFailed(format!(
            "H1 needs t1 ≥ 4, got {}",
            sig.t1
        )));
    }
    Ok(C4Signature::new(sig.h + 1, sig.t1 - 4, sig.t2))
}

/// `(h; [2,t1], [4,t2]) ↦ (h; [2,t1-3], [4,t2+2])`.
pub fn e12(sig: C4Signature) -> Result<C4Signature, TransformError> {
    if sig.t1 < 3 {
        return Err(TransformError::PreconditionFailed(format!(
            "E12 needs t1 ≥ 3, got {}",
            sig.t1
        )));
    }
    Ok(C4Signature::new(sig.h, sig.t1 - 3, sig.t2 + 2))
}

/// `(h, r) ↦ (h+1, r-4)`.
pub fn skeletal_h1(p: SkeletalPoint) -> Result<SkeletalPoint, TransformError> {
    p.r.checked_sub(4)
        .map(|r| SkeletalPoint::new(p.h + 1, r))
        .ok_or_else(|| TransformError::PreconditionFailed(format!("H1 of {p} leaves r < 0")))
}

/// `(h, r) ↦ (h, r-1)`.
pub fn skeletal_e12(p: SkeletalPoint) -> Result<SkeletalPoint, TransformError> {
    p.r.checked_sub(1)
        .map(|r| SkeletalPoint::new(p.h, r))
        .ok_or_else(|| TransformError::PreconditionFailed(format!("E12 of {p} leaves r < 0")))
}
