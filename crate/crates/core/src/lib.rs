//! Finite group actions on compact Riemann surfaces, organised by skeletal
//! signature `(h, r)`: group kernel, generating vector search, the
//! classical existence criteria, C4 transforms, the bounding regions and the
//! per-genus atlas of realized points.

pub mod atlas;
pub mod cli;
pub mod criteria;
pub mod genvec;
pub mod group_kernel;
pub mod regions;
pub mod signatures;
pub mod transforms;
