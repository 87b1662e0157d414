//! Exhaustive verification of Ehrhart positivity and h*-real-rootedness for
//! order polytopes of small posets.
//!
//! * [`poset`]: naturally labeled finite posets, linear extensions, order
//!   ideals, canonical forms.
//! * [`gen`]: orderly generation of all posets up to isomorphism, sharding,
//!   digraph6 ingestion.
//! * [`ehrhart`]: order polynomial by two algorithms, Ehrhart polynomial,
//!   h*-vector by two routes.
//! * [`polycheck`]: Sturm-sequence real-root counting, log-concavity,
//!   unimodality.
//! * [`harness`]: per-poset certificates, sweeps, checkpoints.

pub mod ehrhart;
pub mod gen;
pub mod harness;
pub mod polycheck;
pub mod poset;

pub use poset::{Poset, PosetError};
