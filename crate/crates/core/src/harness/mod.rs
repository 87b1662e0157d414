//! End-to-end verification: per-poset certificates, sharded parallel sweeps
//! with JSONL output, checkpoint and resume.

mod checkpoint;
mod record;
mod sweep;

use std::io;

use thiserror::Error;

use crate::ehrhart::HStarError;
use crate::gen::{GenError, ReadError};
use crate::polycheck::PolyError;

pub use checkpoint::{Checkpoint, CheckpointConfig};
pub use record::{verify_poset, Property, VerificationRecord};
pub use sweep::{sweep, PropertyCounts, Source, SweepConfig, SweepSummary, FILE_UNIT_RECORDS};

/// Process exit codes of the command line driver.
pub mod exit_code {
    pub const PASS: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const USAGE_OR_IO: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("h* routes disagree for {canon}: Ehrhart route {from_ehrhart:?}, descent route {from_descents:?}")]
    HStarMismatch { canon: String, from_ehrhart: Vec<String>, from_descents: Vec<String> },
    #[error("h* extraction failed for {canon}: {source}")]
    HStar {
        canon: String,
        #[source]
        source: HStarError,
    },
    #[error("polynomial check failed for {canon}: {source}")]
    Poly {
        canon: String,
        #[source]
        source: PolyError,
    },
    #[error("record invariant violated for {canon}: {detail}")]
    Invariant { canon: String, detail: String },
    #[error("sweep produced {found} posets, expected {expected}")]
    CountMismatch { expected: u64, found: u64 },
    #[error("checkpoint corrupt: {0}")]
    CheckpointCorrupt(String),
    #[error("checkpoint was written for {stored}, current configuration is {current}")]
    ConfigMismatch { stored: String, current: String },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl HarnessError {
    pub(crate) fn io(context: impl Into<String>, source: io::Error) -> Self {
        HarnessError::Io { context: context.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::HStarMismatch { .. }
            | HarnessError::HStar { .. }
            | HarnessError::Poly { .. }
            | HarnessError::Invariant { .. }
            | HarnessError::CountMismatch { .. } => exit_code::INTERNAL,
            _ => exit_code::USAGE_OR_IO,
        }
    }
}
