//! Worst-case disclosure analysis for bucketized tables.
//!
//! An attacker who knows which bucket every person landed in, plus `k`
//! implications of the form `(p = s) -> (q = t)`, can sharpen their belief
//! about a person's sensitive value well beyond the bucket frequencies. This
//! crate computes the exact worst case over every such attacker, checks it
//! against exhaustive random-worlds enumeration, and searches full-domain
//! generalization lattices for the least generalized `(c, k)`-safe release.
//!
//! The crate is `no_std` and only needs `alloc`; file formats and the command
//! line live in the `bkguard` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curves;
pub mod disclosure;
pub mod error;
pub mod knowledge;
pub mod lattice;
pub mod oracle;
pub mod prob;
pub mod table;

pub use disclosure::{
    lemma4_value, max_disclosure, max_disclosure_negated_atoms, minimize_across_buckets,
    minimize_within_bucket, AtomPartition, DisclosureEngine, DisclosureReport, EngineStats, NegationReport,
    Placement,
};
pub use error::{Error, Result};
pub use knowledge::{Atom, BasicImplication, Knowledge, PersonDirectory, SimpleImplication};
pub use prob::Probability;
pub use table::{partition, Bucket, Bucketization, Grouping, Record, SensitiveDomain, Table, ValueId};
