//! File formats and helpers behind the `bkguard` command line: CSV tables,
//! partition and domain files, knowledge files, JSON hierarchies and curve
//! output.

pub mod emit;
pub mod error;
pub mod hierarchy_json;
pub mod kb;
pub mod tabular;

pub use error::{Error, Result};
