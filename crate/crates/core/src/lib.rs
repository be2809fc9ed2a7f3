//! MDS self-dual codes from generalized Reed-Solomon codes over finite
//! fields of odd characteristic.

pub mod arith;
pub mod cli;
pub mod constructions;
pub mod coset_lifts;
pub mod error;
pub mod field;
pub mod grs;
mod host;
pub mod limits;
pub mod search;
pub mod selftest;

pub use error::{Error, ErrorKind, Result};
pub use field::{make_field, FieldDescriptor, FieldElement, FieldSpec};
pub use grs::{CodeRecord, EvalSet, GeneratorMatrix, Provenance, SelfDualCode};
pub use limits::Limits;
