//! Explicit finite groups as full multiplication tables.
//!
//! This module is the brute-force bedrock of the crate: groups are flat
//! `order × order` index tables with no structure assumed beyond the group
//! axioms (which are checked). Everything is deterministic — closures number
//! elements breadth-first from the identity in the generator order given, so
//! the same input always produces the same indexing.

mod analysis;
mod hom;
mod table;

pub use analysis::{
    abelian_invariants, blackburn_quotient, characteristic_subgroups, frattini_by_intersection,
    is_metacyclic, maximal_subgroups, quotient, CharacteristicReport,
};
pub use hom::{
    extend_generator_map, find_isobicyclic_pairs, isomorphism_search, ExtendOutcome, GenMap,
    Homomorphism, PairScan,
};
pub use table::{build_from_generators, closure_order, Closure, GroupTable, Subgroup,
    DEFAULT_CLOSURE_CAP};

use thiserror::Error;

/// Errors raised by table construction and analysis.
#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("no generators supplied")]
    NoGenerators,
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not closed or lacks identity/inverses: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("group order {order} is not a power of two")]
    NotATwoGroup { order: usize },
    #[error("generator list does not generate the group")]
    NotGenerating,
    #[error("generator and image lists have different lengths ({sources} vs {images})")]
    LengthMismatch { sources: usize, images: usize },
    #[error("malformed group table text: {0}")]
    Parse(String),
}
