//! Finite groups, loops and Latin squares as Cayley tables.

mod group;
mod linear;
mod perm;
mod steiner;
mod table;

use thiserror::Error;

pub use group::{
    affine_map, automorphisms, automorphisms_by_filter, automorphisms_by_generators,
    decompose_holomorphism, is_holomorphism, make_group, FiniteGroup, GroupSpec, HolomorphismParts,
    AUTOMORPHISM_BOUND,
};
pub use linear::{
    all_linear_certificates, canonical_groups, derive_params, find_linear_certificate,
    find_shared_abelian_representation, group_structures, linear_quasigroup, LabeledGroup,
    LinearCertificate, LinearParams, CERTIFICATE_BOUND,
};
pub use perm::{Automorphism, Perm};
pub use steiner::{steiner_loop_10, SteinerLoop, STS9_TRIPLES};
pub use table::{latin_squares, parse_table, LatinSquare, Table, TableFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("empty carrier or table list")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry {value} outside carrier of order {order}")]
    OutOfRange { value: usize, order: usize },
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("table is not a Latin square")]
    NotLatin,
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("map is not a permutation of the carrier")]
    NotPermutation,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("map is not a holomorphism")]
    NotHolomorphism,
    #[error("order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("unknown group spec `{0}`")]
    UnknownGroupSpec(String),
    #[error("cannot parse table: {0}")]
    Parse(String),
}
