//! Predicates on ideals and submodules: regularity, invertibility, flatness,
//! faithful flatness and local principality.

mod finite_universe;
pub mod oracle;
pub mod predicates;
pub mod universe;
pub mod verdict;

pub use oracle::{flatness_oracle, DEFAULT_ORACLE_CAP};
pub use predicates::{
    b_inverse, is_b_invertible, is_b_regular, is_faithfully_flat, is_flat, is_locally_principal, is_regular_ideal,
    partition_of_unity, verify_partition, PartitionOfUnity, RenderedPartition,
};
pub use universe::RingUniverse;
pub use verdict::{LocalShape, PropertyVerdict, Witness};
