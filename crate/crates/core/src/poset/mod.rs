//! Finite posets, the finiteness theorem for maximal elements above a fixed
//! element, and the poset of regular ideals of an extension.

pub mod bridge;
pub mod order;
pub mod theorem;

pub use bridge::{build_regular_ideal_poset, RegularIdealPoset};
pub use order::FinitePoset;
pub use theorem::{check_equivalence, check_hypotheses, EquivalenceReport, EquivalenceRow, HypothesesReport, FINITE_INSTANCE_NOTE};
