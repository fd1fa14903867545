//! Manis valuations, weak surjectivity, Prüfer and almost-Prüfer extensions,
//! finite character, the ideal `i_F` and finite generation from local data.

pub mod family;
pub mod generators;
pub mod predicates;
pub mod theorems;
pub mod universe;
pub mod valuation;

pub use family::{compute_i_f, verify_lemma_technical, ComaximalFamily, IdealFixpoint, LemmaReport, FIXPOINT_CAP};
pub use generators::{construct_finite_generators, FiniteGenerators};
pub use predicates::{
    has_finite_character, is_almost_prufer, is_prufer, is_weakly_surjective, verify_theorem_2_1,
    weak_surjectivity_crosscheck,
};
pub use theorems::{verify_main_theorem, verify_prufer_ring_corollary, DESK_SCALE_NOTE};
pub use universe::PruferUniverse;
pub use valuation::{
    check_manis_valuation, check_padic_valuation, is_manis_pair_finite, is_manis_pair_slot, Assignment, FinitePair,
    ManisValuationData, Value,
};
