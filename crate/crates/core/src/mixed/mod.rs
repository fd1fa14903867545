//! The mixed universe: finitely many rational slots, each a localization of
//! `Z` inside `Q`, next to a finite extension.

pub mod extension;
pub mod slot;
mod universe;

pub use extension::{
    total_quotient_ring, MixedElement, MixedLocalIdeal, MixedExtension, MixedIdeal, MixedMaximal, MixedRing, SweepBounds,
};
pub use slot::{format_q, gcd_q, SlotFlavor, SlotModule, Q};
