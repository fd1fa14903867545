//! Finite commutative rings inside products of Galois-type components, and
//! their extensions, submodules, ideals and localizations.

pub mod component;
pub mod ideals;
pub mod localize;
pub mod ring;
pub(crate) mod span;
pub mod submodule;

pub use component::{Ambient, AmbientComponent, RingElement};
pub use ideals::{
    all_ideals, as_maximal, as_prime, describe_set, ideal_closure, is_ideal, is_maximal_ideal, is_prime_ideal,
    maximal_ideals, minimal_generators, principal_ideal, PrimeSpot, SpotKind,
};
pub use localize::{
    generalized_localization, generalized_localization_ideal, localize, localize_b, localize_submodule,
    localizations_agree, preimage_of_localization, Localization,
};
pub use ring::{FiniteRing, DEFAULT_SIZE_CAP};
pub use submodule::{Extension, Submodule};
