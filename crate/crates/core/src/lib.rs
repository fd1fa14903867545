//! Exact computation with ring extensions `A ⊆ B`: submodule arithmetic,
//! invertibility, flatness, Prüfer-type properties and the associated posets.
//!
//! Two universes are supported. The finite one works with subrings of finite
//! products of rings `Z[x]/(p^k, f)`. The mixed one adjoins finitely many
//! slots drawn from `Z`, its localizations and `Q`, with `Q` as the ambient.

pub mod arith;
pub mod error;
pub mod finite;
pub mod mixed;
pub mod poset;
pub mod props;
pub mod prufer;

pub use error::{AlgebraError, Result};
