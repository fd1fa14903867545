use std::fmt::Debug;

use super::verdict::LocalShape;
use crate::error::Result;

/// The capabilities shared by the finite and the mixed universe: `A`-submodule
/// arithmetic inside `B`, the maximal spectrum of `A`, localization data and
/// explicit certificates.
///
/// Modules are `A`-submodules of `B`; ideals of `A` are the modules contained
/// in `A`. Elements live in `B`.
pub trait RingUniverse {
    type Module: Clone + PartialEq + Debug;
    type Maximal: Clone + PartialEq + Debug;
    type Element: Clone + PartialEq + Debug;

    fn ring_a(&self) -> Self::Module;
    fn ring_b(&self) -> Self::Module;
    fn zero_module(&self) -> Self::Module;

    fn sum(&self, s: &Self::Module, t: &Self::Module) -> Result<Self::Module>;
    fn product(&self, s: &Self::Module, t: &Self::Module) -> Result<Self::Module>;
    /// `[S : T] = { x ∈ B : xT ⊆ S }`.
    fn colon(&self, s: &Self::Module, t: &Self::Module) -> Result<Self::Module>;
    fn intersection(&self, s: &Self::Module, t: &Self::Module) -> Result<Self::Module>;
    fn intersect_a(&self, s: &Self::Module) -> Self::Module;
    fn is_subset(&self, s: &Self::Module, t: &Self::Module) -> bool;
    fn is_ideal(&self, s: &Self::Module) -> bool;
    fn contains(&self, s: &Self::Module, x: &Self::Element) -> bool;

    /// A finite generating set, or `None` when the module is not finitely
    /// generated.
    fn generators(&self, s: &Self::Module) -> Option<Vec<Self::Element>>;
    /// The `A`-submodule of `B` generated by `gens`.
    fn generated(&self, gens: &[Self::Element]) -> Self::Module;

    /// Maximal ideals of `A` at which the given ideals can be told apart from
    /// each other and from `A`, with at least one representative of every
    /// behavior. Equals `Max(A)` in the finite universe.
    fn relevant_maximals(&self, modules: &[&Self::Module]) -> Result<Vec<Self::Maximal>>;
    fn maximal_ideal(&self, m: &Self::Maximal) -> Self::Module;
    /// `V(a) ∩ Max(A)` for an ideal `a`.
    fn support(&self, a: &Self::Module) -> Result<Vec<Self::Maximal>>;

    /// Shape of `a·A_m` for an ideal `a`.
    fn local_shape(&self, a: &Self::Module, m: &Self::Maximal) -> Result<LocalShape>;
    /// `a·A_m = b·A_m` for ideals `a`, `b`.
    fn locally_equal(&self, a: &Self::Module, b: &Self::Module, m: &Self::Maximal) -> Result<bool>;

    /// Pairs `(αᵢ, zᵢ)` with `αᵢ ∈ S`, `zᵢ ∈ T`, `Σ αᵢzᵢ = 1`, when `1 ∈ ST`.
    fn unit_certificate(&self, s: &Self::Module, t: &Self::Module) -> Option<Vec<(Self::Element, Self::Element)>>;
    fn check_certificate(&self, s: &Self::Module, t: &Self::Module, pairs: &[(Self::Element, Self::Element)]) -> bool;
    /// Elements `x ∈ a`, `y ∈ b` with `x + y = 1`.
    fn comaximal_split(&self, a: &Self::Module, b: &Self::Module) -> Option<(Self::Element, Self::Element)>;
    /// A non-zero-divisor of `A` lying in the ideal `a`.
    fn regular_element(&self, a: &Self::Module) -> Option<Self::Element>;
    /// An element of the ideal `a` outside `m`.
    fn element_outside(&self, a: &Self::Module, m: &Self::Maximal) -> Option<Self::Element>;

    /// The ideals the laws quantify over: all ideals in the finite universe,
    /// a bounded sweep in the mixed one.
    fn ideal_sweep(&self) -> Result<Vec<Self::Module>>;
    /// True when `B` is finite, so that only `A` is `B`-regular.
    fn is_finite_universe(&self) -> bool;

    fn describe_module(&self, s: &Self::Module) -> String;
    fn describe_maximal(&self, m: &Self::Maximal) -> String;
    fn describe_element(&self, x: &Self::Element) -> String;
}
