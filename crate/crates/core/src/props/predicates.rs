//! Regularity, invertibility and flatness predicates over any [`RingUniverse`].

use serde::Serialize;

use super::universe::RingUniverse;
use super::verdict::{PropertyVerdict, Witness};
use crate::error::{AlgebraError, Result};

/// A certificate `1 = Σ αᵢzᵢ` with `αᵢ ∈ S` and `zᵢ ∈ [A : S]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOfUnity<E> {
    pub pairs: Vec<(E, E)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderedPartition {
    pub pairs: Vec<(String, String)>,
}

impl<E> PartitionOfUnity<E> {
    pub fn render<U: RingUniverse<Element = E>>(&self, u: &U) -> RenderedPartition {
        RenderedPartition {
            pairs: self.pairs.iter().map(|(a, z)| (u.describe_element(a), u.describe_element(z))).collect(),
        }
    }
}

fn combination<U: RingUniverse>(u: &U, pairs: &[(U::Element, U::Element)]) -> Witness {
    Witness::Combination {
        pairs: pairs.iter().map(|(a, z)| (u.describe_element(a), u.describe_element(z))).collect(),
    }
}

/// `S` is `B`-regular iff `SB = B`; the witness writes `1 = Σ sᵢbᵢ`.
pub fn is_b_regular<U: RingUniverse>(u: &U, s: &U::Module) -> Result<PropertyVerdict> {
    let b = u.ring_b();
    let holds = u.product(s, &b)? == b;
    let witness = if holds {
        let pairs = u.unit_certificate(s, &b).expect("SB = B contains 1");
        Some(combination(u, &pairs))
    } else {
        None
    };
    Ok(PropertyVerdict::new("b_regular", holds).maybe_witness(witness))
}

/// `[A : S]`, and whether `S·[A : S] = A`.
pub fn b_inverse<U: RingUniverse>(u: &U, s: &U::Module) -> Result<(U::Module, bool)> {
    let a = u.ring_a();
    let inverse = u.colon(&a, s)?;
    let holds = u.product(s, &inverse)? == a;
    Ok((inverse, holds))
}

/// `S` is `B`-invertible iff `S·[A : S] = A`. Returns the inverse on success.
pub fn is_b_invertible<U: RingUniverse>(u: &U, s: &U::Module) -> Result<(PropertyVerdict, Option<U::Module>)> {
    let (inverse, holds) = b_inverse(u, s)?;
    let mut verdict = PropertyVerdict::new("b_invertible", holds);
    if holds {
        verdict = verdict.with_witness(Witness::Text { value: u.describe_module(&inverse) });
        Ok((verdict, Some(inverse)))
    } else {
        Ok((verdict, None))
    }
}

pub fn partition_of_unity<U: RingUniverse>(u: &U, s: &U::Module) -> Result<PartitionOfUnity<U::Element>> {
    let (inverse, holds) = b_inverse(u, s)?;
    if !holds {
        return Err(AlgebraError::NotInvertible);
    }
    let pairs = u.unit_certificate(s, &inverse).ok_or(AlgebraError::NotInvertible)?;
    Ok(PartitionOfUnity { pairs })
}

/// Re-checks `αᵢ ∈ S`, `zᵢS ⊆ A` and `Σ αᵢzᵢ = 1`.
pub fn verify_partition<U: RingUniverse>(u: &U, s: &U::Module, pou: &PartitionOfUnity<U::Element>) -> Result<bool> {
    let inverse = u.colon(&u.ring_a(), s)?;
    Ok(u.check_certificate(s, &inverse, &pou.pairs))
}

fn local_scan<U: RingUniverse>(
    u: &U,
    a: &U::Module,
    name: &str,
    ok: impl Fn(super::verdict::LocalShape) -> bool,
) -> Result<PropertyVerdict> {
    for m in u.relevant_maximals(&[a])? {
        let shape = u.local_shape(a, &m)?;
        if !ok(shape) {
            return Ok(PropertyVerdict::new(name, false)
                .with_witness(Witness::Maximal { ideal: u.describe_maximal(&m) })
                .note(format!("local shape {shape:?}")));
        }
    }
    Ok(PropertyVerdict::new(name, true))
}

/// `aA_m` is principal at every maximal `m`.
pub fn is_locally_principal<U: RingUniverse>(u: &U, a: &U::Module) -> Result<PropertyVerdict> {
    local_scan(u, a, "locally_principal", |s| s.is_principal())
}

/// `aA_m` is free of rank at most one at every maximal `m`.
///
/// Over an artinian local ring a finitely generated flat module is free, and
/// an ideal cannot be free of rank two or more.
pub fn is_flat<U: RingUniverse>(u: &U, a: &U::Module) -> Result<PropertyVerdict> {
    local_scan(u, a, "flat", |s| s.is_free())
}

/// Flat, and `am ≠ a` for every maximal `m`.
pub fn is_faithfully_flat<U: RingUniverse>(u: &U, a: &U::Module) -> Result<PropertyVerdict> {
    let flat = is_flat(u, a)?;
    if !flat.holds {
        return Ok(PropertyVerdict { name: "faithfully_flat".into(), ..flat }.note("not flat"));
    }
    for m in u.relevant_maximals(&[a])? {
        if &u.product(a, &u.maximal_ideal(&m))? == a {
            return Ok(PropertyVerdict::new("faithfully_flat", false)
                .with_witness(Witness::Maximal { ideal: u.describe_maximal(&m) })
                .note("am = a"));
        }
    }
    Ok(PropertyVerdict::new("faithfully_flat", true))
}

/// The ideal contains a non-zero-divisor of `A`.
pub fn is_regular_ideal<U: RingUniverse>(u: &U, a: &U::Module) -> PropertyVerdict {
    match u.regular_element(a) {
        Some(x) => PropertyVerdict::new("regular", true).with_witness(Witness::Element { value: u.describe_element(&x) }),
        None => PropertyVerdict::new("regular", false),
    }
}
