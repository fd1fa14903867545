//! Finite generation of a `B`-regular ideal from local generators, assuming
//! finite character.

use crate::error::{AlgebraError, Result};
use crate::finite::ideals::next_combination;
use crate::props::{is_b_regular, RingUniverse};

#[derive(Debug, Clone)]
pub struct FiniteGenerators<U: RingUniverse> {
    /// A finitely generated `B`-regular ideal inside `a`.
    pub a0: U::Module,
    /// For each `mᵢ ∈ V(a)`, an ideal `aᵢ ⊆ a` with `aᵢA_mᵢ = aA_mᵢ`.
    pub local: Vec<(U::Maximal, U::Module)>,
    /// For each `mⱼ ∈ V(a₀) ∖ V(a)`, an element of `a ∖ mⱼ`.
    pub extra: Vec<(U::Maximal, U::Element)>,
    pub generators: Vec<U::Element>,
    /// `a₀ + Σ aᵢ + (extra)`.
    pub b: U::Module,
}

impl<U: RingUniverse> FiniteGenerators<U> {
    pub fn reproduces(&self, a: &U::Module) -> bool {
        &self.b == a
    }
}

/// The first `B`-regular subset of the generators of `a`, smallest size first.
fn smallest_regular_subideal<U: RingUniverse>(u: &U, a: &U::Module) -> Result<Option<U::Module>> {
    let Some(gens) = u.generators(a) else { return Ok(None) };
    for k in 1..=gens.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let chosen: Vec<U::Element> = idx.iter().map(|&i| gens[i].clone()).collect();
            let sub = u.generated(&chosen);
            if is_b_regular(u, &sub)?.holds {
                return Ok(Some(sub));
            }
            if !next_combination(&mut idx, gens.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Builds `b = a₀ + a₁ + … + a_r + (a_{r+1}, …, a_s)A` and returns its parts.
/// `aᵢ = a·∏ⱼ≠ᵢ mⱼ` over the maximal ideals of `V(a₀)`.
pub fn construct_finite_generators<U: RingUniverse>(
    u: &U,
    a: &U::Module,
    forced_a0: Option<&U::Module>,
) -> Result<FiniteGenerators<U>> {
    if !u.is_ideal(a) || !is_b_regular(u, a)?.holds {
        return Err(AlgebraError::NoRegularSubideal);
    }
    let a0 = match forced_a0 {
        Some(a0) => {
            if !u.is_subset(a0, a) || u.generators(a0).is_none() || !is_b_regular(u, a0)?.holds {
                return Err(AlgebraError::NoRegularSubideal);
            }
            a0.clone()
        }
        None => smallest_regular_subideal(u, a)?.ok_or(AlgebraError::NoRegularSubideal)?,
    };
    let v0 = u.support(&a0)?;
    let v = u.support(a)?;
    let maximal_modules: Vec<U::Module> = v0.iter().map(|m| u.maximal_ideal(m)).collect();

    let mut local = Vec::new();
    let mut extra = Vec::new();
    for (i, m) in v0.iter().enumerate() {
        if v.contains(m) {
            let mut ai = a.clone();
            for (j, mj) in maximal_modules.iter().enumerate() {
                if j != i {
                    ai = u.product(&ai, mj)?;
                }
            }
            local.push((m.clone(), ai));
        } else {
            let x = u.element_outside(a, m).ok_or(AlgebraError::NoRegularSubideal)?;
            extra.push((m.clone(), x));
        }
    }

    let mut generators = u.generators(&a0).unwrap_or_default();
    let mut b = a0.clone();
    for (_, ai) in &local {
        generators.extend(u.generators(ai).ok_or(AlgebraError::NoRegularSubideal)?);
        b = u.sum(&b, ai)?;
    }
    let elements: Vec<U::Element> = extra.iter().map(|(_, x)| x.clone()).collect();
    generators.extend(elements.iter().cloned());
    b = u.sum(&b, &u.generated(&elements))?;
    Ok(FiniteGenerators { a0, local, extra, generators, b })
}
