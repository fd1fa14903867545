//! The poset of proper `B`-regular ideals under inclusion, with `Γ` the
//! finitely generated ones, and the three claims that make it satisfy the
//! hypotheses of the finiteness theorem.

use super::order::FinitePoset;
use crate::error::{AlgebraError, Result};
use crate::props::{is_b_regular, PropertyVerdict, RingUniverse, Witness};
use crate::prufer::PruferUniverse;

#[derive(Debug, Clone)]
pub struct RegularIdealPoset<M> {
    pub poset: FinitePoset,
    pub ideals: Vec<M>,
    /// `Max_⊆(Ω) = Max(A) ∩ Ω`, the sum realizing (b), and the refinement
    /// realizing (c).
    pub claims: Vec<PropertyVerdict>,
}

impl<M> RegularIdealPoset<M> {
    pub fn claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// Builds `(Ω, ⊆, Γ)` over the bounded regular ideals and re-checks the claims.
pub fn build_regular_ideal_poset<U: PruferUniverse>(u: &U, bound: u64) -> Result<RegularIdealPoset<U::Module>> {
    let mut ideals: Vec<U::Module> = Vec::new();
    for s in u.bounded_regular_ideals(bound)? {
        if !ideals.contains(&s) {
            ideals.push(s);
        }
    }
    if ideals.is_empty() && !u.is_finite_universe() {
        return Err(AlgebraError::BoundTooSmall(bound));
    }
    let n = ideals.len();
    let labels: Vec<String> = ideals.iter().map(|s| u.describe_module(s)).collect();
    let leq: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| u.is_subset(&ideals[x], &ideals[y])).collect()).collect();
    let gamma: Vec<usize> = (0..n).filter(|&x| u.generators(&ideals[x]).is_some()).collect();
    let poset = FinitePoset::from_relation(labels, &leq, &gamma)?;
    if n == 0 {
        let empty = |name: &str| PropertyVerdict::new(name, true).vacuous(true).note("Ω is empty");
        let claims = vec![empty("claim_maximal"), empty("claim_sum"), empty("claim_refinement")];
        return Ok(RegularIdealPoset { poset, ideals, claims });
    }
    let claims = vec![claim_maximal(u, &poset, &ideals), claim_sum(u, &poset, &ideals)?, claim_refinement(u, &poset, &ideals)?];
    Ok(RegularIdealPoset { poset, ideals, claims })
}

fn claim_maximal<U: PruferUniverse>(u: &U, p: &FinitePoset, ideals: &[U::Module]) -> PropertyVerdict {
    let maximal = p.maximal_elements();
    for x in 0..p.len() {
        if maximal.contains(&x) != u.is_maximal_ideal(&ideals[x]) {
            return PropertyVerdict::new("claim_maximal", false).with_witness(Witness::Text { value: p.label(x).into() });
        }
    }
    PropertyVerdict::new("claim_maximal", true).note(format!("{} maximal elements", maximal.len()))
}

fn claim_sum<U: RingUniverse>(u: &U, p: &FinitePoset, ideals: &[U::Module]) -> Result<PropertyVerdict> {
    let mut checked = 0;
    for a1 in p.gamma().ones() {
        for a2 in p.gamma().ones().filter(|&a2| a2 >= a1) {
            let mut tops = p.upper_set(a1).clone();
            tops.intersect_with(p.upper_set(a2));
            if tops.count_ones(..) == 0 {
                continue;
            }
            let sum = u.sum(&ideals[a1], &ideals[a2])?;
            let Some(s) = ideals.iter().position(|x| *x == sum) else {
                return Ok(PropertyVerdict::new("claim_sum", false)
                    .with_witness(Witness::Tuple { items: vec![p.label(a1).into(), p.label(a2).into()] })
                    .note("a₁ + a₂ falls outside the bounded Ω"));
            };
            checked += 1;
            if !p.in_gamma(s) || !tops.ones().all(|top| p.leq(s, top)) {
                return Ok(PropertyVerdict::new("claim_sum", false)
                    .with_witness(Witness::Tuple { items: vec![p.label(a1).into(), p.label(a2).into()] }));
            }
        }
    }
    Ok(PropertyVerdict::new("claim_sum", true).note(format!("{checked} pairs")))
}

fn claim_refinement<U: RingUniverse>(u: &U, p: &FinitePoset, ideals: &[U::Module]) -> Result<PropertyVerdict> {
    let a = u.ring_a();
    let b = u.ring_b();
    let mut checked = 0;
    for b1 in 0..p.len() {
        for b2 in b1 + 1..p.len() {
            if !p.are_comaximal(b1, b2) {
                continue;
            }
            let fail = || {
                Ok(PropertyVerdict::new("claim_refinement", false)
                    .with_witness(Witness::Tuple { items: vec![p.label(b1).into(), p.label(b2).into()] }))
            };
            let (i1, i2) = (&ideals[b1], &ideals[b2]);
            if u.sum(i1, i2)? != a {
                return fail();
            }
            let Some((beta1, beta2)) = u.comaximal_split(i1, i2) else { return fail() };
            let refine = |ideal: &U::Module, beta: U::Element| -> Option<U::Module> {
                let mut gens = vec![beta];
                gens.extend(u.unit_certificate(ideal, &b)?.into_iter().map(|(alpha, _)| alpha));
                Some(u.generated(&gens))
            };
            let (Some(r1), Some(r2)) = (refine(i1, beta1), refine(i2, beta2)) else { return fail() };
            let ok = u.is_subset(&r1, i1)
                && u.is_subset(&r2, i2)
                && is_b_regular(u, &r1)?.holds
                && is_b_regular(u, &r2)?.holds
                && u.sum(&r1, &r2)? == a;
            if !ok {
                return fail();
            }
            checked += 1;
        }
    }
    Ok(PropertyVerdict::new("claim_refinement", true).note(format!("{checked} comaximal pairs")))
}
