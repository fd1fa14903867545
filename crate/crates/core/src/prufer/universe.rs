//! [`PruferUniverse`]: the generalized-localization layer on top of
//! [`RingUniverse`].

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::One;

use super::valuation::{is_manis_pair_finite, is_manis_pair_slot};
use crate::error::Result;
use crate::finite::localize::cleared_by;
use crate::finite::{self, localizations_agree, maximal_ideals, Extension, PrimeSpot, Submodule};
use crate::mixed::{MixedElement, MixedExtension, MixedIdeal, MixedMaximal, SlotFlavor, SlotModule, Q};
use crate::props::{is_b_regular, PropertyVerdict, RingUniverse, Witness};

pub trait PruferUniverse: RingUniverse {
    /// `Max(A)` when it is finite; otherwise one maximal ideal of every
    /// behavior under generalized localization.
    fn representative_maximals(&self) -> Result<Vec<Self::Maximal>>;
    /// An element of `B ∖ A_[m]`, if any.
    fn outside_generalized_localization(&self, m: &Self::Maximal) -> Result<Option<Self::Element>>;
    /// The Manis criterion for `(A_[m], m_[m])` in `B`.
    fn manis_at(&self, m: &Self::Maximal) -> Result<PropertyVerdict>;
    /// `A_m = B_{A∖m}` computed through fraction rings, where available.
    fn localizations_agree_at(&self, _m: &Self::Maximal) -> Option<bool> {
        None
    }
    /// Proper `B`-regular ideals of `A` with every slot value at most `bound`.
    fn bounded_regular_ideals(&self, bound: u64) -> Result<Vec<Self::Module>>;
    fn is_maximal_ideal(&self, a: &Self::Module) -> bool;
}

impl PruferUniverse for Arc<Extension> {
    fn representative_maximals(&self) -> Result<Vec<PrimeSpot>> {
        Ok(maximal_ideals(self.a()))
    }

    fn outside_generalized_localization(&self, m: &PrimeSpot) -> Result<Option<usize>> {
        let inside = generalized_localization_set(self, &m.members);
        let b = self.b();
        let mut idempotents = b.primitive_idempotents();
        idempotents.sort_by_key(|&e| (b.element(e).0.iter().position(|&c| c != 0), e));
        Ok(idempotents
            .into_iter()
            .find(|&e| !inside.contains(e))
            .or_else(|| (0..b.size()).find(|&x| !inside.contains(x))))
    }

    fn manis_at(&self, m: &PrimeSpot) -> Result<PropertyVerdict> {
        let ring = generalized_localization_set(self, &m.members);
        let prime = finite::generalized_localization_ideal(self, &m.members)?;
        is_manis_pair_finite(self.b(), &ring, &prime)
    }

    fn localizations_agree_at(&self, m: &PrimeSpot) -> Option<bool> {
        Some(localizations_agree(self, &m.members))
    }

    fn bounded_regular_ideals(&self, _bound: u64) -> Result<Vec<Submodule>> {
        let a = Submodule::ring_a(self);
        let mut out = Vec::new();
        for s in self.ideal_sweep()? {
            if s != a && is_b_regular(self, &s)?.holds {
                out.push(s);
            }
        }
        Ok(out)
    }

    fn is_maximal_ideal(&self, a: &Submodule) -> bool {
        a.a_set().is_some_and(|set| finite::is_maximal_ideal(self.a(), &set))
    }
}

fn generalized_localization_set(ext: &Extension, p: &FixedBitSet) -> FixedBitSet {
    let a_in_b = ext.a_set_in_b(&ext.a().set_from(0..ext.a().size()));
    cleared_by(ext, p, &a_in_b)
}

impl PruferUniverse for MixedExtension {
    fn representative_maximals(&self) -> Result<Vec<MixedMaximal>> {
        let mut out = Vec::new();
        for (i, f) in self.flavors().iter().enumerate() {
            let primes: Vec<u64> = match f {
                SlotFlavor::Rationals => vec![0],
                SlotFlavor::LocalAt(p) => vec![*p],
                _ => {
                    let mut used = Vec::new();
                    for _ in 0..3 {
                        used.push(f.generic_prime(&used));
                    }
                    used
                }
            };
            out.extend(primes.into_iter().map(|prime| MixedMaximal::Slot { slot: i, prime }));
        }
        out.extend(maximal_ideals(self.tail().a()).into_iter().map(MixedMaximal::Tail));
        Ok(out)
    }

    fn outside_generalized_localization(&self, m: &MixedMaximal) -> Result<Option<MixedElement>> {
        Ok(match m {
            // A_[m] is Z_(p) in the slot and B elsewhere
            MixedMaximal::Slot { prime: 0, .. } => None,
            MixedMaximal::Slot { slot, prime } => Some(self.slot_element(*slot, Q::new(1, *prime as i128))),
            MixedMaximal::Tail(spot) => {
                self.tail().outside_generalized_localization(spot)?.map(|t| self.tail_element(t))
            }
        })
    }

    fn manis_at(&self, m: &MixedMaximal) -> Result<PropertyVerdict> {
        match m {
            MixedMaximal::Slot { slot, prime } => {
                let local = if *prime == 0 { SlotFlavor::Rationals } else { SlotFlavor::LocalAt(*prime) };
                let verdict = is_manis_pair_slot(&local, *prime)?;
                Ok(match verdict.witness.clone() {
                    Some(Witness::Element { value }) => {
                        verdict.with_witness(Witness::Element { value: format!("slot {slot}: {value}") })
                    }
                    _ => verdict,
                })
            }
            MixedMaximal::Tail(spot) => self.tail().manis_at(spot),
        }
    }

    fn bounded_regular_ideals(&self, bound: u64) -> Result<Vec<MixedIdeal>> {
        let per_slot: Vec<Vec<SlotModule>> = self
            .flavors()
            .iter()
            .map(|f| {
                let mut values: Vec<SlotModule> = Vec::new();
                for n in 1..=bound.max(1) {
                    let m = SlotModule::fractional(f, &Q::from_integer(n as i128));
                    if !values.contains(&m) {
                        values.push(m);
                    }
                }
                values
            })
            .collect();
        let tails = self.tail().bounded_regular_ideals(bound)?;
        let mut tails = tails;
        tails.insert(0, Submodule::ring_a(self.tail()));
        let a = self.ring_a();
        let mut out = Vec::new();
        let total: usize = per_slot.iter().map(Vec::len).product::<usize>() * tails.len();
        for k in 0..total {
            let mut rest = k;
            let t = rest % tails.len();
            rest /= tails.len();
            let mut slots = Vec::with_capacity(self.rank());
            for values in &per_slot {
                slots.push(values[rest % values.len()].clone());
                rest /= values.len();
            }
            let ideal = self.from_parts(slots, tails[t].clone());
            if ideal != a {
                out.push(ideal);
            }
        }
        Ok(out)
    }

    fn is_maximal_ideal(&self, a: &MixedIdeal) -> bool {
        let mut proper = Vec::new();
        for (i, (f, m)) in self.flavors().iter().zip(&a.slots).enumerate() {
            let full = m.contains(f, &Q::one());
            if !full {
                let maximal = match (f, m) {
                    (SlotFlavor::Rationals, SlotModule::Zero) => true,
                    (_, SlotModule::Fractional(q)) => {
                        q.is_integer() && crate::arith::is_prime(q.numer().unsigned_abs() as u64) && f.admits(q.numer().unsigned_abs() as u64)
                    }
                    _ => false,
                };
                if !maximal {
                    return false;
                }
                proper.push(i);
            }
        }
        let tail_full = a.tail == Submodule::ring_a(self.tail());
        match (proper.len(), tail_full) {
            (1, true) => true,
            (0, false) => self.tail().is_maximal_ideal(&a.tail),
            _ => false,
        }
    }
}
