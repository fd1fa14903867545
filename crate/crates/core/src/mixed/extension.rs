//! The extension `A = A_1 × … × A_r × A_F ⊆ B = Q^r × B_F`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::slot::{format_q, SlotFlavor, SlotModule, Q};
use crate::error::{AlgebraError, Result};
use fixedbitset::FixedBitSet;

use crate::finite::{localize_submodule, Extension, FiniteRing, PrimeSpot, Submodule};

/// Bounds of the ideal sweep the laws quantify over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    /// Every slot value `0..=exhaustive` is included.
    pub exhaustive: u64,
    /// Number of additional seeded samples per slot.
    pub samples: usize,
    pub sample_bound: u64,
    /// Maximum number of prime factors, with multiplicity, of a sample.
    pub max_prime_factors: u32,
    pub seed: u64,
    /// Cap on the number of swept ideals.
    pub max_ideals: usize,
}

impl Default for SweepBounds {
    fn default() -> Self {
        Self { exhaustive: 30, samples: 24, sample_bound: 10_000, max_prime_factors: 3, seed: 0, max_ideals: 400 }
    }
}

/// The ring `A_1 × … × A_r × F`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedRing {
    pub slots: Vec<SlotFlavor>,
    pub tail: Arc<FiniteRing>,
}

impl MixedRing {
    pub fn new(slots: Vec<SlotFlavor>, tail: Arc<FiniteRing>) -> Self {
        Self { slots, tail }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.slots.iter().map(|f| f.to_string()).collect();
        if self.tail.ambient().width() > 0 {
            parts.push(format!("F({})", self.tail.size()));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" × ")
        }
    }
}

/// An element of `B = Q^r × B_F`; `tail` indexes `B_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedElement {
    pub slots: Vec<Q>,
    pub tail: usize,
}

/// A maximal ideal of `A`: a prime of one slot (all other factors full), or a
/// maximal ideal of the tail. Prime `0` denotes the zero ideal of a `Q` slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedMaximal {
    Slot { slot: usize, prime: u64 },
    Tail(PrimeSpot),
}

/// An `A`-submodule of `B`, stored slotwise. `presentation` is an optional
/// generating set; equality ignores it.
#[derive(Clone)]
pub struct MixedIdeal {
    pub slots: Vec<SlotModule>,
    pub tail: Submodule,
    pub presentation: Vec<MixedElement>,
}

impl PartialEq for MixedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots && self.tail == other.tail
    }
}

impl fmt::Debug for MixedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedIdeal({:?}, {:?})", self.slots, self.tail)
    }
}

/// `A ⊆ B` in the mixed universe.
#[derive(Debug)]
pub struct MixedExtension {
    ring: MixedRing,
    tail: Arc<Extension>,
    pub sweep: SweepBounds,
}

impl MixedExtension {
    pub fn new(slots: Vec<SlotFlavor>, tail: Arc<Extension>) -> Self {
        let ring = MixedRing::new(slots, tail.a().clone());
        Self { ring, tail, sweep: SweepBounds::default() }
    }

    pub fn with_sweep(mut self, sweep: SweepBounds) -> Self {
        self.sweep = sweep;
        self
    }

    pub fn ring(&self) -> &MixedRing {
        &self.ring
    }

    pub fn flavors(&self) -> &[SlotFlavor] {
        &self.ring.slots
    }

    pub fn rank(&self) -> usize {
        self.ring.slots.len()
    }

    pub fn tail(&self) -> &Arc<Extension> {
        &self.tail
    }

    pub fn describe(&self) -> String {
        let b_slots = vec!["Q"; self.rank()];
        let mut b = b_slots.join(" × ");
        if self.tail.b().ambient().width() > 0 {
            if !b.is_empty() {
                b.push_str(" × ");
            }
            b.push_str(&format!("F({})", self.tail.b().size()));
        }
        format!("{} ⊆ {}", self.ring.describe(), if b.is_empty() { "0".into() } else { b })
    }

    // elements

    pub fn element(&self, slots: Vec<Q>, tail: usize) -> Result<MixedElement> {
        if slots.len() != self.rank() || tail >= self.tail.b().size() {
            return Err(AlgebraError::InvalidElement(format!("{slots:?} / tail index {tail}")));
        }
        Ok(MixedElement { slots, tail })
    }

    pub fn one(&self) -> MixedElement {
        MixedElement { slots: vec![Q::one(); self.rank()], tail: self.tail.b().one() }
    }

    pub fn zero(&self) -> MixedElement {
        MixedElement { slots: vec![Q::zero(); self.rank()], tail: self.tail.b().zero() }
    }

    /// The element with `x` in slot `i` and zero elsewhere.
    pub fn slot_element(&self, i: usize, x: Q) -> MixedElement {
        let mut e = self.zero();
        e.slots[i] = x;
        e
    }

    pub fn tail_element(&self, t: usize) -> MixedElement {
        MixedElement { tail: t, ..self.zero() }
    }

    pub fn add(&self, x: &MixedElement, y: &MixedElement) -> MixedElement {
        MixedElement {
            slots: x.slots.iter().zip(&y.slots).map(|(a, b)| a + b).collect(),
            tail: self.tail.b().add(x.tail, y.tail),
        }
    }

    pub fn mul(&self, x: &MixedElement, y: &MixedElement) -> MixedElement {
        MixedElement {
            slots: x.slots.iter().zip(&y.slots).map(|(a, b)| a * b).collect(),
            tail: self.tail.b().mul(x.tail, y.tail),
        }
    }

    pub fn in_a(&self, x: &MixedElement) -> bool {
        self.flavors().iter().zip(&x.slots).all(|(f, q)| f.contains(q)) && self.tail.in_a(x.tail).is_some()
    }

    /// Non-zero-divisor of `A` (an element of `A`).
    pub fn is_regular(&self, x: &MixedElement) -> bool {
        self.in_a(x)
            && x.slots.iter().all(|q| !q.is_zero())
            && self.tail.in_a(x.tail).is_some_and(|i| self.tail.a().is_regular(i))
    }

    pub fn display(&self, x: &MixedElement) -> String {
        let mut parts: Vec<String> = x.slots.iter().map(format_q).collect();
        let width = self.tail.b().ambient().width();
        if width > 0 {
            let t = self.tail.b().display(x.tail);
            parts.push(t.trim_start_matches('(').trim_end_matches(')').to_string());
        }
        match parts.len() {
            1 if width == 0 => parts.pop().unwrap(),
            _ if width > 0 && !x.slots.is_empty() => {
                let tail = parts.pop().unwrap();
                format!("({} | {})", parts.join(", "), tail)
            }
            _ => format!("({})", parts.join(", ")),
        }
    }

    // modules

    fn module(&self, slots: Vec<SlotModule>, tail: Submodule) -> MixedIdeal {
        MixedIdeal { slots, tail, presentation: Vec::new() }
    }

    pub fn ring_a(&self) -> MixedIdeal {
        let slots = self.flavors().iter().map(|f| SlotModule::fractional(f, &Q::one())).collect();
        self.module(slots, Submodule::ring_a(&self.tail))
    }

    pub fn ring_b(&self) -> MixedIdeal {
        let slots = self.flavors().iter().map(SlotModule::everything).collect();
        self.module(slots, Submodule::ring_b(&self.tail))
    }

    pub fn zero_module(&self) -> MixedIdeal {
        self.module(vec![SlotModule::Zero; self.rank()], Submodule::zero(&self.tail))
    }

    /// The module generated by `gens`, keeping them as its presentation.
    pub fn generated(&self, gens: &[MixedElement]) -> MixedIdeal {
        let slots = (0..self.rank())
            .map(|i| {
                let f = &self.flavors()[i];
                gens.iter().fold(SlotModule::Zero, |acc, g| acc.sum(f, &SlotModule::fractional(f, &g.slots[i])))
            })
            .collect();
        let tail_gens: Vec<usize> = gens.iter().map(|g| g.tail).collect();
        MixedIdeal { slots, tail: Submodule::closure(&self.tail, &tail_gens), presentation: gens.to_vec() }
    }

    /// The ideal `∏ qᵢA_i × a_F` from slot values and tail generators.
    pub fn ideal(&self, values: &[Q], tail_gens: &[usize]) -> Result<MixedIdeal> {
        if values.len() != self.rank() {
            return Err(AlgebraError::MixedOwners);
        }
        let slots = self.flavors().iter().zip(values).map(|(f, q)| SlotModule::fractional(f, q)).collect();
        Ok(self.module(slots, Submodule::closure(&self.tail, tail_gens)))
    }

    pub fn from_parts(&self, slots: Vec<SlotModule>, tail: Submodule) -> MixedIdeal {
        self.module(slots, tail)
    }

    /// A finite generating set: the presentation when present, otherwise one
    /// element per nonzero slot plus the tail generators.
    pub fn generators(&self, s: &MixedIdeal) -> Option<Vec<MixedElement>> {
        if !s.presentation.is_empty() {
            return Some(s.presentation.clone());
        }
        let mut out = Vec::new();
        for (i, m) in s.slots.iter().enumerate() {
            match m {
                SlotModule::Zero => {}
                SlotModule::Fractional(q) => out.push(self.slot_element(i, *q)),
                SlotModule::Everything => return None,
            }
        }
        out.extend(s.tail.generators().iter().map(|&t| self.tail_element(t)));
        Some(out)
    }

    fn check(&self, s: &MixedIdeal) -> Result<()> {
        if s.slots.len() != self.rank() || s.tail.extension().as_ref() != self.tail.as_ref() {
            return Err(AlgebraError::MixedOwners);
        }
        Ok(())
    }

    fn zip(
        &self,
        s: &MixedIdeal,
        t: &MixedIdeal,
        f: impl Fn(&SlotFlavor, &SlotModule, &SlotModule) -> SlotModule,
    ) -> Result<Vec<SlotModule>> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.flavors().iter().zip(s.slots.iter().zip(&t.slots)).map(|(fl, (a, b))| f(fl, a, b)).collect())
    }

    pub fn sum(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        let slots = self.zip(s, t, |f, a, b| a.sum(f, b))?;
        let mut out = self.module(slots, s.tail.sum(&t.tail)?);
        if let (Some(gs), Some(gt)) = (self.generators(s), self.generators(t)) {
            out.presentation = gs.into_iter().chain(gt).collect();
        }
        Ok(out)
    }

    pub fn product(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        let slots = self.zip(s, t, |f, a, b| a.product(f, b))?;
        let mut out = self.module(slots, s.tail.product(&t.tail)?);
        if let (Some(gs), Some(gt)) = (self.generators(s), self.generators(t)) {
            out.presentation = gs.iter().flat_map(|x| gt.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        }
        Ok(out)
    }

    pub fn colon(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        let slots = self.zip(s, t, |f, a, b| a.colon(f, b))?;
        Ok(self.module(slots, s.tail.colon(&t.tail)?))
    }

    pub fn intersection(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        let slots = self.zip(s, t, |f, a, b| a.intersection(f, b))?;
        Ok(self.module(slots, s.tail.intersection(&t.tail)?))
    }

    pub fn intersect_a(&self, s: &MixedIdeal) -> MixedIdeal {
        self.intersection(s, &self.ring_a()).expect("same extension")
    }

    pub fn is_subset(&self, s: &MixedIdeal, t: &MixedIdeal) -> bool {
        self.flavors().iter().zip(s.slots.iter().zip(&t.slots)).all(|(f, (a, b))| a.is_subset(f, b))
            && s.tail.is_subset(&t.tail)
    }

    pub fn is_ideal(&self, s: &MixedIdeal) -> bool {
        self.flavors().iter().zip(&s.slots).all(|(f, m)| m.is_integral(f)) && s.tail.is_ideal()
    }

    pub fn contains(&self, s: &MixedIdeal, x: &MixedElement) -> bool {
        self.flavors().iter().zip(s.slots.iter().zip(&x.slots)).all(|(f, (m, q))| m.contains(f, q))
            && s.tail.contains(x.tail)
    }

    pub fn describe_module(&self, s: &MixedIdeal) -> String {
        let mut parts: Vec<String> =
            self.flavors().iter().zip(&s.slots).map(|(f, m)| m.describe(f)).collect();
        if self.tail.b().ambient().width() > 0 {
            parts.push(s.tail.describe());
        }
        parts.join(" × ")
    }

    pub fn describe_maximal(&self, m: &MixedMaximal) -> String {
        match m {
            MixedMaximal::Slot { slot, prime } => {
                let f = &self.flavors()[*slot];
                if *prime == 0 {
                    format!("0 in slot {slot} ({f})")
                } else {
                    format!("{prime}{f} in slot {slot}")
                }
            }
            MixedMaximal::Tail(spot) => format!("tail {}", spot.describe(self.tail.a())),
        }
    }
}

/// `a·A_M`: the `p`-adic valuation of the slot value at a slot prime (`None`
/// for the zero ideal), or the localized tail ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedLocalIdeal {
    Slot { valuation: Option<i32> },
    Tail(FixedBitSet),
}

impl MixedExtension {
    pub fn localize_ideal(&self, a: &MixedIdeal, m: &MixedMaximal) -> Result<MixedLocalIdeal> {
        if !self.is_ideal(a) {
            return Err(AlgebraError::NotIntegral);
        }
        match m {
            MixedMaximal::Slot { slot, prime } => {
                let f = self.flavors().get(*slot).ok_or(AlgebraError::NotMaximal)?;
                let admissible = if *prime == 0 { *f == SlotFlavor::Rationals } else { f.admits(*prime) };
                if !admissible {
                    return Err(AlgebraError::NotMaximal);
                }
                Ok(MixedLocalIdeal::Slot { valuation: a.slots[*slot].valuation(*prime) })
            }
            MixedMaximal::Tail(spot) => Ok(MixedLocalIdeal::Tail(localize_submodule(&a.tail, &spot.members)?)),
        }
    }
}

/// `T(A) = Q^r × F` for `A = A_1 × … × A_r × F`: the non-zero-divisors of a
/// finite ring are already units.
pub fn total_quotient_ring(ring: &MixedRing) -> MixedExtension {
    MixedExtension::new(ring.slots.clone(), Extension::trivial(ring.tail.clone()))
}
