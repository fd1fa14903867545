//! Ring extensions `A ⊆ B` of finite rings and `A`-submodules of `B`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::localize::Localization;
use super::ring::FiniteRing;
use super::span::Span;
use crate::error::{AlgebraError, Result};

const NOT_IN_A: u32 = u32::MAX;

/// A ring extension `A ⊆ B` sharing ambient and identity.
pub struct Extension {
    a: Arc<FiniteRing>,
    b: Arc<FiniteRing>,
    /// `A`-index → `B`-index
    embed: Vec<usize>,
    /// `B`-index → `A`-index, `NOT_IN_A` outside `A`
    back: Vec<u32>,
    /// additive generators of `A`, as `B`-indices
    scalars: Vec<usize>,
    pub(crate) local_cache: OnceLock<Vec<Localization>>,
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extension(|A| = {}, |B| = {})", self.a.size(), self.b.size())
    }
}

impl PartialEq for Extension {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.a == other.a && self.b == other.b)
    }
}

impl Extension {
    pub fn new(a: Arc<FiniteRing>, b: Arc<FiniteRing>) -> Result<Arc<Self>> {
        if a.ambient() != b.ambient() || !b.contains_ring(&a) {
            return Err(AlgebraError::NotSubring);
        }
        let embed: Vec<usize> = a.elements().iter().map(|e| b.index_of(e).unwrap()).collect();
        let mut back = vec![NOT_IN_A; b.size()];
        for (i, &j) in embed.iter().enumerate() {
            back[j] = i as u32;
        }
        let scalars = a.additive_generators().iter().map(|&i| embed[i]).collect();
        Ok(Arc::new(Self { a, b, embed, back, scalars, local_cache: OnceLock::new() }))
    }

    /// The trivial extension `A ⊆ A`, home of the ideals of `A`.
    pub fn trivial(a: Arc<FiniteRing>) -> Arc<Self> {
        Self::new(a.clone(), a).expect("a ring contains itself")
    }

    pub fn a(&self) -> &Arc<FiniteRing> {
        &self.a
    }

    pub fn b(&self) -> &Arc<FiniteRing> {
        &self.b
    }

    pub fn embed(&self, a_idx: usize) -> usize {
        self.embed[a_idx]
    }

    /// `A`-index of a `B`-element lying in `A`.
    pub fn in_a(&self, b_idx: usize) -> Option<usize> {
        let v = self.back[b_idx];
        (v != NOT_IN_A).then_some(v as usize)
    }

    pub fn a_set_in_b(&self, a_set: &FixedBitSet) -> FixedBitSet {
        self.b.set_from(a_set.ones().map(|i| self.embed[i]))
    }

    pub(crate) fn scalars(&self) -> &[usize] {
        &self.scalars
    }
}

/// An `A`-submodule of `B`: the members of `B` reachable from the generators
/// by addition and multiplication with elements of `A`.
#[derive(Clone)]
pub struct Submodule {
    ext: Arc<Extension>,
    generators: Vec<usize>,
    members: FixedBitSet,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{{")?;
        let els: Vec<String> = self.members.ones().map(|i| self.ext.b.display(i)).collect();
        write!(f, "{}}}", els.join(", "))
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext && self.members == other.members
    }
}

impl Eq for Submodule {}

/// Largest `|S|·|A|` for which a single generator is searched for.
const PRINCIPAL_SEARCH_BUDGET: usize = 1 << 16;

impl Submodule {
    /// The `A`-module closure of `generators` (indices into `B`).
    pub fn closure(ext: &Arc<Extension>, generators: &[usize]) -> Self {
        let b = &ext.b;
        let mut span = Span::zero(b.size(), b.zero());
        let mut kept = Vec::new();
        for &g in generators {
            if span.contains(g) {
                continue;
            }
            kept.push(g);
            for &s in ext.scalars() {
                span.insert(b.mul(s, g), |x, y| b.add(x, y));
            }
        }
        Self { ext: ext.clone(), generators: kept, members: span.bits }
    }

    /// Closure that records the generator list verbatim; certificates refer
    /// to generators by position.
    pub fn with_generators(ext: &Arc<Extension>, generators: Vec<usize>) -> Self {
        let mut m = Self::closure(ext, &generators);
        m.generators = generators;
        m
    }

    /// A submodule from a member set already known to be closed.
    pub(crate) fn from_members(ext: &Arc<Extension>, members: FixedBitSet) -> Self {
        let b = &ext.b;
        let a = &ext.a;
        let count = members.count_ones(..);
        if count > 1 && count * a.size() <= PRINCIPAL_SEARCH_BUDGET {
            let principal = members.ones().find(|&x| {
                let mut orbit = FixedBitSet::with_capacity(b.size());
                orbit.extend((0..a.size()).map(|c| b.mul(ext.embed(c), x)));
                orbit.count_ones(..) == count
            });
            if let Some(x) = principal {
                return Self { ext: ext.clone(), generators: vec![x], members };
            }
        }
        let mut span = Span::zero(b.size(), b.zero());
        let mut gens = Vec::new();
        for x in members.ones() {
            if span.contains(x) {
                continue;
            }
            gens.push(x);
            for &s in ext.scalars() {
                span.insert(b.mul(s, x), |x, y| b.add(x, y));
            }
        }
        debug_assert_eq!(span.bits, members, "member set is not an A-submodule");
        Self { ext: ext.clone(), generators: gens, members }
    }

    pub fn zero(ext: &Arc<Extension>) -> Self {
        Self::closure(ext, &[])
    }

    /// `A` itself, as a submodule of `B`.
    pub fn ring_a(ext: &Arc<Extension>) -> Self {
        Self::closure(ext, &[ext.b.one()])
    }

    /// `B` as an `A`-module.
    pub fn ring_b(ext: &Arc<Extension>) -> Self {
        Self::from_members(ext, ext.b.set_from(0..ext.b.size()))
    }

    /// An ideal of `A` given by a member set over `A`-indices.
    pub fn ideal_from_a_set(ext: &Arc<Extension>, a_set: &FixedBitSet) -> Self {
        Self::from_members(ext, ext.a_set_in_b(a_set))
    }

    pub fn extension(&self) -> &Arc<Extension> {
        &self.ext
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, b_idx: usize) -> bool {
        self.members.contains(b_idx)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    /// True when every member lies in `A`, i.e. this is an ideal of `A`.
    pub fn is_ideal(&self) -> bool {
        self.members.ones().all(|i| self.ext.in_a(i).is_some())
    }

    /// Member set over `A`-indices; `None` unless this is an ideal.
    pub fn a_set(&self) -> Option<FixedBitSet> {
        let mut bits = FixedBitSet::with_capacity(self.ext.a.size());
        for i in self.members.ones() {
            bits.insert(self.ext.in_a(i)?);
        }
        Some(bits)
    }

    fn same_owner(&self, other: &Submodule) -> Result<()> {
        if self.ext == other.ext {
            Ok(())
        } else {
            Err(AlgebraError::MixedOwners)
        }
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_owner(other)?;
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ok(Self::closure(&self.ext, &gens))
    }

    /// Product `S·T`, spanned by the pairwise products of generators.
    pub fn product(&self, other: &Submodule) -> Result<Submodule> {
        self.same_owner(other)?;
        let b = &self.ext.b;
        let gens: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|&s| other.generators.iter().map(move |&t| b.mul(s, t)))
            .collect();
        Ok(Self::closure(&self.ext, &gens))
    }

    /// `[S : T] = { x ∈ B : xT ⊆ S }`.
    pub fn colon(&self, other: &Submodule) -> Result<Submodule> {
        self.same_owner(other)?;
        let b = &self.ext.b;
        let members = b.set_from(
            (0..b.size()).filter(|&x| other.generators.iter().all(|&t| self.contains(b.mul(x, t)))),
        );
        Ok(Self::from_members(&self.ext, members))
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        self.same_owner(other)?;
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ok(Self::from_members(&self.ext, members))
    }

    /// `S ∩ A`.
    pub fn intersect_a(&self) -> Submodule {
        let members = self.ext.b.set_from(self.members.ones().filter(|&i| self.ext.in_a(i).is_some()));
        Self::from_members(&self.ext, members)
    }

    /// Display as a set of elements.
    pub fn describe(&self) -> String {
        let b = &self.ext.b;
        let gens: Vec<String> = self.generators.iter().map(|&g| b.display(g)).collect();
        format!("<{}> ({} elements)", gens.join(", "), self.size())
    }
}

/// Additive span of `vectors` with a predecessor tree, so that any member can
/// be written as an explicit sum of vectors.
pub(crate) struct TrackedSpan {
    parent: Vec<Option<(usize, usize)>>,
    zero: usize,
}

impl TrackedSpan {
    pub fn build(ring: &FiniteRing, vectors: &[usize]) -> Self {
        let n = ring.size();
        let mut parent = vec![None; n];
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(ring.zero());
        let mut queue = std::collections::VecDeque::from([ring.zero()]);
        while let Some(x) = queue.pop_front() {
            for (k, &v) in vectors.iter().enumerate() {
                let y = ring.add(x, v);
                if !seen.contains(y) {
                    seen.insert(y);
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        Self { parent, zero: ring.zero() }
    }

    /// Multiplicity of each vector in a sum equal to `target`.
    pub fn express(&self, target: usize, vector_count: usize) -> Option<Vec<usize>> {
        let mut counts = vec![0usize; vector_count];
        let mut cur = target;
        while cur != self.zero {
            let (prev, k) = self.parent[cur]?;
            counts[k] += 1;
            cur = prev;
        }
        Some(counts)
    }
}
