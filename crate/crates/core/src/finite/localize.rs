//! Localizations of finite rings and generalized localizations in extensions.
//!
//! A finite ring is artinian, so inverting a multiplicative set `S` amounts to
//! dividing by `K_S = { a : sa = 0 for some s ∈ S }`: every `s ∈ S` has an
//! idempotent power `e`, the complement `1 - e` lies in `K_S`, and `s` is
//! invertible modulo `K_S`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::ideals::{as_maximal, as_prime, maximal_ideals, PrimeSpot};
use super::ring::FiniteRing;
use super::submodule::{Extension, Submodule};
use crate::error::{AlgebraError, Result};

/// The ring `R_S = R / K_S` together with its class map.
#[derive(Debug, Clone)]
pub struct Localization {
    base: Arc<FiniteRing>,
    kernel: FixedBitSet,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl Localization {
    /// Localization of `ring` at the multiplicative set `s_set`.
    pub fn at_set(ring: &Arc<FiniteRing>, s_set: &FixedBitSet) -> Self {
        let n = ring.size();
        let kernel = ring.set_from((0..n).filter(|&a| s_set.ones().any(|s| ring.mul(s, a) == ring.zero())));
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for k in kernel.ones() {
                class_of[ring.add(x, k)] = c;
            }
        }
        Self { base: ring.clone(), kernel, class_of, reps }
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn kernel(&self) -> &FixedBitSet {
        &self.kernel
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn class(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn zero(&self) -> usize {
        self.class_of[self.base.zero()]
    }

    pub fn one(&self) -> usize {
        self.class_of[self.base.one()]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.class_of[self.base.add(self.reps[x], self.reps[y])]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.class_of[self.base.mul(self.reps[x], self.reps[y])]
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.size()).find(|&y| self.mul(x, y) == self.one())
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse(x).is_some()
    }

    /// Image of a subset of the base ring, as a set of classes.
    pub fn image(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.extend(set.ones().map(|x| self.class_of[x]));
        bits
    }

    /// The principal ideal `x·R_S`, as a set of classes.
    pub fn principal(&self, x: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.extend((0..self.size()).map(|y| self.mul(x, y)));
        bits
    }

    /// A single generator of the ideal `ideal` (a set of classes), if any.
    pub fn principal_generator(&self, ideal: &FixedBitSet) -> Option<usize> {
        ideal.ones().find(|&x| &self.principal(x) == ideal)
    }

    fn is_nilpotent(&self, x: usize) -> bool {
        let mut t = x;
        for _ in 0..self.size() {
            if t == self.zero() {
                return true;
            }
            t = self.mul(t, x);
        }
        t == self.zero()
    }

    /// Maximal ideals of the quotient, one per primitive idempotent `e`:
    /// `{ x : xe nilpotent }`.
    pub fn maximal_classes(&self) -> Vec<FixedBitSet> {
        let n = self.size();
        let idem: Vec<usize> = (0..n).filter(|&e| e != self.zero() && self.mul(e, e) == e).collect();
        let primitive = idem.iter().copied().filter(|&e| {
            idem.iter().all(|&f| f == e || { let g = self.mul(e, f); g == self.zero() || g == e })
        });
        let mut out: Vec<FixedBitSet> = primitive
            .map(|e| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend((0..n).filter(|&x| self.is_nilpotent(self.mul(x, e))));
                b
            })
            .collect();
        out.sort_by_key(|s| s.ones().collect::<Vec<_>>());
        out
    }
}

/// `A_m` for a maximal ideal `m` of `A`.
pub fn localize(ring: &Arc<FiniteRing>, m: &FixedBitSet) -> Result<Localization> {
    as_maximal(ring, m)?;
    let s_set = complement(ring.size(), m);
    Ok(Localization::at_set(ring, &s_set))
}

/// `a·A_m` for an ideal `a` of `A` (given as a submodule lying in `A`).
pub fn localize_submodule(a: &Submodule, m: &FixedBitSet) -> Result<FixedBitSet> {
    let ext = a.extension();
    let set = a.a_set().ok_or(AlgebraError::NotSubring)?;
    let loc = cached_localization(ext, m)?;
    Ok(loc.image(&set))
}

/// The localization of `A` at `m`, cached on the extension.
pub fn cached_localization<'e>(ext: &'e Arc<Extension>, m: &FixedBitSet) -> Result<&'e Localization> {
    let all = ext.local_cache.get_or_init(|| {
        maximal_ideals(ext.a())
            .iter()
            .map(|spot| Localization::at_set(ext.a(), &complement(ext.a().size(), &spot.members)))
            .collect()
    });
    let pos = maximal_ideals(ext.a())
        .iter()
        .position(|spot| &spot.members == m)
        .ok_or(AlgebraError::NotMaximal)?;
    Ok(&all[pos])
}

pub(crate) fn complement(n: usize, set: &FixedBitSet) -> FixedBitSet {
    let mut c = FixedBitSet::with_capacity(n);
    c.insert_range(..);
    c.difference_with(set);
    c
}

/// `B_{A∖p}`: the localization of `B` at the image of `A ∖ p`.
pub fn localize_b(ext: &Extension, p: &FixedBitSet) -> Localization {
    let s = complement(ext.a().size(), p);
    let s_in_b = ext.a_set_in_b(&s);
    Localization::at_set(ext.b(), &s_in_b)
}

/// Elements `x ∈ B` with `v·x ∈ target` for some `v ∈ A ∖ p`, as a set over `B`.
pub(crate) fn cleared_by(ext: &Extension, p: &FixedBitSet, target: &FixedBitSet) -> FixedBitSet {
    let a = ext.a();
    let b = ext.b();
    let outside: Vec<usize> = (0..a.size()).filter(|&v| !p.contains(v)).map(|v| ext.embed(v)).collect();
    b.set_from((0..b.size()).filter(|&x| outside.iter().any(|&v| target.contains(b.mul(v, x)))))
}

/// The generalized localization `A_[p] = { x ∈ B : (A∖p)·x ∩ A ≠ ∅ }`.
pub fn generalized_localization(ext: &Extension, p: &FixedBitSet) -> Result<FiniteRing> {
    let spot: PrimeSpot = as_prime(ext.a(), p)?;
    let a_in_b = ext.a_set_in_b(&ext.a().set_from(0..ext.a().size()));
    let members = cleared_by(ext, &spot.members, &a_in_b);
    let elements = members.ones().map(|i| ext.b().element(i).clone()).collect();
    FiniteRing::from_elements(ext.b().ambient().clone(), elements)
}

/// `p_[p] = { x ∈ B : (A∖p)·x ∩ p ≠ ∅ }`, as a set over `B`.
pub fn generalized_localization_ideal(ext: &Extension, p: &FixedBitSet) -> Result<FixedBitSet> {
    let spot = as_prime(ext.a(), p)?;
    let p_in_b = ext.a_set_in_b(&spot.members);
    Ok(cleared_by(ext, &spot.members, &p_in_b))
}

/// `j⁻¹(A_p)` computed through the fraction ring `B_{A∖p}`: the elements
/// whose image equals `j(a)·j(s)⁻¹` for some `a ∈ A`, `s ∈ A ∖ p`.
pub fn preimage_of_localization(ext: &Extension, p: &FixedBitSet) -> FixedBitSet {
    let loc = localize_b(ext, p);
    let a = ext.a();
    let mut image = FixedBitSet::with_capacity(loc.size());
    for s in (0..a.size()).filter(|&s| !p.contains(s)) {
        let inv = loc
            .inverse(loc.class(ext.embed(s)))
            .expect("elements of A∖p become units in B_{A∖p}");
        for x in 0..a.size() {
            image.insert(loc.mul(loc.class(ext.embed(x)), inv));
        }
    }
    let b = ext.b();
    b.set_from((0..b.size()).filter(|&x| image.contains(loc.class(x))))
}

/// True when `A_m → B_{A∖m}` is onto, i.e. `A_m = B_{A∖m}`.
pub fn localizations_agree(ext: &Extension, m: &FixedBitSet) -> bool {
    preimage_of_localization(ext, m).count_ones(..) == ext.b().size()
}
