//! Ideal lattices of finite rings: enumeration, maximal and prime ideals.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::ring::FiniteRing;
use super::span::Span;
use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpotKind {
    Prime,
    Maximal,
}

/// A prime or maximal ideal of a finite ring, as a member set over ring indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpot {
    pub members: FixedBitSet,
    pub kind: SpotKind,
}

impl PrimeSpot {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn describe(&self, ring: &FiniteRing) -> String {
        describe_set(ring, &self.members)
    }
}

pub fn describe_set(ring: &FiniteRing, set: &FixedBitSet) -> String {
    let els: Vec<String> = set.ones().map(|i| ring.display(i)).collect();
    format!("{{{}}}", els.join(", "))
}

/// The ideal generated by `generators`.
pub fn ideal_closure(ring: &FiniteRing, generators: &[usize]) -> FixedBitSet {
    let mut span = Span::zero(ring.size(), ring.zero());
    for &g in generators {
        if span.contains(g) {
            continue;
        }
        for &s in ring.additive_generators() {
            span.insert(ring.mul(s, g), |x, y| ring.add(x, y));
        }
    }
    span.bits
}

pub fn principal_ideal(ring: &FiniteRing, x: usize) -> FixedBitSet {
    ring.set_from((0..ring.size()).map(|a| ring.mul(a, x)))
}

fn sort_key(set: &FixedBitSet) -> (usize, Vec<usize>) {
    (set.count_ones(..), set.ones().collect())
}

/// Every ideal of `ring`, ordered by size and then by member list.
pub fn all_ideals(ring: &FiniteRing) -> &[FixedBitSet] {
    ring.ideal_cache.get_or_init(|| {
        let principals: Vec<FixedBitSet> = (0..ring.size()).map(|x| principal_ideal(ring, x)).collect();
        let zero = ring.set_from([ring.zero()]);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([zero.clone()]);
        let mut stack = vec![zero];
        while let Some(ideal) = stack.pop() {
            for x in 0..ring.size() {
                if ideal.contains(x) {
                    continue;
                }
                let mut next = Span { bits: ideal.clone(), members: ideal.ones().collect() };
                for y in principals[x].ones() {
                    next.insert(y, |a, b| ring.add(a, b));
                }
                if seen.insert(next.bits.clone()) {
                    stack.push(next.bits);
                }
            }
        }
        let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
        out.sort_by_key(sort_key);
        out
    })
}

/// Maximal ideals, one per primitive idempotent `e`: `{ x : xe nilpotent }`.
///
/// A finite ring is the product of the local rings `Ae`, and the maximal
/// ideal of a finite local ring is its nilradical.
pub fn maximal_ideals(ring: &FiniteRing) -> Vec<PrimeSpot> {
    let sets = ring.maximal_cache.get_or_init(|| {
        let nil: Vec<bool> = (0..ring.size()).map(|x| ring.is_nilpotent(x)).collect();
        let mut out: Vec<FixedBitSet> = ring
            .primitive_idempotents()
            .into_iter()
            .map(|e| ring.set_from((0..ring.size()).filter(|&x| nil[ring.mul(x, e)])))
            .collect();
        out.sort_by_key(|s| s.ones().collect::<Vec<_>>());
        out
    });
    sets.iter()
        .map(|m| PrimeSpot { members: m.clone(), kind: SpotKind::Maximal })
        .collect()
}

pub fn is_ideal(ring: &FiniteRing, set: &FixedBitSet) -> bool {
    set.contains(ring.zero())
        && set.ones().all(|x| {
            set.ones().all(|y| set.contains(ring.add(x, y)))
                && ring.additive_generators().iter().all(|&a| set.contains(ring.mul(a, x)))
        })
}

pub fn is_prime_ideal(ring: &FiniteRing, set: &FixedBitSet) -> bool {
    if set.contains(ring.one()) || !is_ideal(ring, set) {
        return false;
    }
    let n = ring.size();
    (0..n).all(|x| set.contains(x) || (0..n).all(|y| set.contains(y) || !set.contains(ring.mul(x, y))))
}

pub fn is_maximal_ideal(ring: &FiniteRing, set: &FixedBitSet) -> bool {
    maximal_ideals(ring).iter().any(|m| &m.members == set)
}

/// Validates a candidate maximal ideal, returning it as a [`PrimeSpot`].
pub fn as_maximal(ring: &FiniteRing, set: &FixedBitSet) -> Result<PrimeSpot> {
    if is_maximal_ideal(ring, set) {
        Ok(PrimeSpot { members: set.clone(), kind: SpotKind::Maximal })
    } else {
        Err(AlgebraError::NotMaximal)
    }
}

/// Validates a candidate prime ideal. Every prime of a finite ring is maximal.
pub fn as_prime(ring: &FiniteRing, set: &FixedBitSet) -> Result<PrimeSpot> {
    if is_prime_ideal(ring, set) {
        Ok(PrimeSpot { members: set.clone(), kind: SpotKind::Prime })
    } else {
        Err(AlgebraError::NotPrime(describe_set(ring, set)))
    }
}

/// Smallest generating set of an ideal, by exhaustive search over subsets of
/// increasing size (first hit in index order).
pub fn minimal_generators(ring: &FiniteRing, ideal: &FixedBitSet) -> Vec<usize> {
    let members: Vec<usize> = ideal.ones().filter(|&x| x != ring.zero()).collect();
    if members.is_empty() {
        return Vec::new();
    }
    for k in 1..=members.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
            if &ideal_closure(ring, &gens) == ideal {
                return gens;
            }
            if !next_combination(&mut idx, members.len()) {
                break;
            }
        }
    }
    unreachable!("an ideal is generated by its own members")
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::component::{Ambient, AmbientComponent};
    use crate::finite::ring::DEFAULT_SIZE_CAP;
    use std::sync::Arc;

    fn as_ints(ring: &FiniteRing, set: &FixedBitSet, n: i64) -> Vec<i64> {
        (0..n).filter(|&k| set.contains(ring.integer(k))).collect()
    }

    #[test]
    fn maximal_ideals_of_z6() {
        let r = FiniteRing::integers_mod(6).unwrap();
        let ms = maximal_ideals(&r);
        let got: Vec<Vec<i64>> = ms.iter().map(|m| as_ints(&r, &m.members, 6)).collect();
        assert_eq!(got, vec![vec![0, 2, 4], vec![0, 3]]);
    }

    #[test]
    fn maximal_ideal_of_dual_numbers() {
        // F2[x]/(x^2) has the single maximal ideal {0, x}
        let amb = Arc::new(Ambient::new(vec![AmbientComponent::new(2, 1, &[0, 0, 1]).unwrap()]));
        let r = FiniteRing::whole(amb.clone(), DEFAULT_SIZE_CAP).unwrap();
        let ms = maximal_ideals(&r);
        assert_eq!(ms.len(), 1);
        let x = r.index_of(&amb.element(&[vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(ms[0].members, r.set_from([r.zero(), x]));
    }

    #[test]
    fn field_has_zero_maximal_ideal() {
        let amb = Arc::new(Ambient::new(vec![AmbientComponent::new(2, 1, &[1, 1, 1]).unwrap()]));
        let r = FiniteRing::whole(amb, DEFAULT_SIZE_CAP).unwrap();
        let ms = maximal_ideals(&r);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].members, r.set_from([r.zero()]));
    }

    #[test]
    fn ideal_lattice_of_z12() {
        let r = FiniteRing::integers_mod(12).unwrap();
        // one ideal per divisor of 12
        assert_eq!(all_ideals(&r).len(), 6);
        for m in maximal_ideals(&r) {
            assert!(is_prime_ideal(&r, &m.members));
        }
    }

    #[test]
    fn minimal_generators_of_square_zero_ideal() {
        // F2[x,y]/(x,y)^2 inside F2[x]/(x^2) × F2[y]/(y^2)
        let c = AmbientComponent::new(2, 1, &[0, 0, 1]).unwrap();
        let amb = Arc::new(Ambient::new(vec![c.clone(), c]));
        let x = amb.element(&[vec![0, 1], vec![0]]).unwrap();
        let y = amb.element(&[vec![0], vec![0, 1]]).unwrap();
        let r = FiniteRing::close_subring(amb, &[x.clone(), y.clone()], DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.size(), 8);
        let xi = r.index_of(&x).unwrap();
        let yi = r.index_of(&y).unwrap();
        let m = ideal_closure(&r, &[xi, yi]);
        assert_eq!(m.count_ones(..), 4);
        assert_eq!(minimal_generators(&r, &m).len(), 2);
    }
}
