//! Explicit finite commutative rings embedded in an [`Ambient`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::component::{Ambient, AmbientComponent, RingElement};
use super::span::Span;
use crate::arith::factorize;
use crate::error::{AlgebraError, Result};

/// Default cap on the number of elements of any enumerated ring.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Rings up to this size get precomputed operation tables.
const TABLE_LIMIT: usize = 512;

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// A finite commutative ring: an explicitly enumerated subset of an ambient
/// closed under the ring operations and containing the ambient 0 and 1.
///
/// Elements are addressed by their position in the lexicographically sorted
/// element list.
pub struct FiniteRing {
    ambient: Arc<Ambient>,
    elements: Vec<RingElement>,
    index: HashMap<RingElement, usize>,
    tables: Option<Tables>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    additive_gens: Vec<usize>,
    pub(crate) maximal_cache: OnceLock<Vec<FixedBitSet>>,
    pub(crate) ideal_cache: OnceLock<Vec<FixedBitSet>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("ambient", &self.ambient)
            .field("size", &self.elements.len())
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Smallest subring of the ambient containing `generators` (and 1).
    pub fn close_subring(ambient: Arc<Ambient>, generators: &[RingElement], cap: usize) -> Result<Self> {
        for g in generators {
            if !ambient.is_valid(g) {
                return Err(AlgebraError::InvalidElement(format!("{g:?}")));
            }
        }
        // additive span of 1, then repeatedly multiply new additive
        // generators by the ring generators until nothing new appears
        let mut set: HashSet<RingElement> = HashSet::new();
        let mut list: Vec<RingElement> = Vec::new();
        let zero = ambient.zero();
        set.insert(zero.clone());
        list.push(zero);
        let mut frontier = Vec::new();
        if insert_span(&ambient, &mut set, &mut list, ambient.one(), cap)? {
            frontier.push(ambient.one());
        }
        for g in generators {
            if insert_span(&ambient, &mut set, &mut list, g.clone(), cap)? {
                frontier.push(g.clone());
            }
        }
        // the span is a ring once it is closed under multiplication by each
        // ring generator, by bilinearity
        while let Some(b) = frontier.pop() {
            for g in generators {
                let prod = ambient.mul(&b, g);
                if insert_span(&ambient, &mut set, &mut list, prod.clone(), cap)? {
                    frontier.push(prod);
                }
            }
        }
        Ok(Self::from_sorted(ambient, list))
    }

    /// The whole ambient as a ring.
    pub fn whole(ambient: Arc<Ambient>, cap: usize) -> Result<Self> {
        let elements = ambient.enumerate(cap)?;
        Ok(Self::from_sorted(ambient, elements))
    }

    /// `Z/n` realized as the product of its primary components.
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidComponent(format!("Z/{n} is not supported")));
        }
        let comps = factorize(n as u128, 1 << 16)?
            .into_iter()
            .map(|(p, k)| AmbientComponent::integers(p, k))
            .collect::<Result<Vec<_>>>()?;
        Self::whole(Arc::new(Ambient::new(comps)), DEFAULT_SIZE_CAP)
    }

    /// A ring from an explicit element list; rejects sets not closed under
    /// the ring operations.
    pub fn from_elements(ambient: Arc<Ambient>, elements: Vec<RingElement>) -> Result<Self> {
        let set: HashSet<&RingElement> = elements.iter().collect();
        if !set.contains(&ambient.zero()) || !set.contains(&ambient.one()) {
            return Err(AlgebraError::InvalidElement("subset lacks 0 or 1".into()));
        }
        for a in &elements {
            if !set.contains(&ambient.neg(a)) {
                return Err(AlgebraError::InvalidElement("subset not closed under negation".into()));
            }
            for b in &elements {
                if !set.contains(&ambient.add(a, b)) || !set.contains(&ambient.mul(a, b)) {
                    return Err(AlgebraError::InvalidElement("subset not closed under + and ×".into()));
                }
            }
        }
        let mut uniq: Vec<RingElement> = set.into_iter().cloned().collect();
        uniq.sort();
        Ok(Self::from_sorted(ambient, uniq))
    }

    fn from_sorted(ambient: Arc<Ambient>, mut elements: Vec<RingElement>) -> Self {
        elements.sort();
        elements.dedup();
        let index: HashMap<RingElement, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = elements.len();
        let zero = index[&ambient.zero()];
        let one = index[&ambient.one()];
        let neg = elements.iter().map(|e| index[&ambient.neg(e)] as u32).collect();
        let tables = (n <= TABLE_LIMIT).then(|| {
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let s = index[&ambient.add(&elements[i], &elements[j])] as u32;
                    let p = index[&ambient.mul(&elements[i], &elements[j])] as u32;
                    add[i * n + j] = s;
                    add[j * n + i] = s;
                    mul[i * n + j] = p;
                    mul[j * n + i] = p;
                }
            }
            Tables { add, mul }
        });
        let mut ring = Self {
            ambient,
            elements,
            index,
            tables,
            neg,
            zero,
            one,
            additive_gens: Vec::new(),
            maximal_cache: OnceLock::new(),
            ideal_cache: OnceLock::new(),
        };
        let mut span = Span::zero(n, zero);
        let mut gens = Vec::new();
        for x in 0..n {
            if span.insert(x, |a, b| ring.add(a, b)) {
                gens.push(x);
            }
        }
        ring.additive_gens = gens;
        ring
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RingElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &RingElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Additive generators, chosen greedily in element order.
    pub fn additive_generators(&self) -> &[usize] {
        &self.additive_gens
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.elements.len() + b] as usize,
            None => self.index[&self.ambient.add(&self.elements[a], &self.elements[b])],
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.elements.len() + b] as usize,
            None => self.index[&self.ambient.mul(&self.elements[a], &self.elements[b])],
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.size()).any(|b| self.mul(a, b) == self.one)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.mul(a, b) == self.one)
    }

    /// Non-zero-divisor test: `a·b = 0` only for `b = 0`.
    pub fn is_regular(&self, a: usize) -> bool {
        (0..self.size()).all(|b| b == self.zero || self.mul(a, b) != self.zero)
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        // the nilpotency index is at most the ring size
        let mut x = a;
        let mut reach = 1usize;
        while reach < self.size() {
            x = self.mul(x, x);
            reach *= 2;
        }
        x == self.zero
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Idempotents `e ≠ 0` admitting no idempotent `f ∉ {0, e}` with `fe = f`.
    pub fn primitive_idempotents(&self) -> Vec<usize> {
        let idem = self.idempotents();
        idem.iter()
            .copied()
            .filter(|&e| {
                e != self.zero
                    && idem
                        .iter()
                        .all(|&f| f == self.zero || f == e || self.mul(f, e) != f)
            })
            .collect()
    }

    pub fn display(&self, i: usize) -> String {
        self.ambient.display(&self.elements[i]).to_string()
    }

    /// Integer image `n·1`.
    pub fn integer(&self, n: i64) -> usize {
        self.index[&self.ambient.integer(n)]
    }

    pub fn set_from(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.size());
        bits.extend(members);
        bits
    }

    /// True when `other` is a subring of this ring with the same ambient.
    pub fn contains_ring(&self, other: &FiniteRing) -> bool {
        self.ambient == other.ambient && other.elements.iter().all(|e| self.index.contains_key(e))
    }
}

fn insert_span(
    ambient: &Ambient,
    set: &mut HashSet<RingElement>,
    list: &mut Vec<RingElement>,
    v: RingElement,
    cap: usize,
) -> Result<bool> {
    if set.contains(&v) {
        return Ok(false);
    }
    let base = list.clone();
    let mut t = v.clone();
    while !set.contains(&t) {
        for g in &base {
            let s = ambient.add(g, &t);
            set.insert(s.clone());
            list.push(s);
        }
        if list.len() > cap {
            return Err(AlgebraError::SizeCapExceeded { cap });
        }
        t = ambient.add(&t, &v);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(parts: &[(u64, u32, &[i64])]) -> Arc<Ambient> {
        Arc::new(Ambient::new(
            parts.iter().map(|&(p, k, f)| AmbientComponent::new(p, k, f).unwrap()).collect(),
        ))
    }

    #[test]
    fn prime_field_from_one() {
        let a = amb(&[(2, 1, &[0, 1])]);
        let r = FiniteRing::close_subring(a, &[], DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.size(), 2);
    }

    #[test]
    fn z6_from_unit_generator() {
        let a = amb(&[(2, 1, &[0, 1]), (3, 1, &[0, 1])]);
        let g = a.element(&[vec![1], vec![1]]).unwrap();
        let r = FiniteRing::close_subring(a, &[g], DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.size(), 6);
    }

    #[test]
    fn diagonal_subring() {
        let a = amb(&[(2, 1, &[0, 1]), (2, 1, &[0, 1])]);
        let g = a.element(&[vec![1], vec![1]]).unwrap();
        let r = FiniteRing::close_subring(a.clone(), &[g], DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.size(), 2);
        assert_eq!(
            r.elements(),
            &[a.element(&[vec![0], vec![0]]).unwrap(), a.element(&[vec![1], vec![1]]).unwrap()]
        );
    }

    #[test]
    fn closure_respects_cap() {
        let a = amb(&[(2, 4, &[0, 1]), (3, 2, &[0, 1])]);
        let g = a.element(&[vec![1], vec![0]]).unwrap();
        assert_eq!(
            FiniteRing::close_subring(a, &[g], 50),
            Err(AlgebraError::SizeCapExceeded { cap: 50 })
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let a = amb(&[(2, 1, &[0, 0, 1]), (3, 1, &[0, 1])]);
        let x = a.element(&[vec![0, 1], vec![2]]).unwrap();
        let r = FiniteRing::close_subring(a.clone(), &[x], DEFAULT_SIZE_CAP).unwrap();
        let again = FiniteRing::close_subring(a, r.elements(), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn integers_mod_twelve() {
        let r = FiniteRing::integers_mod(12).unwrap();
        assert_eq!(r.size(), 12);
        let three = r.integer(3);
        let four = r.integer(4);
        assert_eq!(r.mul(three, four), r.zero());
        assert!(r.is_unit(r.integer(5)));
        assert!(!r.is_regular(three));
        assert!(r.is_nilpotent(r.integer(6)));
    }

    #[test]
    fn from_elements_rejects_non_rings() {
        let r = FiniteRing::integers_mod(6).unwrap();
        let half: Vec<_> = [0, 2].iter().map(|&n| r.ambient().integer(n)).collect();
        assert!(FiniteRing::from_elements(r.ambient().clone(), half).is_err());
    }
}
