//! Additive spans over index-encoded finite abelian groups.

use fixedbitset::FixedBitSet;

/// A subgroup of a finite abelian group whose elements are `0..universe`.
#[derive(Debug, Clone)]
pub(crate) struct Span {
    pub bits: FixedBitSet,
    pub members: Vec<usize>,
}

impl Span {
    pub fn zero(universe: usize, zero: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert(zero);
        Self { bits, members: vec![zero] }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    /// Enlarges the span by `v`. Returns false when `v` was already a member.
    ///
    /// The new span is the union of the cosets `G + k·v`; the first multiple
    /// that falls back into the span closes the cycle.
    pub fn insert(&mut self, v: usize, add: impl Fn(usize, usize) -> usize) -> bool {
        if self.bits.contains(v) {
            return false;
        }
        let base = self.members.clone();
        let mut t = v;
        while !self.bits.contains(t) {
            for &g in &base {
                let s = add(g, t);
                self.bits.insert(s);
                self.members.push(s);
            }
            t = add(t, v);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_in_z12() {
        let add = |a: usize, b: usize| (a + b) % 12;
        let mut s = Span::zero(12, 0);
        assert!(s.insert(8, add));
        let mut m = s.members.clone();
        m.sort();
        assert_eq!(m, vec![0, 4, 8]);
        assert!(s.insert(6, add));
        let mut m = s.members.clone();
        m.sort();
        assert_eq!(m, vec![0, 2, 4, 6, 8, 10]);
        assert!(!s.insert(10, add));
    }
}
