//! Brute-force flatness test through tensor products.
//!
//! With minimal generators `g₁..g_k` of `a` and relation module
//! `R = { ρ ∈ A^k : Σ ρᵢgᵢ = 0 }`, the tensor product `a ⊗ b` is
//! `b^k / Rb`. Multiplication `a ⊗ b → ab` is injective iff every
//! `β ∈ b^k` with `Σ gᵢβᵢ = 0` lies in `Rb`.

use fixedbitset::FixedBitSet;

use super::verdict::{PropertyVerdict, Witness};
use crate::error::{AlgebraError, Result};
use crate::finite::span::Span;
use crate::finite::{all_ideals, describe_set, minimal_generators, FiniteRing};

pub const DEFAULT_ORACLE_CAP: usize = 36;
/// Largest `|A|^k` the tuple enumeration accepts.
const TUPLE_LIMIT: usize = 1 << 21;

struct Tuples<'r> {
    ring: &'r FiniteRing,
    k: usize,
}

impl Tuples<'_> {
    fn count(&self) -> usize {
        self.ring.size().pow(self.k as u32)
    }

    fn decode(&self, mut code: usize) -> Vec<usize> {
        let n = self.ring.size();
        (0..self.k)
            .map(|_| {
                let x = code % n;
                code /= n;
                x
            })
            .collect()
    }

    fn encode(&self, xs: &[usize]) -> usize {
        let n = self.ring.size();
        xs.iter().rev().fold(0, |acc, &x| acc * n + x)
    }

    fn add(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.decode(u), self.decode(v));
        let s: Vec<usize> = a.iter().zip(&b).map(|(&x, &y)| self.ring.add(x, y)).collect();
        self.encode(&s)
    }

    fn scale(&self, u: usize, c: usize) -> usize {
        let s: Vec<usize> = self.decode(u).iter().map(|&x| self.ring.mul(x, c)).collect();
        self.encode(&s)
    }

    fn pair_with(&self, u: usize, gens: &[usize]) -> usize {
        self.decode(u)
            .iter()
            .zip(gens)
            .fold(self.ring.zero(), |acc, (&x, &g)| self.ring.add(acc, self.ring.mul(x, g)))
    }

    fn zero(&self) -> usize {
        self.encode(&vec![self.ring.zero(); self.k])
    }
}

fn additive_basis(members: impl Iterator<Item = usize>, universe: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut span = Span::zero(universe, zero);
    let mut basis = Vec::new();
    for x in members {
        if span.insert(x, &add) {
            basis.push(x);
        }
    }
    basis
}

/// Injectivity of `a ⊗ b → ab` for every ideal `b` of `ring`.
pub fn flatness_oracle(ring: &FiniteRing, ideal: &FixedBitSet, cap: usize) -> Result<PropertyVerdict> {
    if ring.size() > cap {
        return Err(AlgebraError::SizeCapExceeded { cap });
    }
    let gens = minimal_generators(ring, ideal);
    let tuples = Tuples { ring, k: gens.len() };
    if ring.size().checked_pow(gens.len() as u32).is_none_or(|c| c > TUPLE_LIMIT) {
        return Err(AlgebraError::SizeCapExceeded { cap: TUPLE_LIMIT });
    }
    let total = tuples.count();
    let relations = additive_basis(
        (0..total).filter(|&u| tuples.pair_with(u, &gens) == ring.zero()),
        total,
        tuples.zero(),
        |x, y| tuples.add(x, y),
    );
    for b in all_ideals(ring) {
        let b_basis = additive_basis(b.ones(), ring.size(), ring.zero(), |x, y| ring.add(x, y));
        let mut image = Span::zero(total, tuples.zero());
        for &rho in &relations {
            for &beta in &b_basis {
                image.insert(tuples.scale(rho, beta), |x, y| tuples.add(x, y));
            }
        }
        let b_members: Vec<usize> = b.ones().collect();
        let mut idx = vec![0usize; gens.len()];
        loop {
            let beta: Vec<usize> = idx.iter().map(|&i| b_members[i]).collect();
            let code = tuples.encode(&beta);
            if tuples.pair_with(code, &gens) == ring.zero() && !image.contains(code) {
                let terms = gens.iter().zip(&beta).map(|(&g, &x)| (ring.display(g), ring.display(x))).collect();
                return Ok(PropertyVerdict::new("flat_oracle", false)
                    .with_witness(Witness::Tensor { terms, ideal: describe_set(ring, b) }));
            }
            if !odometer(&mut idx, b_members.len()) {
                break;
            }
        }
    }
    Ok(PropertyVerdict::new("flat_oracle", true))
}

fn odometer(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(r: &FiniteRing, ks: &[i64]) -> FixedBitSet {
        crate::finite::ideal_closure(r, &ks.iter().map(|&k| r.integer(k)).collect::<Vec<_>>())
    }

    #[test]
    fn two_in_z6_is_flat() {
        let r = FiniteRing::integers_mod(6).unwrap();
        assert!(flatness_oracle(&r, &ideal(&r, &[2]), 36).unwrap().holds);
    }

    #[test]
    fn two_in_z4_is_not_flat() {
        let r = FiniteRing::integers_mod(4).unwrap();
        let v = flatness_oracle(&r, &ideal(&r, &[2]), 36).unwrap();
        assert!(!v.holds);
        match v.witness {
            Some(Witness::Tensor { terms, .. }) => assert_eq!(terms, vec![("(2)".into(), "(2)".into())]),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn zero_ideal_is_flat() {
        let r = FiniteRing::integers_mod(4).unwrap();
        assert!(flatness_oracle(&r, &ideal(&r, &[]), 36).unwrap().holds);
    }

    #[test]
    fn cap_is_enforced() {
        let r = FiniteRing::integers_mod(64).unwrap();
        assert!(matches!(flatness_oracle(&r, &ideal(&r, &[2]), 36), Err(AlgebraError::SizeCapExceeded { cap: 36 })));
    }
}
