//! Manis valuations and the Manis-pair criterion.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, smallest_prime_outside};
use crate::error::{AlgebraError, Result};
use crate::finite::{describe_set, FiniteRing};
use crate::mixed::{MixedExtension, SlotFlavor, Q};
use crate::props::{PropertyVerdict, Witness};

/// A value in `Z^d ∪ {∞}`, ordered lexicographically with `∞` on top.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Value {
    Finite(Vec<i64>),
    Infinity,
}

impl Value {
    fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => Value::Infinity,
        }
    }

    fn sub(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.iter().zip(b).map(|(x, y)| x - y).collect()),
            _ => Value::Infinity,
        }
    }

    fn sign(&self) -> Ordering {
        match self {
            Value::Finite(v) => v.iter().map(|x| x.cmp(&0)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal),
            Value::Infinity => Ordering::Greater,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => write!(f, "∞"),
            Value::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Value::Finite(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Assignment {
    /// One value per element of a finite `B`, by index; `None` marks a gap.
    Table(Vec<Option<Value>>),
    /// `v(x) = v_p(x_slot)` on a mixed `B`.
    PAdic { slot: usize, prime: u64 },
}

/// A map `v : B → Z^d ∪ {∞}` to be checked against the valuation axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct ManisValuationData {
    pub rank: usize,
    pub assignment: Assignment,
}

/// `(A_v, p_v) = ({v ≥ 0}, {v > 0})` over the elements of a finite `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePair {
    pub ring: FixedBitSet,
    pub prime: FixedBitSet,
}

/// Checks the four axioms on a finite `B` by enumeration.
pub fn check_manis_valuation(data: &ManisValuationData, b: &FiniteRing) -> Result<(PropertyVerdict, Option<FinitePair>)> {
    let Assignment::Table(table) = &data.assignment else {
        return Err(AlgebraError::Unsupported("rule-based valuation on a finite ring".into()));
    };
    let n = b.size();
    let mut values = Vec::with_capacity(n);
    for x in 0..n {
        match table.get(x).cloned().flatten() {
            Some(Value::Finite(v)) if v.len() != data.rank => {
                return Err(AlgebraError::PartialAssignment(format!("{} has a value of the wrong rank", b.display(x))))
            }
            Some(v) => values.push(v),
            None => return Err(AlgebraError::PartialAssignment(b.display(x))),
        }
    }
    let fail = |axiom: &str, items: Vec<String>| {
        Ok((PropertyVerdict::new("manis_valuation", false).with_witness(Witness::Tuple { items }).note(axiom), None))
    };
    if values[b.zero()] != Value::Infinity {
        return fail("v(0) = ∞", vec![b.display(b.zero())]);
    }
    if values[b.one()] != Value::Finite(vec![0; data.rank]) {
        return fail("v(1) = 0", vec![b.display(b.one())]);
    }
    for x in 0..n {
        for y in 0..n {
            if values[b.mul(x, y)] != values[x].add(&values[y]) {
                return fail("v(xy) = v(x) + v(y)", vec![b.display(x), b.display(y)]);
            }
            if values[b.add(x, y)] < std::cmp::min(values[x].clone(), values[y].clone()) {
                return fail("v(x+y) ≥ min(v(x), v(y))", vec![b.display(x), b.display(y)]);
            }
        }
    }
    let group: Vec<&Value> = {
        let mut g: Vec<&Value> = values.iter().filter(|v| **v != Value::Infinity).collect();
        g.sort();
        g.dedup();
        g
    };
    for g in &group {
        for h in &group {
            let d = g.sub(h);
            if !group.contains(&&d) {
                return fail("v(B) ∖ {∞} is a group", vec![g.to_string(), h.to_string()]);
            }
        }
    }
    let ring = b.set_from((0..n).filter(|&x| values[x].sign() != Ordering::Less));
    let prime = b.set_from((0..n).filter(|&x| values[x].sign() == Ordering::Greater));
    let verdict = PropertyVerdict::new("manis_valuation", true)
        .note(format!("A_v = {}", describe_set(b, &ring)))
        .note(format!("p_v = {}", describe_set(b, &prime)));
    Ok((verdict, Some(FinitePair { ring, prime })))
}

/// Checks a `p`-adic rule on a mixed `B`. The axioms hold for `v_p` on `Q`
/// and transfer along the projection to the slot; the rule is additionally
/// spot-checked on seeded rationals.
pub fn check_padic_valuation(data: &ManisValuationData, ext: &MixedExtension, seed: u64) -> Result<PropertyVerdict> {
    let Assignment::PAdic { slot, prime } = data.assignment else {
        return Err(AlgebraError::Unsupported("table valuation on a mixed ring".into()));
    };
    if slot >= ext.rank() || !is_prime(prime) || data.rank != 1 {
        return Err(AlgebraError::Unsupported(format!("p-adic rule on slot {slot} with p = {prime}")));
    }
    let v = |x: &Q| -> Value {
        if x.is_zero() {
            Value::Infinity
        } else {
            let n = crate::arith::valuation(x.numer().unsigned_abs(), prime) as i64;
            let d = crate::arith::valuation(x.denom().unsigned_abs(), prime) as i64;
            Value::Finite(vec![n - d])
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || -> Q {
        let n: i128 = rng.gen_range(-200..=200);
        let d: i128 = rng.gen_range(1..=200);
        Q::new(n, d)
    };
    for _ in 0..500 {
        let (x, y) = (sample(), sample());
        if v(&(x * y)) != v(&x).add(&v(&y)) || v(&(x + y)) < std::cmp::min(v(&x), v(&y)) {
            return Ok(PropertyVerdict::new("manis_valuation", false)
                .with_witness(Witness::Tuple { items: vec![x.to_string(), y.to_string()] }));
        }
    }
    Ok(PropertyVerdict::new("manis_valuation", true)
        .note(format!("A_v has Z_({prime}) in slot {slot} and is full elsewhere"))
        .note(format!("p_v has {prime}Z_({prime}) in slot {slot} and is full elsewhere")))
}

/// The criterion: for every `x ∈ B ∖ A` some `y ∈ p` has `xy ∈ A ∖ p`.
/// `ring` and `prime` are member sets over `B`.
pub fn is_manis_pair_finite(b: &FiniteRing, ring: &FixedBitSet, prime: &FixedBitSet) -> Result<PropertyVerdict> {
    let members: Vec<usize> = ring.ones().collect();
    let is_prime_in_ring = !prime.contains(b.one())
        && prime.is_subset(ring)
        && prime.ones().all(|x| {
            prime.ones().all(|y| prime.contains(b.add(x, y))) && members.iter().all(|&r| prime.contains(b.mul(r, x)))
        })
        && members
            .iter()
            .all(|&x| prime.contains(x) || members.iter().all(|&y| prime.contains(y) || !prime.contains(b.mul(x, y))));
    if !is_prime_in_ring {
        return Err(AlgebraError::NotPrime(describe_set(b, prime)));
    }
    for x in (0..b.size()).filter(|&x| !ring.contains(x)) {
        let ok = prime.ones().any(|y| {
            let xy = b.mul(x, y);
            ring.contains(xy) && !prime.contains(xy)
        });
        if !ok {
            return Ok(PropertyVerdict::new("manis_pair", false).with_witness(Witness::Element { value: b.display(x) }));
        }
    }
    Ok(PropertyVerdict::new("manis_pair", true).vacuous(ring.count_ones(..) == b.size()))
}

/// The criterion for a slot pair `(A_i, P)` in `Q`, `P` given by its prime
/// (`0` for the zero ideal). It holds exactly when `A_i` is a valuation ring
/// of `Q` with maximal ideal `P`.
pub fn is_manis_pair_slot(flavor: &SlotFlavor, prime: u64) -> Result<PropertyVerdict> {
    let valid = match flavor {
        SlotFlavor::Rationals => prime == 0,
        _ => prime == 0 || flavor.admits(prime),
    };
    if !valid {
        return Err(AlgebraError::NotPrime(format!("{prime} in {flavor}")));
    }
    let witness = match flavor {
        SlotFlavor::Rationals => None,
        SlotFlavor::LocalAt(p) if prime == *p => None,
        SlotFlavor::LocalAt(p) => Some(Q::new(1, *p as i128)),
        SlotFlavor::Integers => Some(Q::new(1, smallest_prime_outside(&[prime]) as i128)),
        SlotFlavor::Inverted(s) => {
            let mut excluded = s.clone();
            excluded.push(prime);
            Some(Q::new(1, smallest_prime_outside(&excluded) as i128))
        }
    };
    Ok(match witness {
        None => PropertyVerdict::new("manis_pair", true).vacuous(matches!(flavor, SlotFlavor::Rationals)),
        Some(x) => PropertyVerdict::new("manis_pair", false)
            .with_witness(Witness::Element { value: crate::mixed::format_q(&x) }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{Ambient, AmbientComponent, DEFAULT_SIZE_CAP};
    use std::sync::Arc;

    fn f2_squared() -> FiniteRing {
        let c = AmbientComponent::integers(2, 1).unwrap();
        FiniteRing::whole(Arc::new(Ambient::new(vec![c.clone(), c])), DEFAULT_SIZE_CAP).unwrap()
    }

    #[test]
    fn indicator_valuation_on_k_squared() {
        let b = f2_squared();
        let table = (0..b.size())
            .map(|x| Some(if b.element(x).0[0] != 0 { Value::Finite(vec![0]) } else { Value::Infinity }))
            .collect();
        let data = ManisValuationData { rank: 1, assignment: Assignment::Table(table) };
        let (verdict, pair) = check_manis_valuation(&data, &b).unwrap();
        assert!(verdict.holds);
        let pair = pair.unwrap();
        assert_eq!(pair.ring.count_ones(..), 4);
        // 0 × K
        let expected = b.set_from((0..b.size()).filter(|&x| b.element(x).0[0] == 0));
        assert_eq!(pair.prime, expected);
        assert!(is_manis_pair_finite(&b, &pair.ring, &pair.prime).unwrap().holds);
    }

    #[test]
    fn unit_with_nonzero_value_is_rejected() {
        let b = FiniteRing::integers_mod(6).unwrap();
        let table = (0..b.size())
            .map(|x| Some(if x == b.zero() { Value::Infinity } else { Value::Finite(vec![1]) }))
            .collect();
        let data = ManisValuationData { rank: 1, assignment: Assignment::Table(table) };
        let (verdict, _) = check_manis_valuation(&data, &b).unwrap();
        assert!(!verdict.holds);
    }

    #[test]
    fn missing_value_is_reported() {
        let b = FiniteRing::integers_mod(6).unwrap();
        let data = ManisValuationData { rank: 1, assignment: Assignment::Table(vec![None; 6]) };
        assert!(matches!(check_manis_valuation(&data, &b), Err(AlgebraError::PartialAssignment(_))));
    }

    #[test]
    fn slot_pairs() {
        assert!(is_manis_pair_slot(&SlotFlavor::LocalAt(2), 2).unwrap().holds);
        let v = is_manis_pair_slot(&SlotFlavor::Integers, 2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Element { value: "1/3".into() }));
        assert!(is_manis_pair_slot(&SlotFlavor::Rationals, 0).unwrap().holds);
        assert!(is_manis_pair_slot(&SlotFlavor::Integers, 4).is_err());
    }
}
