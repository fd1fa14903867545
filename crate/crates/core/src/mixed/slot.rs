//! One rational slot: a subring of `Q` obtained from `Z` by inverting primes,
//! and its submodules inside `Q`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, smallest_prime_outside, strip_prime, valuation};
use crate::error::{AlgebraError, Result};

pub type Q = Ratio<i128>;

/// The slot ring `A_i ⊆ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlotFlavor {
    Integers,
    /// `Z_(p)`
    LocalAt(u64),
    /// `Z[1/S]` for a finite nonempty set of primes `S`, kept sorted.
    Inverted(Vec<u64>),
    Rationals,
}

impl SlotFlavor {
    pub fn inverted(primes: &[u64]) -> Result<Self> {
        let mut s = primes.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&p) = s.iter().find(|&&p| !is_prime(p)) {
            return Err(AlgebraError::InvalidComponent(format!("{p} is not prime")));
        }
        Ok(if s.is_empty() { SlotFlavor::Integers } else { SlotFlavor::Inverted(s) })
    }

    pub fn local_at(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidComponent(format!("{p} is not prime")));
        }
        Ok(SlotFlavor::LocalAt(p))
    }

    /// Whether `p` generates a maximal ideal of the slot ring; `0` stands for
    /// the zero ideal of `Q`.
    pub fn admits(&self, p: u64) -> bool {
        match self {
            SlotFlavor::Integers => is_prime(p),
            SlotFlavor::LocalAt(q) => p == *q,
            SlotFlavor::Inverted(s) => is_prime(p) && !s.contains(&p),
            SlotFlavor::Rationals => p == 0,
        }
    }

    /// Membership of a rational in the slot ring.
    pub fn contains(&self, x: &Q) -> bool {
        let d = x.denom().unsigned_abs();
        match self {
            SlotFlavor::Integers => d == 1,
            SlotFlavor::LocalAt(p) => !d.is_multiple_of(*p as u128),
            SlotFlavor::Inverted(s) => s.iter().fold(d, |acc, &p| strip_prime(acc, p)) == 1,
            SlotFlavor::Rationals => true,
        }
    }

    pub fn is_unit(&self, x: &Q) -> bool {
        !x.is_zero() && self.contains(x) && self.contains(&x.recip())
    }

    /// Canonical positive generator of `x·A_i` for `x ≠ 0`: the unit primes
    /// of the slot ring are discarded.
    pub fn normalize(&self, x: &Q) -> Q {
        debug_assert!(!x.is_zero());
        let x = x.abs();
        match self {
            SlotFlavor::Integers => x,
            SlotFlavor::LocalAt(p) => {
                let e = valuation(x.numer().unsigned_abs(), *p) as i32 - valuation(x.denom().unsigned_abs(), *p) as i32;
                pow_q(*p, e)
            }
            SlotFlavor::Inverted(s) => {
                let strip = |n: u128| s.iter().fold(n, |acc, &p| strip_prime(acc, p));
                Q::new(strip(x.numer().unsigned_abs()) as i128, strip(x.denom().unsigned_abs()) as i128)
            }
            SlotFlavor::Rationals => Q::one(),
        }
    }

    /// A prime of the slot ring outside `used`; `0` for `Q`.
    pub fn generic_prime(&self, used: &[u64]) -> u64 {
        match self {
            SlotFlavor::Integers => smallest_prime_outside(used),
            SlotFlavor::LocalAt(p) => *p,
            SlotFlavor::Inverted(s) => {
                let mut excluded = used.to_vec();
                excluded.extend_from_slice(s);
                smallest_prime_outside(&excluded)
            }
            SlotFlavor::Rationals => 0,
        }
    }
}

impl fmt::Display for SlotFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotFlavor::Integers => write!(f, "Z"),
            SlotFlavor::LocalAt(p) => write!(f, "Z_({p})"),
            SlotFlavor::Inverted(s) => {
                let prod: u128 = s.iter().map(|&p| p as u128).product();
                write!(f, "Z[1/{prod}]")
            }
            SlotFlavor::Rationals => write!(f, "Q"),
        }
    }
}

pub(crate) fn pow_q(p: u64, e: i32) -> Q {
    let base = (p as i128).pow(e.unsigned_abs());
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(1, base)
    }
}

pub fn gcd_q(a: &Q, b: &Q) -> Q {
    Q::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

pub fn lcm_q(a: &Q, b: &Q) -> Q {
    Q::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An `A_i`-submodule of `Q` of the shapes closed under the module
/// operations: `0`, `q·A_i`, and `Q` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlotModule {
    Zero,
    /// `q·A_i` with `q` the canonical generator.
    Fractional(Q),
    /// `Q`; never used for a `Q` slot, where it is `Fractional(1)`.
    Everything,
}

impl SlotModule {
    pub fn fractional(flavor: &SlotFlavor, q: &Q) -> Self {
        if q.is_zero() {
            SlotModule::Zero
        } else {
            SlotModule::Fractional(flavor.normalize(q))
        }
    }

    pub fn everything(flavor: &SlotFlavor) -> Self {
        match flavor {
            SlotFlavor::Rationals => SlotModule::Fractional(Q::one()),
            _ => SlotModule::Everything,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SlotModule::Zero)
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            SlotModule::Fractional(q) => Some(q),
            _ => None,
        }
    }

    pub fn contains(&self, flavor: &SlotFlavor, x: &Q) -> bool {
        match self {
            SlotModule::Zero => x.is_zero(),
            SlotModule::Everything => true,
            SlotModule::Fractional(q) => flavor.contains(&(x / q)),
        }
    }

    pub fn is_subset(&self, flavor: &SlotFlavor, other: &SlotModule) -> bool {
        match (self, other) {
            (SlotModule::Zero, _) | (_, SlotModule::Everything) => true,
            (_, SlotModule::Zero) | (SlotModule::Everything, _) => false,
            (SlotModule::Fractional(a), SlotModule::Fractional(b)) => flavor.contains(&(a / b)),
        }
    }

    /// Contained in the slot ring itself.
    pub fn is_integral(&self, flavor: &SlotFlavor) -> bool {
        self.is_subset(flavor, &SlotModule::Fractional(Q::one()))
    }

    pub fn sum(&self, flavor: &SlotFlavor, other: &SlotModule) -> SlotModule {
        match (self, other) {
            (SlotModule::Zero, x) | (x, SlotModule::Zero) => x.clone(),
            (SlotModule::Everything, _) | (_, SlotModule::Everything) => SlotModule::Everything,
            (SlotModule::Fractional(a), SlotModule::Fractional(b)) => SlotModule::fractional(flavor, &gcd_q(a, b)),
        }
    }

    pub fn product(&self, flavor: &SlotFlavor, other: &SlotModule) -> SlotModule {
        match (self, other) {
            (SlotModule::Zero, _) | (_, SlotModule::Zero) => SlotModule::Zero,
            (SlotModule::Everything, _) | (_, SlotModule::Everything) => SlotModule::Everything,
            (SlotModule::Fractional(a), SlotModule::Fractional(b)) => SlotModule::fractional(flavor, &(a * b)),
        }
    }

    /// `{ x ∈ Q : x·other ⊆ self }`.
    pub fn colon(&self, flavor: &SlotFlavor, other: &SlotModule) -> SlotModule {
        match (self, other) {
            (_, SlotModule::Zero) | (SlotModule::Everything, _) => SlotModule::everything(flavor),
            (SlotModule::Zero, _) => SlotModule::Zero,
            (SlotModule::Fractional(_), SlotModule::Everything) => SlotModule::Zero,
            (SlotModule::Fractional(a), SlotModule::Fractional(b)) => SlotModule::fractional(flavor, &(a / b)),
        }
    }

    pub fn intersection(&self, flavor: &SlotFlavor, other: &SlotModule) -> SlotModule {
        match (self, other) {
            (SlotModule::Zero, _) | (_, SlotModule::Zero) => SlotModule::Zero,
            (SlotModule::Everything, x) | (x, SlotModule::Everything) => x.clone(),
            (SlotModule::Fractional(a), SlotModule::Fractional(b)) => SlotModule::fractional(flavor, &lcm_q(a, b)),
        }
    }

    /// `v_p` of the generator, `None` for the zero module; `p = 0` gives 0.
    pub fn valuation(&self, p: u64) -> Option<i32> {
        match self {
            SlotModule::Zero => None,
            SlotModule::Everything => Some(i32::MIN),
            SlotModule::Fractional(q) if p == 0 => Some(0).filter(|_| !q.is_zero()),
            SlotModule::Fractional(q) => {
                Some(valuation(q.numer().unsigned_abs(), p) as i32 - valuation(q.denom().unsigned_abs(), p) as i32)
            }
        }
    }

    pub fn describe(&self, flavor: &SlotFlavor) -> String {
        match self {
            SlotModule::Zero => "0".into(),
            SlotModule::Everything => "Q".into(),
            SlotModule::Fractional(q) if q.is_one() => flavor.to_string(),
            SlotModule::Fractional(q) => format!("{}{}", format_q(q), flavor),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn frac(n: i128, d: i128) -> SlotModule {
        SlotModule::Fractional(q(n, d))
    }

    #[test]
    fn integer_slot_arithmetic() {
        let z = SlotFlavor::Integers;
        assert_eq!(frac(12, 1).sum(&z, &frac(18, 1)), frac(6, 1));
        assert_eq!(frac(4, 1).colon(&z, &frac(6, 1)), frac(2, 3));
        assert_eq!(frac(4, 1).intersection(&z, &frac(6, 1)), frac(12, 1));
        assert_eq!(frac(12, 1).product(&z, &frac(1, 12)), frac(1, 1));
        assert_eq!(frac(3, 1).colon(&z, &SlotModule::Zero), SlotModule::Everything);
        assert_eq!(frac(3, 1).colon(&z, &SlotModule::Everything), SlotModule::Zero);
    }

    #[test]
    fn flavors_discard_unit_primes() {
        assert_eq!(SlotFlavor::LocalAt(2).normalize(&q(12, 5)), q(4, 1));
        assert_eq!(SlotFlavor::LocalAt(3).normalize(&q(2, 9)), q(1, 9));
        let inv = SlotFlavor::inverted(&[2, 3]).unwrap();
        assert_eq!(inv.normalize(&q(60, 7)), q(5, 7));
        assert_eq!(SlotFlavor::Rationals.normalize(&q(60, 7)), q(1, 1));
        assert_eq!(SlotModule::everything(&SlotFlavor::Rationals), frac(1, 1));
    }

    #[test]
    fn membership() {
        assert!(SlotFlavor::LocalAt(2).contains(&q(1, 3)));
        assert!(!SlotFlavor::LocalAt(2).contains(&q(1, 6)));
        assert!(frac(2, 3).contains(&SlotFlavor::Integers, &q(4, 3)));
        assert!(!frac(2, 3).contains(&SlotFlavor::Integers, &q(1, 3)));
        assert!(frac(4, 1).is_subset(&SlotFlavor::Integers, &frac(2, 1)));
        assert!(!frac(2, 1).is_subset(&SlotFlavor::Integers, &frac(4, 1)));
    }

    #[test]
    fn rational_gcd_lcm() {
        assert_eq!(gcd_q(&q(1, 2), &q(1, 3)), q(1, 6));
        assert_eq!(lcm_q(&q(2, 3), &q(4, 9)), q(4, 3));
    }
}
