//! [`RingUniverse`] for the mixed universe. Every operation splits along the
//! idempotents of `A`: slot by slot, then the finite tail.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::extension::{MixedElement, MixedExtension, MixedIdeal, MixedMaximal};
use super::slot::{SlotFlavor, SlotModule, Q};
use crate::arith::{ext_gcd, factorize, prime_divisors, DEFAULT_FACTOR_BOUND};
use crate::error::{AlgebraError, Result};
use crate::finite::{all_ideals, maximal_ideals, Submodule};
use crate::props::{LocalShape, RingUniverse};

fn slot_primes(flavor: &SlotFlavor, m: &SlotModule, into: &mut BTreeSet<u64>) -> Result<()> {
    if let SlotModule::Fractional(q) = m {
        for n in [q.numer().unsigned_abs(), q.denom().unsigned_abs()] {
            into.extend(prime_divisors(n, DEFAULT_FACTOR_BOUND)?.into_iter().filter(|&p| flavor.admits(p)));
        }
    }
    Ok(())
}

/// Integer coefficients `cₗ` with `Σ cₗ gₗ = gcd(gₗ)` for nonzero rationals.
fn bezout(values: &[Q]) -> (Q, Vec<i128>) {
    let l = values.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i128> = values.iter().map(|q| (q * Q::from_integer(l)).to_integer()).collect();
    let mut g = 0i128;
    let mut coeffs: Vec<i128> = Vec::with_capacity(ints.len());
    for &m in &ints {
        let (d, x, y) = ext_gcd(g, m);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs.push(y);
        g = d;
    }
    (Q::new(g, l), coeffs)
}

impl MixedExtension {
    fn slot_certificate(&self, i: usize, s: &MixedIdeal, t: &MixedIdeal) -> Option<Vec<(MixedElement, MixedElement)>> {
        let f = &self.flavors()[i];
        let (si, ti) = (&s.slots[i], &t.slots[i]);
        if !si.product(f, ti).contains(f, &Q::one()) {
            return None;
        }
        let pair = |a: Q, z: Q| (self.slot_element(i, a), self.slot_element(i, z));
        match (si, ti) {
            (SlotModule::Everything, SlotModule::Fractional(b)) => Some(vec![pair(b.recip(), *b)]),
            (SlotModule::Everything, _) => Some(vec![pair(Q::one(), Q::one())]),
            (SlotModule::Fractional(a), _) => {
                let mut values: Vec<Q> = self
                    .generators(s)
                    .unwrap_or_default()
                    .iter()
                    .map(|g| g.slots[i])
                    .filter(|q| !q.is_zero())
                    .collect();
                if values.is_empty() {
                    values.push(*a);
                }
                let (g, coeffs) = bezout(&values);
                let pairs: Vec<_> = values
                    .iter()
                    .zip(coeffs)
                    .filter(|(_, c)| *c != 0)
                    .map(|(v, c)| pair(*v, Q::from_integer(c) / g))
                    .collect();
                pairs.iter().all(|(_, z)| ti.contains(f, &z.slots[i])).then_some(pairs)
            }
            (SlotModule::Zero, _) => None,
        }
    }

    fn slot_values(&self, flavor: &SlotFlavor) -> Result<Vec<Q>> {
        let sweep = &self.sweep;
        let mut raw: Vec<u64> = (0..=sweep.exhaustive).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
        let mut taken = 0;
        let mut attempts = 0;
        while taken < sweep.samples && attempts < 100 * sweep.samples.max(1) {
            attempts += 1;
            let n = rng.gen_range(2..=sweep.sample_bound.max(2));
            let omega: u32 = factorize(n as u128, DEFAULT_FACTOR_BOUND)?.iter().map(|&(_, e)| e).sum();
            if omega <= sweep.max_prime_factors {
                raw.push(n);
                taken += 1;
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in raw {
            let q = if n == 0 { Q::zero() } else { flavor.normalize(&Q::from_integer(n as i128)) };
            if seen.insert(q) {
                out.push(q);
            }
        }
        Ok(out)
    }
}

impl RingUniverse for MixedExtension {
    type Module = MixedIdeal;
    type Maximal = MixedMaximal;
    type Element = MixedElement;

    fn ring_a(&self) -> MixedIdeal {
        MixedExtension::ring_a(self)
    }

    fn ring_b(&self) -> MixedIdeal {
        MixedExtension::ring_b(self)
    }

    fn zero_module(&self) -> MixedIdeal {
        MixedExtension::zero_module(self)
    }

    fn sum(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        MixedExtension::sum(self, s, t)
    }

    fn product(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        MixedExtension::product(self, s, t)
    }

    fn colon(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        MixedExtension::colon(self, s, t)
    }

    fn intersection(&self, s: &MixedIdeal, t: &MixedIdeal) -> Result<MixedIdeal> {
        MixedExtension::intersection(self, s, t)
    }

    fn intersect_a(&self, s: &MixedIdeal) -> MixedIdeal {
        MixedExtension::intersect_a(self, s)
    }

    fn is_subset(&self, s: &MixedIdeal, t: &MixedIdeal) -> bool {
        MixedExtension::is_subset(self, s, t)
    }

    fn is_ideal(&self, s: &MixedIdeal) -> bool {
        MixedExtension::is_ideal(self, s)
    }

    fn contains(&self, s: &MixedIdeal, x: &MixedElement) -> bool {
        MixedExtension::contains(self, s, x)
    }

    fn generators(&self, s: &MixedIdeal) -> Option<Vec<MixedElement>> {
        MixedExtension::generators(self, s)
    }

    fn generated(&self, gens: &[MixedElement]) -> MixedIdeal {
        MixedExtension::generated(self, gens)
    }

    fn relevant_maximals(&self, modules: &[&MixedIdeal]) -> Result<Vec<MixedMaximal>> {
        let mut out = Vec::new();
        for (i, f) in self.flavors().iter().enumerate() {
            let mut primes = BTreeSet::new();
            for m in modules {
                slot_primes(f, &m.slots[i], &mut primes)?;
            }
            let used: Vec<u64> = primes.iter().copied().collect();
            primes.insert(f.generic_prime(&used));
            out.extend(primes.into_iter().map(|prime| MixedMaximal::Slot { slot: i, prime }));
        }
        out.extend(maximal_ideals(self.tail().a()).into_iter().map(MixedMaximal::Tail));
        Ok(out)
    }

    fn maximal_ideal(&self, m: &MixedMaximal) -> MixedIdeal {
        let mut ideal = MixedExtension::ring_a(self);
        match m {
            MixedMaximal::Slot { slot, prime } => {
                let f = &self.flavors()[*slot];
                ideal.slots[*slot] = SlotModule::fractional(f, &Q::from_integer(*prime as i128));
            }
            MixedMaximal::Tail(spot) => ideal.tail = Submodule::ideal_from_a_set(self.tail(), &spot.members),
        }
        ideal
    }

    fn support(&self, a: &MixedIdeal) -> Result<Vec<MixedMaximal>> {
        if !self.is_ideal(a) {
            return Err(AlgebraError::NotIntegral);
        }
        let mut out = Vec::new();
        for (i, (f, m)) in self.flavors().iter().zip(&a.slots).enumerate() {
            match (f, m) {
                (SlotFlavor::Rationals, SlotModule::Zero) => out.push(MixedMaximal::Slot { slot: i, prime: 0 }),
                (_, SlotModule::Zero) => {
                    return Err(AlgebraError::Unsupported(format!("slot {i} is zero: support is infinite")))
                }
                (_, SlotModule::Fractional(q)) => {
                    let primes = prime_divisors(q.numer().unsigned_abs(), DEFAULT_FACTOR_BOUND)?;
                    out.extend(primes.into_iter().filter(|&p| f.admits(p)).map(|prime| MixedMaximal::Slot { slot: i, prime }));
                }
                (_, SlotModule::Everything) => return Err(AlgebraError::NotIntegral),
            }
        }
        let set = a.tail.a_set().ok_or(AlgebraError::NotIntegral)?;
        out.extend(
            maximal_ideals(self.tail().a()).into_iter().filter(|m| set.is_subset(&m.members)).map(MixedMaximal::Tail),
        );
        Ok(out)
    }

    fn local_shape(&self, a: &MixedIdeal, m: &MixedMaximal) -> Result<LocalShape> {
        match m {
            MixedMaximal::Slot { slot, .. } => Ok(match a.slots[*slot] {
                SlotModule::Zero => LocalShape::Zero,
                SlotModule::Fractional(_) => LocalShape::FreeRankOne,
                SlotModule::Everything => return Err(AlgebraError::NotIntegral),
            }),
            MixedMaximal::Tail(spot) => self.tail().local_shape(&a.tail, spot),
        }
    }

    fn locally_equal(&self, a: &MixedIdeal, b: &MixedIdeal, m: &MixedMaximal) -> Result<bool> {
        match m {
            MixedMaximal::Slot { slot, prime } => Ok(a.slots[*slot].valuation(*prime) == b.slots[*slot].valuation(*prime)),
            MixedMaximal::Tail(spot) => self.tail().locally_equal(&a.tail, &b.tail, spot),
        }
    }

    fn unit_certificate(&self, s: &MixedIdeal, t: &MixedIdeal) -> Option<Vec<(MixedElement, MixedElement)>> {
        let mut pairs = Vec::new();
        for i in 0..self.rank() {
            pairs.extend(self.slot_certificate(i, s, t)?);
        }
        let tail = self.tail().unit_certificate(&s.tail, &t.tail)?;
        pairs.extend(tail.into_iter().map(|(x, z)| (self.tail_element(x), self.tail_element(z))));
        Some(pairs)
    }

    fn check_certificate(&self, s: &MixedIdeal, t: &MixedIdeal, pairs: &[(MixedElement, MixedElement)]) -> bool {
        let total = pairs.iter().fold(self.zero(), |acc, (x, z)| self.add(&acc, &self.mul(x, z)));
        total == self.one() && pairs.iter().all(|(x, z)| self.contains(s, x) && self.contains(t, z))
    }

    fn comaximal_split(&self, a: &MixedIdeal, b: &MixedIdeal) -> Option<(MixedElement, MixedElement)> {
        let (mut x, mut y) = (self.zero(), self.zero());
        for (i, f) in self.flavors().iter().enumerate() {
            let (u, v) = match (&a.slots[i], &b.slots[i]) {
                (SlotModule::Zero, SlotModule::Zero) => return None,
                (SlotModule::Zero, m) => (Q::zero(), m.contains(f, &Q::one()).then_some(Q::one())?),
                (m, SlotModule::Zero) => (m.contains(f, &Q::one()).then_some(Q::one())?, Q::zero()),
                (SlotModule::Fractional(p), SlotModule::Fractional(q)) => {
                    let (g, s, t) = ext_gcd(*p.numer(), *q.numer());
                    let g = Q::from_integer(g);
                    if !f.is_unit(&g) {
                        return None;
                    }
                    (Q::from_integer(s) * Q::from_integer(*p.numer()) / g, Q::from_integer(t) * Q::from_integer(*q.numer()) / g)
                }
                _ => (Q::one(), Q::zero()),
            };
            x.slots[i] = u;
            y.slots[i] = v;
        }
        let (tx, ty) = self.tail().comaximal_split(&a.tail, &b.tail)?;
        x.tail = tx;
        y.tail = ty;
        (self.contains(a, &x) && self.contains(b, &y)).then_some((x, y))
    }

    fn regular_element(&self, a: &MixedIdeal) -> Option<MixedElement> {
        let mut x = self.zero();
        for (i, m) in a.slots.iter().enumerate() {
            x.slots[i] = *m.value()?;
        }
        x.tail = self.tail().regular_element(&a.tail)?;
        Some(x)
    }

    fn element_outside(&self, a: &MixedIdeal, m: &MixedMaximal) -> Option<MixedElement> {
        match m {
            MixedMaximal::Slot { slot, prime } => {
                let q = *a.slots[*slot].value()?;
                let inside = *prime != 0 && a.slots[*slot].valuation(*prime).is_some_and(|v| v > 0);
                (!inside).then(|| self.slot_element(*slot, q))
            }
            MixedMaximal::Tail(spot) => Some(self.tail_element(self.tail().element_outside(&a.tail, spot)?)),
        }
    }

    fn ideal_sweep(&self) -> Result<Vec<MixedIdeal>> {
        let per_slot: Vec<Vec<Q>> = self.flavors().iter().map(|f| self.slot_values(f)).collect::<Result<_>>()?;
        let tails: Vec<Submodule> =
            all_ideals(self.tail().a()).iter().map(|s| Submodule::ideal_from_a_set(self.tail(), s)).collect();
        let total: usize = per_slot.iter().map(Vec::len).product::<usize>() * tails.len();
        let stride = total.div_ceil(self.sweep.max_ideals.max(1)).max(1);
        let mut out = Vec::new();
        for k in (0..total).step_by(stride) {
            let mut rest = k;
            let t = rest % tails.len();
            rest /= tails.len();
            let mut slots = Vec::with_capacity(self.rank());
            for (i, values) in per_slot.iter().enumerate() {
                let q = values[rest % values.len()];
                rest /= values.len();
                slots.push(SlotModule::fractional(&self.flavors()[i], &q));
            }
            out.push(self.from_parts(slots, tails[t].clone()));
        }
        Ok(out)
    }

    fn is_finite_universe(&self) -> bool {
        self.rank() == 0
    }

    fn describe_module(&self, s: &MixedIdeal) -> String {
        MixedExtension::describe_module(self, s)
    }

    fn describe_maximal(&self, m: &MixedMaximal) -> String {
        MixedExtension::describe_maximal(self, m)
    }

    fn describe_element(&self, x: &MixedElement) -> String {
        self.display(x)
    }
}
