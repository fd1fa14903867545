//! [`RingUniverse`] for extensions of finite rings.

use std::sync::Arc;

use super::universe::RingUniverse;
use super::verdict::LocalShape;
use crate::error::{AlgebraError, Result};
use crate::finite::localize::cached_localization;
use crate::finite::submodule::TrackedSpan;
use crate::finite::{all_ideals, maximal_ideals, Extension, PrimeSpot, Submodule};

impl RingUniverse for Arc<Extension> {
    type Module = Submodule;
    type Maximal = PrimeSpot;
    type Element = usize;

    fn ring_a(&self) -> Submodule {
        Submodule::ring_a(self)
    }

    fn ring_b(&self) -> Submodule {
        Submodule::ring_b(self)
    }

    fn zero_module(&self) -> Submodule {
        Submodule::zero(self)
    }

    fn sum(&self, s: &Submodule, t: &Submodule) -> Result<Submodule> {
        s.sum(t)
    }

    fn product(&self, s: &Submodule, t: &Submodule) -> Result<Submodule> {
        s.product(t)
    }

    fn colon(&self, s: &Submodule, t: &Submodule) -> Result<Submodule> {
        s.colon(t)
    }

    fn intersection(&self, s: &Submodule, t: &Submodule) -> Result<Submodule> {
        s.intersection(t)
    }

    fn intersect_a(&self, s: &Submodule) -> Submodule {
        s.intersect_a()
    }

    fn is_subset(&self, s: &Submodule, t: &Submodule) -> bool {
        s.is_subset(t)
    }

    fn is_ideal(&self, s: &Submodule) -> bool {
        s.is_ideal()
    }

    fn contains(&self, s: &Submodule, x: &usize) -> bool {
        s.contains(*x)
    }

    fn generators(&self, s: &Submodule) -> Option<Vec<usize>> {
        Some(s.generators().to_vec())
    }

    fn generated(&self, gens: &[usize]) -> Submodule {
        Submodule::closure(self, gens)
    }

    fn relevant_maximals(&self, _modules: &[&Submodule]) -> Result<Vec<PrimeSpot>> {
        Ok(maximal_ideals(self.a()))
    }

    fn maximal_ideal(&self, m: &PrimeSpot) -> Submodule {
        Submodule::ideal_from_a_set(self, &m.members)
    }

    fn support(&self, a: &Submodule) -> Result<Vec<PrimeSpot>> {
        let set = a.a_set().ok_or(AlgebraError::NotIntegral)?;
        Ok(maximal_ideals(self.a()).into_iter().filter(|m| set.is_subset(&m.members)).collect())
    }

    fn local_shape(&self, a: &Submodule, m: &PrimeSpot) -> Result<LocalShape> {
        let set = a.a_set().ok_or(AlgebraError::NotIntegral)?;
        let loc = cached_localization(self, &m.members)?;
        let image = loc.image(&set);
        Ok(if image.count_ones(..) == 1 {
            LocalShape::Zero
        } else if image.contains(loc.one()) {
            // a non-zero-divisor of a finite ring is a unit
            LocalShape::FreeRankOne
        } else if loc.principal_generator(&image).is_some() {
            LocalShape::PrincipalWithTorsion
        } else {
            LocalShape::NotPrincipal
        })
    }

    fn locally_equal(&self, a: &Submodule, b: &Submodule, m: &PrimeSpot) -> Result<bool> {
        let sa = a.a_set().ok_or(AlgebraError::NotIntegral)?;
        let sb = b.a_set().ok_or(AlgebraError::NotIntegral)?;
        let loc = cached_localization(self, &m.members)?;
        Ok(loc.image(&sa) == loc.image(&sb))
    }

    fn unit_certificate(&self, s: &Submodule, t: &Submodule) -> Option<Vec<(usize, usize)>> {
        let b = self.b();
        let scalars = self.scalars();
        let mut vectors = Vec::new();
        let mut origin = Vec::new();
        for (i, &si) in s.generators().iter().enumerate() {
            for (j, &tj) in t.generators().iter().enumerate() {
                let st = b.mul(si, tj);
                for (k, &c) in scalars.iter().enumerate() {
                    vectors.push(b.mul(c, st));
                    origin.push((i, j, k));
                }
            }
        }
        let counts = TrackedSpan::build(b, &vectors).express(b.one(), vectors.len())?;
        // coefficient c_ij ∈ A for each generator pair
        let mut coeff = vec![vec![b.zero(); t.generators().len()]; s.generators().len()];
        for (v, &count) in counts.iter().enumerate() {
            let (i, j, k) = origin[v];
            for _ in 0..count {
                coeff[i][j] = b.add(coeff[i][j], scalars[k]);
            }
        }
        let mut pairs = Vec::new();
        for (i, &si) in s.generators().iter().enumerate() {
            for (j, &tj) in t.generators().iter().enumerate() {
                let alpha = b.mul(coeff[i][j], si);
                if alpha != b.zero() {
                    pairs.push((alpha, tj));
                }
            }
        }
        Some(pairs)
    }

    fn check_certificate(&self, s: &Submodule, t: &Submodule, pairs: &[(usize, usize)]) -> bool {
        let b = self.b();
        let total = pairs.iter().fold(b.zero(), |acc, &(x, z)| b.add(acc, b.mul(x, z)));
        total == b.one() && pairs.iter().all(|&(x, z)| s.contains(x) && t.contains(z))
    }

    fn comaximal_split(&self, a: &Submodule, c: &Submodule) -> Option<(usize, usize)> {
        let b = self.b();
        a.members().ones().map(|x| (x, b.sub(b.one(), x))).find(|&(_, y)| c.contains(y))
    }

    fn regular_element(&self, a: &Submodule) -> Option<usize> {
        a.members().ones().find(|&x| self.in_a(x).is_some_and(|i| self.a().is_regular(i)))
    }

    fn element_outside(&self, a: &Submodule, m: &PrimeSpot) -> Option<usize> {
        a.members().ones().find(|&x| self.in_a(x).is_some_and(|i| !m.contains(i)))
    }

    fn ideal_sweep(&self) -> Result<Vec<Submodule>> {
        Ok(all_ideals(self.a()).iter().map(|set| Submodule::ideal_from_a_set(self, set)).collect())
    }

    fn is_finite_universe(&self) -> bool {
        true
    }

    fn describe_module(&self, s: &Submodule) -> String {
        s.describe()
    }

    fn describe_maximal(&self, m: &PrimeSpot) -> String {
        m.describe(self.a())
    }

    fn describe_element(&self, x: &usize) -> String {
        self.b().display(*x)
    }
}
