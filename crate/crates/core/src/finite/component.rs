//! Ambient component rings `Z[x]/(p^k, f)` and their products.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{AlgebraError, Result};

/// Largest admissible `p^k`; keeps coefficient products inside `u64`.
const MAX_MODULUS: u64 = 1 << 16;

/// The component ring "integers mod p^k adjoined a root of the monic `f`".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientComponent {
    p: u64,
    k: u32,
    modulus: u64,
    /// Coefficients of `f`, lowest degree first, leading coefficient 1.
    f: Vec<u64>,
}

impl AmbientComponent {
    pub fn new(p: u64, k: u32, f: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidComponent(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidComponent("exponent k must be ≥ 1".into()));
        }
        let modulus = (p as u128)
            .checked_pow(k)
            .filter(|&m| m <= MAX_MODULUS as u128)
            .ok_or_else(|| AlgebraError::InvalidComponent(format!("{p}^{k} is too large")))?
            as u64;
        if f.len() < 2 || f.len() > 4 {
            return Err(AlgebraError::InvalidComponent(format!(
                "modulus polynomial must have degree 1..=3, got {} coefficients",
                f.len()
            )));
        }
        let f: Vec<u64> = f.iter().map(|&c| c.rem_euclid(modulus as i64) as u64).collect();
        if *f.last().unwrap() != 1 % modulus {
            return Err(AlgebraError::InvalidComponent(format!(
                "modulus polynomial {f:?} is not monic mod {modulus}"
            )));
        }
        Ok(Self { p, k, modulus, f })
    }

    /// `Z/p^k`, i.e. `f = x`.
    pub fn integers(p: u64, k: u32) -> Result<Self> {
        Self::new(p, k, &[0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn polynomial(&self) -> &[u64] {
        &self.f
    }

    pub fn cardinality(&self) -> u128 {
        (self.modulus as u128).pow(self.degree() as u32)
    }

    fn add(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        for i in 0..self.degree() {
            out[i] = ((a[i] as u64 + b[i] as u64) % self.modulus) as u32;
        }
    }

    fn neg(&self, a: &[u32], out: &mut [u32]) {
        for i in 0..self.degree() {
            out[i] = ((self.modulus - a[i] as u64) % self.modulus) as u32;
        }
    }

    fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let d = self.degree();
        let m = self.modulus;
        let mut t = [0u64; 6];
        for i in 0..d {
            for j in 0..d {
                t[i + j] = (t[i + j] + a[i] as u64 * b[j] as u64) % m;
            }
        }
        // reduce by the monic f: x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        for deg in (d..2 * d - 1).rev() {
            let c = t[deg];
            if c == 0 {
                continue;
            }
            t[deg] = 0;
            for j in 0..d {
                let sub = c * self.f[j] % m;
                t[deg - d + j] = (t[deg - d + j] + m - sub) % m;
            }
        }
        for i in 0..d {
            out[i] = t[i] as u32;
        }
    }

    fn fmt_coords(&self, c: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            return write!(f, "{}", c[0]);
        }
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// An element of an [`Ambient`]: all coordinates concatenated, each reduced.
///
/// Ordering is lexicographic on coordinates, which fixes every enumeration order
/// in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingElement(pub Vec<u32>);

impl RingElement {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

/// Product of ambient components; the common home of every finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    components: Vec<AmbientComponent>,
}

impl Ambient {
    pub fn new(components: Vec<AmbientComponent>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[AmbientComponent] {
        &self.components
    }

    pub fn width(&self) -> usize {
        self.components.iter().map(|c| c.degree()).sum()
    }

    pub fn cardinality(&self) -> u128 {
        self.components
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.cardinality()))
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.width()])
    }

    pub fn one(&self) -> RingElement {
        let mut v = Vec::with_capacity(self.width());
        for c in &self.components {
            v.push((1 % c.modulus) as u32);
            v.extend(std::iter::repeat_n(0, c.degree() - 1));
        }
        RingElement(v)
    }

    /// Builds an element from per-component coefficient lists, reducing each
    /// coefficient. Missing high coefficients are zero.
    pub fn element(&self, coords: &[Vec<i64>]) -> Result<RingElement> {
        if coords.len() != self.components.len() {
            return Err(AlgebraError::InvalidElement(format!(
                "expected {} components, got {}",
                self.components.len(),
                coords.len()
            )));
        }
        let mut v = Vec::with_capacity(self.width());
        for (c, cs) in self.components.iter().zip(coords) {
            if cs.len() > c.degree() {
                return Err(AlgebraError::InvalidElement(format!(
                    "component of degree {} given {} coefficients",
                    c.degree(),
                    cs.len()
                )));
            }
            for i in 0..c.degree() {
                let x = cs.get(i).copied().unwrap_or(0);
                v.push(x.rem_euclid(c.modulus as i64) as u32);
            }
        }
        Ok(RingElement(v))
    }

    /// The image of an integer under the diagonal map `Z → ambient`.
    pub fn integer(&self, n: i64) -> RingElement {
        let coords: Vec<Vec<i64>> = self.components.iter().map(|_| vec![n]).collect();
        self.element(&coords).expect("integer image is well formed")
    }

    pub fn is_valid(&self, e: &RingElement) -> bool {
        if e.0.len() != self.width() {
            return false;
        }
        let mut off = 0;
        for c in &self.components {
            if e.0[off..off + c.degree()].iter().any(|&x| x as u64 >= c.modulus) {
                return false;
            }
            off += c.degree();
        }
        true
    }

    fn apply(&self, a: &RingElement, b: &RingElement, op: impl Fn(&AmbientComponent, &[u32], &[u32], &mut [u32])) -> RingElement {
        let mut out = vec![0u32; self.width()];
        let mut off = 0;
        for c in &self.components {
            let d = c.degree();
            op(c, &a.0[off..off + d], &b.0[off..off + d], &mut out[off..off + d]);
            off += d;
        }
        RingElement(out)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.apply(a, b, |c, x, y, o| c.add(x, y, o))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.apply(a, b, |c, x, y, o| c.mul(x, y, o))
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        self.apply(a, a, |c, x, _, o| c.neg(x, o))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// Every element of the ambient in lexicographic order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<RingElement>> {
        if self.cardinality() > cap as u128 {
            return Err(AlgebraError::SizeCapExceeded { cap });
        }
        let mut radices = Vec::with_capacity(self.width());
        for c in &self.components {
            radices.extend(std::iter::repeat_n(c.modulus as u32, c.degree()));
        }
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        let mut cur = vec![0u32; self.width()];
        loop {
            out.push(RingElement(cur.clone()));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Renders an element as a tuple, e.g. `(1, 0)` or `(1+x, 3)`.
    pub fn display<'a>(&'a self, e: &'a RingElement) -> impl fmt::Display + 'a {
        DisplayElement { ambient: self, element: e }
    }
}

struct DisplayElement<'a> {
    ambient: &'a Ambient,
    element: &'a RingElement,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut off = 0;
        for (i, c) in self.ambient.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            c.fmt_coords(&self.element.0[off..off + c.degree()], f)?;
            off += c.degree();
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_components() {
        assert!(AmbientComponent::new(4, 1, &[0, 1]).is_err());
        assert!(AmbientComponent::new(2, 0, &[0, 1]).is_err());
        assert!(AmbientComponent::new(2, 1, &[1, 0, 0, 0, 1]).is_err());
        assert!(AmbientComponent::new(3, 1, &[1, 2]).is_err());
        // 4 ≡ 1 mod 3, so this is monic
        assert!(AmbientComponent::new(3, 1, &[1, 4]).is_ok());
    }

    #[test]
    fn f4_multiplication() {
        // F4 = F2[x]/(x^2+x+1): x·x = x+1
        let c = AmbientComponent::new(2, 1, &[1, 1, 1]).unwrap();
        let amb = Ambient::new(vec![c]);
        let x = amb.element(&[vec![0, 1]]).unwrap();
        assert_eq!(amb.mul(&x, &x), amb.element(&[vec![1, 1]]).unwrap());
        assert_eq!(amb.cardinality(), 4);
        assert_eq!(format!("{}", amb.display(&amb.mul(&x, &x))), "(1+x)");
    }

    #[test]
    fn galois_ring_multiplication() {
        // Z/4[x]/(x^3 - 2): x^3 = 2, x^4 = 2x
        let c = AmbientComponent::new(2, 2, &[-2, 0, 0, 1]).unwrap();
        let amb = Ambient::new(vec![c]);
        let x = amb.element(&[vec![0, 1]]).unwrap();
        let x2 = amb.mul(&x, &x);
        let x3 = amb.mul(&x2, &x);
        let x4 = amb.mul(&x3, &x);
        assert_eq!(x3, amb.element(&[vec![2]]).unwrap());
        assert_eq!(x4, amb.element(&[vec![0, 2]]).unwrap());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let amb = Ambient::new(vec![
            AmbientComponent::integers(2, 1).unwrap(),
            AmbientComponent::integers(3, 1).unwrap(),
        ]);
        let all = amb.enumerate(100).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(amb.enumerate(5).is_err());
    }
}
