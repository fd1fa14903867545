//! Comaximal families of `B`-invertible ideals and the ideal `i_F`.

use crate::error::{AlgebraError, Result};
use crate::props::{is_b_invertible, PropertyVerdict, RingUniverse, Witness};

/// Iteration cap for the `i_F` fixpoint.
pub const FIXPOINT_CAP: usize = 64;

/// Pairwise comaximal ideals containing `base`, with `xᵢⱼ + yᵢⱼ = 1`,
/// `xᵢⱼ ∈ bᵢ`, `yᵢⱼ ∈ bⱼ` for `i < j`.
#[derive(Debug, Clone)]
pub struct ComaximalFamily<U: RingUniverse> {
    pub base: U::Module,
    pub members: Vec<U::Module>,
    pub certificates: Vec<(usize, usize, U::Element, U::Element)>,
}

impl<U: RingUniverse> ComaximalFamily<U> {
    pub fn new(u: &U, base: U::Module, members: Vec<U::Module>) -> Result<Self> {
        for b in &members {
            if !u.is_ideal(b) || !u.is_subset(&base, b) {
                return Err(AlgebraError::NotComaximal(format!("{} does not contain the base", u.describe_module(b))));
            }
        }
        let mut certificates = Vec::new();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let (x, y) = u.comaximal_split(&members[i], &members[j]).ok_or_else(|| {
                    AlgebraError::NotComaximal(format!(
                        "{} + {} ≠ A",
                        u.describe_module(&members[i]),
                        u.describe_module(&members[j])
                    ))
                })?;
                certificates.push((i, j, x, y));
            }
        }
        Ok(Self { base, members, certificates })
    }

    /// `∏ bᵢ`, or `A` for the empty family.
    pub fn product(&self, u: &U) -> Result<U::Module> {
        self.members.iter().try_fold(u.ring_a(), |acc, b| u.product(&acc, b))
    }
}

#[derive(Debug, Clone)]
pub struct IdealFixpoint<M> {
    pub ideal: M,
    /// Least `k` with `[a : P^k] ∩ A = i_F`.
    pub stages: usize,
}

/// `i_F = ⋃ₖ [a : P^k] ∩ A` with `P` the product of the members.
pub fn compute_i_f<U: RingUniverse>(u: &U, family: &ComaximalFamily<U>) -> Result<IdealFixpoint<U::Module>> {
    let p = family.product(u)?;
    let mut current = u.intersect_a(&family.base);
    for stages in 0..FIXPOINT_CAP {
        let next = u.intersect_a(&u.colon(&current, &p)?);
        if next == current {
            return Ok(IdealFixpoint { ideal: current, stages });
        }
        current = next;
    }
    Err(AlgebraError::Unsupported(format!("i_F did not stabilize within {FIXPOINT_CAP} steps")))
}

/// `[a : ∏ bᵢ^eᵢ] ∩ A`, one factor at a time: for ideals `c ⊇ a` and `b`,
/// `[c : b²] ∩ A = [[c : b] ∩ A : b] ∩ A`, so no power is ever formed.
pub fn colon_by_powers<U: RingUniverse>(u: &U, family: &ComaximalFamily<U>, exponents: &[usize]) -> Result<U::Module> {
    let mut c = u.intersect_a(&family.base);
    for (b, &e) in family.members.iter().zip(exponents) {
        for _ in 0..e {
            let next = u.intersect_a(&u.colon(&c, b)?);
            if next == c {
                break;
            }
            c = next;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct LemmaReport<M> {
    pub i_f: IdealFixpoint<M>,
    /// Exponent of each member in a finite product realizing `i_F`, or
    /// `None` when `i_F` has no finite generating set.
    pub exponents: Option<Vec<usize>>,
    pub part_a: PropertyVerdict,
    pub part_b: PropertyVerdict,
}

impl<M> LemmaReport<M> {
    pub fn holds(&self) -> bool {
        self.part_a.holds && self.part_b.holds
    }
}

/// Part (a): `i_F = [a : ∏G]` for a finite multiset `G` of members.
/// Part (b): locally at each relevant maximal `m`, `i_F` agrees with `a` when
/// no member lies in `m`, and with `[a : b₀^∞] ∩ A` when `b₀` is the member in `m`.
pub fn verify_lemma_technical<U: RingUniverse>(u: &U, family: &ComaximalFamily<U>) -> Result<LemmaReport<U::Module>> {
    for b in &family.members {
        if !is_b_invertible(u, b)?.0.holds {
            return Err(AlgebraError::NotInvertibleMember(u.describe_module(b)));
        }
    }
    let i_f = compute_i_f(u, family)?;
    let n = family.members.len();

    let (exponents, part_a) = if u.generators(&i_f.ideal).is_some() {
        let mut e = vec![i_f.stages; n];
        for j in 0..n {
            while e[j] > 0 {
                e[j] -= 1;
                if colon_by_powers(u, family, &e)? != i_f.ideal {
                    e[j] += 1;
                    break;
                }
            }
        }
        let holds = colon_by_powers(u, family, &e)? == i_f.ideal;
        let rendered = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, k)| format!("{}^{}", u.describe_module(&family.members[j]), k))
            .collect();
        (Some(e), PropertyVerdict::new("lemma_technical_a", holds).with_witness(Witness::Tuple { items: rendered }))
    } else {
        (None, PropertyVerdict::new("lemma_technical_a", true).vacuous(true).note("i_F is not finitely generated"))
    };

    let mut modules: Vec<&U::Module> = vec![&family.base, &i_f.ideal];
    modules.extend(family.members.iter());
    let mut part_b = PropertyVerdict::new("lemma_technical_b", true);
    let mut checked = 0;
    let mut single_colon_misses = 0;
    for m in u.relevant_maximals(&modules)? {
        let mm = u.maximal_ideal(&m);
        let inside: Vec<&U::Module> = family.members.iter().filter(|b| u.is_subset(b, &mm)).collect();
        let target = match inside.as_slice() {
            [] => family.base.clone(),
            [b0] => {
                let single = u.intersect_a(&u.colon(&family.base, b0)?);
                let saturated = saturate(u, &single, b0)?;
                if !u.locally_equal(&single, &saturated, &m)? {
                    single_colon_misses += 1;
                }
                saturated
            }
            _ => return Err(AlgebraError::NotComaximal(format!("two members lie in {}", u.describe_maximal(&m)))),
        };
        checked += 1;
        if !u.locally_equal(&i_f.ideal, &target, &m)? {
            part_b = PropertyVerdict::new("lemma_technical_b", false)
                .with_witness(Witness::Maximal { ideal: u.describe_maximal(&m) });
            break;
        }
    }
    let part_b = part_b
        .note(format!("{checked} maximal ideals checked"))
        .note(format!("[a : b₀] differs from [a : b₀^∞] locally at {single_colon_misses} of them"));
    Ok(LemmaReport { i_f, exponents, part_a, part_b })
}

/// `[c : b^∞] ∩ A`.
fn saturate<U: RingUniverse>(u: &U, c: &U::Module, b: &U::Module) -> Result<U::Module> {
    let mut current = c.clone();
    for _ in 0..FIXPOINT_CAP {
        let next = u.intersect_a(&u.colon(&current, b)?);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(AlgebraError::Unsupported(format!("[c : b^k] did not stabilize within {FIXPOINT_CAP} steps")))
}
