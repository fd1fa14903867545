//! Weak surjectivity, the Prüfer and almost-Prüfer properties, the
//! characterization linking them, and finite character.

use super::universe::PruferUniverse;
use crate::error::Result;
use crate::props::{is_b_invertible, is_b_regular, PropertyVerdict, RingUniverse, Witness};

/// `A_[m] = B` for every maximal `m` with `mB ≠ B`.
pub fn is_weakly_surjective<U: PruferUniverse>(u: &U) -> Result<PropertyVerdict> {
    let b = u.ring_b();
    let mut checked = 0;
    for m in u.representative_maximals()? {
        if u.product(&u.maximal_ideal(&m), &b)? == b {
            continue;
        }
        checked += 1;
        if let Some(x) = u.outside_generalized_localization(&m)? {
            return Ok(PropertyVerdict::new("weakly_surjective", false).with_witness(Witness::ElementAt {
                ideal: u.describe_maximal(&m),
                value: u.describe_element(&x),
            }));
        }
    }
    Ok(PropertyVerdict::new("weakly_surjective", true)
        .vacuous(checked == 0)
        .note(format!("{checked} maximal ideals with mB ≠ B")))
}

/// The membership form of weak surjectivity against `A_m = B_{A∖m}` built
/// from fraction rings. Holds when both agree at every maximal ideal with
/// `mB ≠ B`; vacuous when the universe offers no fraction-ring construction.
pub fn weak_surjectivity_crosscheck<U: PruferUniverse>(u: &U) -> Result<PropertyVerdict> {
    let b = u.ring_b();
    let mut compared = 0;
    for m in u.representative_maximals()? {
        if u.product(&u.maximal_ideal(&m), &b)? == b {
            continue;
        }
        let Some(agree) = u.localizations_agree_at(&m) else { continue };
        compared += 1;
        let membership = u.outside_generalized_localization(&m)?.is_none();
        if agree != membership {
            return Ok(PropertyVerdict::new("weak_surjectivity_crosscheck", false)
                .with_witness(Witness::Maximal { ideal: u.describe_maximal(&m) })
                .note(format!("membership form {membership}, fraction rings {agree}")));
        }
    }
    Ok(PropertyVerdict::new("weak_surjectivity_crosscheck", true).vacuous(compared == 0))
}

/// `(A_[m], m_[m])` is a Manis pair in `B` at every maximal `m`.
pub fn is_prufer<U: PruferUniverse>(u: &U) -> Result<PropertyVerdict> {
    for m in u.representative_maximals()? {
        let verdict = u.manis_at(&m)?;
        if !verdict.holds {
            let value = match verdict.witness {
                Some(Witness::Element { value }) => value,
                _ => String::new(),
            };
            return Ok(PropertyVerdict::new("prufer", false)
                .with_witness(Witness::ElementAt { ideal: u.describe_maximal(&m), value }));
        }
    }
    Ok(PropertyVerdict::new("prufer", true))
}

/// The finitely generated `B`-regular ideals among the swept ideals.
pub(crate) fn regular_sweep<U: RingUniverse>(u: &U) -> Result<Vec<U::Module>> {
    let mut out = Vec::new();
    for a in u.ideal_sweep()? {
        if u.generators(&a).is_some() && is_b_regular(u, &a)?.holds {
            out.push(a);
        }
    }
    Ok(out)
}

/// Every finitely generated `B`-regular ideal of `A` is `B`-invertible.
pub fn is_almost_prufer<U: RingUniverse>(u: &U) -> Result<PropertyVerdict> {
    let a = u.ring_a();
    let regular = regular_sweep(u)?;
    let vacuous = regular.iter().all(|s| *s == a);
    for s in &regular {
        if !is_b_invertible(u, s)?.0.holds {
            return Ok(PropertyVerdict::new("almost_prufer", false)
                .with_witness(Witness::Text { value: u.describe_module(s) }));
        }
    }
    Ok(PropertyVerdict::new("almost_prufer", true)
        .vacuous(vacuous)
        .note(format!("{} B-regular ideals checked", regular.len())))
}

/// Prüfer iff weakly surjective and almost Prüfer. Holds when both sides agree.
pub fn verify_theorem_2_1<U: PruferUniverse>(u: &U) -> Result<PropertyVerdict> {
    let prufer = is_prufer(u)?;
    let weak = is_weakly_surjective(u)?;
    let almost = is_almost_prufer(u)?;
    let rhs = weak.holds && almost.holds;
    let mut verdict = PropertyVerdict::new("theorem_2_1", prufer.holds == rhs)
        .note(format!("prufer = {}", prufer.holds))
        .note(format!("weakly_surjective = {}", weak.holds))
        .note(format!("almost_prufer = {}", almost.holds));
    if prufer.holds != rhs {
        verdict = verdict.maybe_witness(prufer.witness.or(weak.witness).or(almost.witness));
    }
    Ok(verdict)
}

/// Every `B`-regular ideal lies in finitely many maximal ideals. Trivial when
/// `B` is finite: the only `B`-regular ideal is `A`.
pub fn has_finite_character<U: RingUniverse>(u: &U) -> Result<PropertyVerdict> {
    if u.is_finite_universe() {
        return Ok(PropertyVerdict::new("finite_character", true).vacuous(true).note("only A is B-regular"));
    }
    let mut verdict = PropertyVerdict::new("finite_character", true);
    let mut shown = 0;
    for a in u.ideal_sweep()? {
        if !is_b_regular(u, &a)?.holds {
            continue;
        }
        let support = u.support(&a)?;
        if shown < 8 {
            verdict = verdict.note(format!("|V({})| = {}", u.describe_module(&a), support.len()));
            shown += 1;
        }
    }
    Ok(verdict)
}
