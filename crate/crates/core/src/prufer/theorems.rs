//! Invertibility of regular locally principal ideals against finite character.

use super::predicates::{has_finite_character, is_almost_prufer, regular_sweep};
use crate::error::{AlgebraError, Result};
use crate::mixed::{total_quotient_ring, MixedRing, SweepBounds};
use crate::props::{is_b_invertible, is_locally_principal, PropertyVerdict, RingUniverse, Witness};

pub const DESK_SCALE_NOTE: &str =
    "direction (i) ⇒ (ii) is not falsifiable here: every representable extension has finite character";

/// (i) every `B`-regular locally principal ideal is `B`-invertible;
/// (ii) finite character. Asserts (ii) ⇒ (i) always and the biconditional
/// when `A ⊆ B` is almost Prüfer.
pub fn verify_main_theorem<U: RingUniverse>(u: &U) -> Result<PropertyVerdict> {
    let almost = is_almost_prufer(u)?;
    let mut side_i = true;
    let mut witness = None;
    let mut checked = 0;
    for a in regular_sweep(u)? {
        if !is_locally_principal(u, &a)?.holds {
            continue;
        }
        checked += 1;
        if !is_b_invertible(u, &a)?.0.holds {
            side_i = false;
            witness = Some(Witness::Text { value: u.describe_module(&a) });
            break;
        }
    }
    let side_ii = has_finite_character(u)?;
    let holds = if almost.holds { side_i == side_ii.holds } else { !side_ii.holds || side_i };
    let mut verdict = PropertyVerdict::new("main_theorem", holds)
        .vacuous(almost.vacuous)
        .maybe_witness(witness)
        .note(format!("(i) = {side_i} over {checked} regular locally principal ideals"))
        .note(format!("(ii) = {}", side_ii.holds))
        .note(DESK_SCALE_NOTE);
    if !almost.holds {
        verdict = verdict.note(AlgebraError::NotAlmostPrufer.to_string());
    }
    Ok(verdict)
}

/// The main theorem on `A ⊆ T(A)` for a Prüfer ring `A`.
pub fn verify_prufer_ring_corollary(ring: &MixedRing, sweep: SweepBounds) -> Result<PropertyVerdict> {
    let ext = total_quotient_ring(ring).with_sweep(sweep);
    if !is_almost_prufer(&ext)?.holds {
        return Err(AlgebraError::NotPruferRing);
    }
    let verdict = verify_main_theorem(&ext)?;
    Ok(PropertyVerdict { name: "prufer_ring_corollary".into(), ..verdict })
}
