//! Hypotheses (a)–(c) and conditions (i)–(ii) of the finiteness theorem for
//! posets, evaluated on explicit finite posets.

use serde::Serialize;

use super::order::FinitePoset;
use crate::error::{AlgebraError, Result};
use crate::props::{PropertyVerdict, Witness};

pub const FINITE_INSTANCE_NOTE: &str =
    "finite-instance: (i) and (ii) hold on every finite poset, so only the counting is exercised";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesesReport {
    pub a: PropertyVerdict,
    pub b: PropertyVerdict,
    pub c: PropertyVerdict,
}

impl HypothesesReport {
    pub fn all_hold(&self) -> bool {
        self.a.holds && self.b.holds && self.c.holds
    }
}

fn tuple(p: &FinitePoset, xs: &[usize]) -> Witness {
    Witness::Tuple { items: xs.iter().map(|&x| p.label(x).to_string()).collect() }
}

/// (a) every element lies below a maximal one; (b) two `Γ`-elements below
/// `b` have a `Γ`-element between them and `b`; (c) comaximal elements
/// dominate comaximal `Γ`-elements.
pub fn check_hypotheses(p: &FinitePoset) -> Result<HypothesesReport> {
    if p.gamma().count_ones(..) == 0 {
        return Err(AlgebraError::EmptyGamma);
    }
    let n = p.len();
    let maximal = p.maximal_elements();

    let mut a = PropertyVerdict::new("hypothesis_a", true);
    if let Some(x) = (0..n).find(|&x| !maximal.iter().any(|&m| p.leq(x, m))) {
        a = PropertyVerdict::new("hypothesis_a", false).with_witness(tuple(p, &[x]));
    }

    let mut b = PropertyVerdict::new("hypothesis_b", true);
    'b: for a1 in p.gamma().ones() {
        for a2 in p.gamma().ones().filter(|&a2| a2 >= a1) {
            let mut common = p.upper_set(a1).clone();
            common.intersect_with(p.upper_set(a2));
            for top in common.ones() {
                let mut between = common.clone();
                between.intersect_with(p.lower_set(top));
                between.intersect_with(p.gamma());
                if between.count_ones(..) == 0 {
                    b = PropertyVerdict::new("hypothesis_b", false).with_witness(tuple(p, &[a1, a2, top]));
                    break 'b;
                }
            }
        }
    }

    let mut c = PropertyVerdict::new("hypothesis_c", true);
    'c: for b1 in 0..n {
        for b2 in b1 + 1..n {
            if !p.are_comaximal(b1, b2) {
                continue;
            }
            let mut below1 = p.lower_set(b1).clone();
            below1.intersect_with(p.gamma());
            let mut below2 = p.lower_set(b2).clone();
            below2.intersect_with(p.gamma());
            let found = below1.ones().any(|x| below2.ones().any(|y| p.are_comaximal(x, y)));
            if !found {
                c = PropertyVerdict::new("hypothesis_c", false).with_witness(tuple(p, &[b1, b2]));
                break 'c;
            }
        }
    }
    Ok(HypothesesReport { a, b, c })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceRow {
    pub element: String,
    /// `|{x ∈ Max(Ω) : x ≥ a}|`.
    pub maximal_above: usize,
    /// Largest comaximal subset of `Γ ∩ ↑a`.
    pub largest_comaximal: usize,
    pub comaximal_subsets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub verdict: PropertyVerdict,
    pub rows: Vec<EquivalenceRow>,
}

/// Evaluates (i) and (ii) for every `a ∈ Γ` and asserts they agree.
pub fn check_equivalence(p: &FinitePoset) -> Result<EquivalenceReport> {
    let hyp = check_hypotheses(p)?;
    for v in [&hyp.a, &hyp.b, &hyp.c] {
        if !v.holds {
            return Err(AlgebraError::HypothesesFail(v.name.clone()));
        }
    }
    let maximal = p.maximal_elements();
    let mut rows = Vec::new();
    for a in p.gamma().ones() {
        let subsets = p.comaximal_subsets(a);
        rows.push(EquivalenceRow {
            element: p.label(a).to_string(),
            maximal_above: maximal.iter().filter(|&&m| p.leq(a, m)).count(),
            largest_comaximal: subsets.iter().map(Vec::len).max().unwrap_or(0),
            comaximal_subsets: subsets.len(),
        });
    }
    // both counts are finite numbers, so (i) and (ii) are both true
    let cond_i = true;
    let cond_ii = rows.iter().all(|r| r.largest_comaximal <= p.gamma().count_ones(..));
    let verdict = PropertyVerdict::new("poset_equivalence", cond_i == cond_ii)
        .note(format!("(i) = {cond_i}, (ii) = {cond_ii} over {} elements of Γ", rows.len()))
        .note(FINITE_INSTANCE_NOTE);
    Ok(EquivalenceReport { verdict, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn missing_middle_element_fails_b() {
        let p = FinitePoset::from_covers(labels(&["a1", "a2", "b"]), &[(0, 2), (1, 2)], &[0, 1]).unwrap();
        let h = check_hypotheses(&p).unwrap();
        assert!(h.a.holds && h.c.holds);
        assert!(!h.b.holds);
        assert_eq!(h.b.witness, Some(Witness::Tuple { items: labels(&["a1", "a2", "b"]) }));
        assert!(matches!(check_equivalence(&p), Err(AlgebraError::HypothesesFail(_))));
    }

    #[test]
    fn singleton() {
        let p = FinitePoset::from_covers(labels(&["a"]), &[], &[0]).unwrap();
        assert!(check_hypotheses(&p).unwrap().all_hold());
        let e = check_equivalence(&p).unwrap();
        assert!(e.verdict.holds);
        assert_eq!(e.rows[0].maximal_above, 1);
    }

    #[test]
    fn empty_gamma() {
        let p = FinitePoset::from_covers(labels(&["a"]), &[], &[]).unwrap();
        assert!(matches!(check_hypotheses(&p), Err(AlgebraError::EmptyGamma)));
    }
}
