//! The registered laws: each instance names the observations it combines.

use serde::Serialize;

use crate::corpus::{CorpusEntry, Expectation};
use crate::error::HarnessError;
use crate::eval::{render_witness, Evaluator, Ledger, PosetEvaluator, Target, Universe};

pub const LAWS: &[&str] = &[
    "golden",
    "remark_b",
    "example_diag",
    "prop_inv_flat",
    "prop_faithfully",
    "remark_a",
    "flat_oracle",
    "weak_surjectivity",
    "theorem_2_1",
    "main_theorem",
    "prufer_ring_corollary",
    "lemma_technical",
    "finite_generators",
    "regular_poset",
    "manis_consistency",
    "poset_hypotheses",
    "comaximal_enumeration",
];

/// Expands `all` and validates a comma list against [`LAWS`], keeping
/// registry order.
pub fn parse_laws(list: &str) -> Result<Vec<&'static str>, HarnessError> {
    let asked: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if asked.is_empty() {
        return Err(HarnessError::ConfigInvalid("no laws given".into()));
    }
    if let Some(bad) = asked.iter().find(|l| **l != "all" && !LAWS.contains(l)) {
        return Err(HarnessError::ConfigInvalid(format!("unknown law `{bad}`; known: all, {}", LAWS.join(", "))));
    }
    Ok(LAWS.iter().copied().filter(|l| asked.contains(&"all") || asked.contains(l)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawInstance {
    pub law: String,
    #[serde(flatten)]
    pub target: Target,
    pub holds: bool,
    pub vacuous: bool,
    /// Indices into the entry's observation list.
    pub observations: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LawInstance {
    fn new(law: &str, target: Target, holds: bool, observations: Vec<usize>) -> Self {
        Self { law: law.into(), target, holds, vacuous: false, observations, notes: vec![] }
    }

    fn vacuous(mut self, v: bool) -> Self {
        self.vacuous = v;
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

/// The law an entry's expectations are checked under.
pub fn expectation_law(entry: &CorpusEntry) -> &str {
    entry.group.as_deref().unwrap_or("golden")
}

fn check_expectation(law: &str, ledger: &Ledger, i: usize, exp: &Expectation) -> LawInstance {
    let v = ledger.verdict(i);
    let rendered = v.witness.as_ref().map(render_witness);
    let mut out = LawInstance::new(law, exp.target(), v.holds == exp.holds, vec![i]);
    if v.holds != exp.holds {
        out = out.note(format!("{} expected {}, observed {}", exp.prop, exp.holds, v.holds));
    }
    if let Some(w) = &exp.witness {
        if rendered.as_deref() != Some(w.as_str()) {
            out.holds = false;
            out = out.note(format!("{} expected witness {w:?}, observed {:?}", exp.prop, rendered.unwrap_or_default()));
        }
    }
    out
}

fn target_exists<U: Universe>(ev: &Evaluator<'_, U>, t: Target) -> bool {
    let s = ev.subject;
    match t {
        Target::Instance => true,
        Target::Ideal(i) => i < s.ideals.len(),
        Target::Family(k) => k < s.families.len(),
        Target::Forced(k) => k < s.forced.len(),
    }
}

/// Applies `laws` to a ring entry.
pub fn apply_ring<U: Universe>(ev: &mut Evaluator<'_, U>, entry: &CorpusEntry, laws: &[&str]) -> Vec<LawInstance> {
    let finite = ev.u().is_finite_universe() && ev.u().universe_name() == "finite";
    let n_ideals = ev.subject.ideals.len();
    let mut out = Vec::new();
    for &law in laws {
        match law {
            "golden" | "remark_b" | "example_diag" => {
                if expectation_law(entry) != law {
                    continue;
                }
                for exp in &entry.expected {
                    let t = exp.target();
                    if !target_exists(ev, t) {
                        out.push(LawInstance::new(law, t, false, vec![]).note(format!("{} names a missing target", exp.prop)));
                        continue;
                    }
                    let i = ev.get(&exp.prop, t);
                    out.push(check_expectation(law, &ev.ledger, i, exp));
                }
                if law == "example_diag" {
                    let i = ev.get("weakly_surjective", Target::Instance);
                    let v = ev.verdict(i);
                    let valid = match &v.witness {
                        Some(w) => ev.u().validate_weak_witness(w),
                        None => Some(v.holds),
                    };
                    let li = LawInstance::new(law, Target::Instance, valid != Some(false), vec![i]);
                    out.push(li.note(format!("witness re-derived: {valid:?}")));
                }
            }
            "prop_inv_flat" => {
                for k in 0..n_ideals {
                    let t = Target::Ideal(k);
                    let inv = ev.get("b_invertible", t);
                    let reg = ev.get("b_regular", t);
                    let flat = ev.get("flat", t);
                    let (inv_h, reg_h, flat_h) = (ev.verdict(inv).holds, ev.verdict(reg).holds, ev.verdict(flat).holds);
                    let mut obs = vec![inv, reg, flat];
                    let mut holds = inv_h == (reg_h && flat_h);
                    if inv_h {
                        let pou = ev.get("partition_of_unity", t);
                        holds &= ev.verdict(pou).holds;
                        obs.push(pou);
                    }
                    out.push(LawInstance::new(law, t, holds, obs));
                }
            }
            "prop_faithfully" => {
                for k in 0..n_ideals {
                    let t = Target::Ideal(k);
                    let reg = ev.get("b_regular", t);
                    let ff = ev.get("faithfully_flat", t);
                    let lp = ev.get("locally_principal", t);
                    let regular = ev.verdict(reg).holds;
                    let holds = !regular || ev.verdict(ff).holds == ev.verdict(lp).holds;
                    out.push(LawInstance::new(law, t, holds, vec![reg, ff, lp]).vacuous(!regular));
                }
            }
            "remark_a" => {
                for k in 0..n_ideals {
                    let t = Target::Ideal(k);
                    let ff = ev.get("faithfully_flat", t);
                    let lp = ev.get("locally_principal", t);
                    let ff_h = ev.verdict(ff).holds;
                    let holds = !ff_h || ev.verdict(lp).holds;
                    out.push(LawInstance::new(law, t, holds, vec![ff, lp]).vacuous(!ff_h));
                }
            }
            "flat_oracle" => {
                if !finite {
                    continue;
                }
                for k in 0..n_ideals {
                    let t = Target::Ideal(k);
                    let oracle = ev.get("flatness_oracle", t);
                    let flat = ev.get("flat", t);
                    let (o, f) = (ev.verdict(oracle), ev.verdict(flat));
                    out.push(LawInstance::new(law, t, o.vacuous || o.holds == f.holds, vec![oracle, flat]).vacuous(o.vacuous));
                }
            }
            "weak_surjectivity" => {
                let cross = ev.get("weak_surjectivity_crosscheck", Target::Instance);
                let ws = ev.get("weakly_surjective", Target::Instance);
                let mut holds = ev.verdict(cross).holds;
                let mut li_notes = Vec::new();
                if let Some(w) = ev.verdict(ws).witness.clone() {
                    if let Some(valid) = ev.u().validate_weak_witness(&w) {
                        holds &= valid;
                        li_notes.push(format!("witness re-derived: {valid}"));
                    }
                }
                let mut li = LawInstance::new(law, Target::Instance, holds, vec![cross, ws]);
                li.notes = li_notes;
                out.push(li);
            }
            "theorem_2_1" | "main_theorem" => {
                let i = ev.get(law, Target::Instance);
                let v = ev.verdict(i);
                out.push(LawInstance::new(law, Target::Instance, v.holds, vec![i]).vacuous(v.vacuous));
            }
            "prufer_ring_corollary" => {
                if finite {
                    continue;
                }
                let i = ev.get(law, Target::Instance);
                let v = ev.verdict(i);
                out.push(LawInstance::new(law, Target::Instance, v.holds, vec![i]).vacuous(v.vacuous));
            }
            "lemma_technical" => {
                for k in 0..ev.subject.families.len() {
                    let t = Target::Family(k);
                    let i = ev.get(law, t);
                    let v = ev.verdict(i);
                    out.push(LawInstance::new(law, t, v.holds, vec![i]).vacuous(v.vacuous));
                }
            }
            "finite_generators" => {
                for k in 0..n_ideals {
                    let t = Target::Ideal(k);
                    let i = ev.get(law, t);
                    let v = ev.verdict(i);
                    out.push(LawInstance::new(law, t, v.holds, vec![i]).vacuous(v.vacuous));
                }
                for k in 0..ev.subject.forced.len() {
                    let t = Target::Forced(k);
                    let i = ev.get("finite_generators_forced", t);
                    let v = ev.verdict(i);
                    out.push(LawInstance::new(law, t, v.holds, vec![i]).vacuous(v.vacuous));
                }
            }
            "regular_poset" => {
                let i = ev.get(law, Target::Instance);
                let v = ev.verdict(i);
                out.push(LawInstance::new(law, Target::Instance, v.holds, vec![i]).vacuous(v.vacuous));
            }
            "manis_consistency" => {
                if ev.subject.valuation.is_none() || entry.expected.iter().any(|e| e.prop == "manis_valuation") {
                    continue;
                }
                let i = ev.get("manis_valuation", Target::Instance);
                let v = ev.verdict(i);
                out.push(LawInstance::new(law, Target::Instance, v.holds, vec![i]).vacuous(v.vacuous));
            }
            _ => {}
        }
    }
    out
}

/// Applies `laws` to a poset entry.
pub fn apply_poset(ev: &mut PosetEvaluator<'_>, entry: &CorpusEntry, laws: &[&str]) -> Vec<LawInstance> {
    let mut out = Vec::new();
    for &law in laws {
        match law {
            "golden" => {
                if expectation_law(entry) != law {
                    continue;
                }
                for exp in &entry.expected {
                    if exp.target() != Target::Instance {
                        out.push(LawInstance::new(law, exp.target(), false, vec![]).note("posets only have instance targets"));
                        continue;
                    }
                    let i = ev.get(&exp.prop);
                    out.push(check_expectation(law, &ev.ledger, i, exp));
                }
            }
            "poset_hypotheses" => {
                let h = ev.get("hypotheses");
                let e = ev.get("equivalence");
                let hyp = ev.verdict(h).holds;
                let holds = !hyp || ev.verdict(e).holds;
                out.push(LawInstance::new(law, Target::Instance, holds, vec![h, e]).vacuous(!hyp));
            }
            "comaximal_enumeration" => {
                let i = ev.get(law);
                let v = ev.verdict(i);
                out.push(LawInstance::new(law, Target::Instance, v.holds, vec![i]).vacuous(v.vacuous));
            }
            _ => {}
        }
    }
    out
}
