//! Property evaluation with memoized, replayable observations.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use extalg_core::finite::{generalized_localization, maximal_ideals, Extension, Submodule};
use extalg_core::mixed::{MixedExtension, SlotFlavor};
use extalg_core::poset::{build_regular_ideal_poset, check_equivalence, check_hypotheses, FinitePoset};
use extalg_core::props::*;
use extalg_core::prufer::*;
use extalg_core::{AlgebraError, Result};

use crate::instance::Subject;

/// What an observation is about: the whole instance or one listed object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "on", content = "index", rename_all = "snake_case")]
pub enum Target {
    Instance,
    Ideal(usize),
    Family(usize),
    Forced(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub prop: String,
    #[serde(flatten)]
    pub target: Target,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub verdict: PropertyVerdict,
}

pub const IDEAL_PROPS: &[&str] = &[
    "b_regular",
    "b_invertible",
    "partition_of_unity",
    "flat",
    "faithfully_flat",
    "locally_principal",
    "regular_ideal",
    "idempotent",
    "flatness_oracle",
    "finite_generators",
];

pub const INSTANCE_PROPS: &[&str] = &[
    "weakly_surjective",
    "weak_surjectivity_crosscheck",
    "prufer",
    "almost_prufer",
    "theorem_2_1",
    "finite_character",
    "main_theorem",
    "prufer_ring_corollary",
    "manis_valuation",
    "regular_poset",
];

pub const FAMILY_PROPS: &[&str] = &["lemma_technical"];
pub const FORCED_PROPS: &[&str] = &["finite_generators_forced"];
pub const POSET_PROPS: &[&str] = &["hypotheses", "equivalence", "comaximal_enumeration"];

/// Universe-specific hooks on top of the generic predicates.
pub trait Universe: PruferUniverse {
    /// `None` outside the finite universe or above the cap.
    fn flatness_oracle(&self, a: &Self::Module, cap: usize) -> Option<Result<PropertyVerdict>>;
    fn prufer_ring_corollary(&self) -> Option<Result<PropertyVerdict>>;
    fn manis_valuation(&self, data: &ManisValuationData, seed: u64) -> Result<PropertyVerdict>;
    /// Re-derives a weak-surjectivity witness from scratch, where supported.
    fn validate_weak_witness(&self, w: &Witness) -> Option<bool>;
    fn universe_name(&self) -> &'static str;
    fn describe_instance(&self) -> String;
}

impl Universe for Arc<Extension> {
    fn flatness_oracle(&self, a: &Submodule, cap: usize) -> Option<Result<PropertyVerdict>> {
        if self.a().size() > cap {
            return None;
        }
        let set = a.a_set()?;
        Some(extalg_core::props::flatness_oracle(self.a(), &set, cap))
    }

    fn prufer_ring_corollary(&self) -> Option<Result<PropertyVerdict>> {
        None
    }

    fn manis_valuation(&self, data: &ManisValuationData, _seed: u64) -> Result<PropertyVerdict> {
        let (v, pair) = check_manis_valuation(data, self.b())?;
        let Some(pair) = pair else { return Ok(v) };
        let manis = is_manis_pair_finite(self.b(), &pair.ring, &pair.prime)?;
        let mut out = PropertyVerdict::new("manis_valuation", v.holds && manis.holds).maybe_witness(manis.witness);
        out.notes = v.notes;
        Ok(out.note(format!("derived pair is a Manis pair: {}", manis.holds)))
    }

    fn validate_weak_witness(&self, w: &Witness) -> Option<bool> {
        let Witness::ElementAt { ideal, value } = w else { return Some(false) };
        let a = self.a();
        let b = self.b();
        let m = maximal_ideals(a).into_iter().find(|m| m.describe(a) == *ideal)?;
        let extended = Submodule::ideal_from_a_set(self, &m.members);
        let proper = !is_b_regular(self, &extended).ok()?.holds;
        let x = (0..b.size()).find(|&x| b.display(x) == *value)?;
        let localized = generalized_localization(self, &m.members).ok()?;
        Some(proper && localized.index_of(b.element(x)).is_none())
    }

    fn universe_name(&self) -> &'static str {
        "finite"
    }

    fn describe_instance(&self) -> String {
        format!("|A| = {}, |B| = {}", self.a().size(), self.b().size())
    }
}

impl Universe for MixedExtension {
    fn flatness_oracle(&self, _a: &extalg_core::mixed::MixedIdeal, _cap: usize) -> Option<Result<PropertyVerdict>> {
        None
    }

    fn prufer_ring_corollary(&self) -> Option<Result<PropertyVerdict>> {
        Some(match verify_prufer_ring_corollary(self.ring(), self.sweep.clone()) {
            Err(AlgebraError::NotPruferRing) => Ok(PropertyVerdict::new("prufer_ring_corollary", true)
                .vacuous(true)
                .note(AlgebraError::NotPruferRing.to_string())),
            other => other,
        })
    }

    fn manis_valuation(&self, data: &ManisValuationData, seed: u64) -> Result<PropertyVerdict> {
        let v = check_padic_valuation(data, self, seed)?;
        let Assignment::PAdic { slot, prime } = data.assignment else { return Ok(v) };
        let manis = is_manis_pair_slot(&SlotFlavor::local_at(prime)?, prime)?;
        let mut out = PropertyVerdict::new("manis_valuation", v.holds && manis.holds).maybe_witness(v.witness);
        out.notes = v.notes;
        let own = is_manis_pair_slot(&self.flavors()[slot], prime)?;
        Ok(out
            .note(format!("derived pair is a Manis pair: {}", manis.holds))
            .note(format!("slot {slot} is itself the valuation ring: {}", own.holds)))
    }

    fn validate_weak_witness(&self, _w: &Witness) -> Option<bool> {
        None
    }

    fn universe_name(&self) -> &'static str {
        "mixed"
    }

    fn describe_instance(&self) -> String {
        self.describe()
    }
}

/// One-line rendering of a witness, the form expectations are written in.
pub fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Element { value } | Witness::Text { value } => value.clone(),
        Witness::Maximal { ideal } => ideal.clone(),
        Witness::ElementAt { ideal, value } => format!("{value} at {ideal}"),
        Witness::Combination { pairs } => {
            pairs.iter().map(|(a, z)| format!("{a}·{z}")).collect::<Vec<_>>().join(" + ")
        }
        Witness::Tensor { terms, ideal } => {
            let sum: Vec<String> = terms.iter().map(|(g, b)| format!("{g} ⊗ {b}")).collect();
            format!("{} in {ideal}", sum.join(" + "))
        }
        Witness::Tuple { items } => items.join(", "),
    }
}

/// Observation store shared by ring and poset evaluation.
#[derive(Default)]
pub struct Ledger {
    index: HashMap<(String, Target), usize>,
    pub observations: Vec<Observation>,
}

impl Ledger {
    fn lookup(&self, prop: &str, target: Target) -> Option<usize> {
        self.index.get(&(prop.to_string(), target)).copied()
    }

    fn push(&mut self, obs: Observation) -> usize {
        let i = self.observations.len();
        self.index.insert((obs.prop.clone(), obs.target), i);
        self.observations.push(obs);
        i
    }

    pub fn verdict(&self, i: usize) -> &PropertyVerdict {
        &self.observations[i].verdict
    }
}

fn errored(prop: &str, e: &AlgebraError) -> PropertyVerdict {
    PropertyVerdict::new(prop, false).note(format!("error: {e}"))
}

/// Evaluates properties of one ring instance.
pub struct Evaluator<'a, U: Universe> {
    pub subject: &'a Subject<U>,
    pub oracle_cap: usize,
    pub seed: u64,
    pub ledger: Ledger,
}

impl<'a, U: Universe> Evaluator<'a, U> {
    pub fn new(subject: &'a Subject<U>, oracle_cap: usize, seed: u64) -> Self {
        Self { subject, oracle_cap, seed, ledger: Ledger::default() }
    }

    pub fn u(&self) -> &U {
        &self.subject.universe
    }

    /// Index of the memoized observation of `prop` on `target`.
    pub fn get(&mut self, prop: &str, target: Target) -> usize {
        if let Some(i) = self.ledger.lookup(prop, target) {
            return i;
        }
        let verdict = self.compute(prop, target).unwrap_or_else(|e| errored(prop, &e));
        let subject = self.describe_target(target);
        self.ledger.push(Observation { prop: prop.into(), target, subject, verdict })
    }

    pub fn verdict(&self, i: usize) -> &PropertyVerdict {
        self.ledger.verdict(i)
    }

    fn describe_target(&self, target: Target) -> Option<String> {
        let u = self.u();
        match target {
            Target::Instance => None,
            Target::Ideal(i) => Some(u.describe_module(&self.subject.ideals[i])),
            Target::Family(k) => {
                let (base, members) = &self.subject.families[k];
                let ms: Vec<String> = members.iter().map(|m| u.describe_module(m)).collect();
                Some(format!("{} with F = {{{}}}", u.describe_module(base), ms.join(", ")))
            }
            Target::Forced(k) => {
                let (a, a0) = &self.subject.forced[k];
                Some(format!("{} with a₀ = {}", u.describe_module(a), u.describe_module(a0)))
            }
        }
    }

    fn compute(&mut self, prop: &str, target: Target) -> Result<PropertyVerdict> {
        match target {
            Target::Ideal(i) => self.ideal_prop(prop, i),
            Target::Instance => self.instance_prop(prop),
            Target::Family(k) => self.family_prop(prop, k),
            Target::Forced(k) => self.forced_prop(prop, k),
        }
    }

    fn ideal_prop(&mut self, prop: &str, i: usize) -> Result<PropertyVerdict> {
        let u = &self.subject.universe;
        let a = &self.subject.ideals[i];
        Ok(match prop {
            "b_regular" => is_b_regular(u, a)?,
            "b_invertible" => is_b_invertible(u, a)?.0,
            "partition_of_unity" => {
                if !is_b_invertible(u, a)?.0.holds {
                    PropertyVerdict::new(prop, false).note("not B-invertible")
                } else {
                    let pou = partition_of_unity(u, a)?;
                    let ok = verify_partition(u, a, &pou)?;
                    PropertyVerdict::new(prop, ok).with_witness(Witness::Combination { pairs: pou.render(u).pairs })
                }
            }
            "flat" => is_flat(u, a)?,
            "faithfully_flat" => is_faithfully_flat(u, a)?,
            "locally_principal" => is_locally_principal(u, a)?,
            "regular_ideal" => is_regular_ideal(u, a),
            "idempotent" => {
                let square = u.product(a, a)?;
                let v = PropertyVerdict::new(prop, square == *a);
                if square == *a {
                    v
                } else {
                    v.with_witness(Witness::Text { value: u.describe_module(&square) })
                }
            }
            "flatness_oracle" => match u.flatness_oracle(a, self.oracle_cap) {
                Some(v) => v?,
                None => PropertyVerdict::new(prop, true).vacuous(true).note("outside the oracle's reach"),
            },
            "finite_generators" => {
                if !u.is_ideal(a) || !is_b_regular(u, a)?.holds {
                    PropertyVerdict::new(prop, true).vacuous(true).note("not a B-regular ideal")
                } else {
                    render_generators(u, a, construct_finite_generators(u, a, None))
                }
            }
            _ => return Err(AlgebraError::Unsupported(format!("{prop} is not an ideal property"))),
        })
    }

    fn instance_prop(&mut self, prop: &str) -> Result<PropertyVerdict> {
        let u = &self.subject.universe;
        Ok(match prop {
            "weakly_surjective" => is_weakly_surjective(u)?,
            "weak_surjectivity_crosscheck" => weak_surjectivity_crosscheck(u)?,
            "prufer" => is_prufer(u)?,
            "almost_prufer" => is_almost_prufer(u)?,
            "theorem_2_1" => verify_theorem_2_1(u)?,
            "finite_character" => has_finite_character(u)?,
            "main_theorem" => verify_main_theorem(u)?,
            "prufer_ring_corollary" => match u.prufer_ring_corollary() {
                Some(v) => v?,
                None => PropertyVerdict::new(prop, true).vacuous(true).note("needs a mixed ring"),
            },
            "manis_valuation" => match &self.subject.valuation {
                Some(data) => u.manis_valuation(data, self.seed)?,
                None => PropertyVerdict::new(prop, true).vacuous(true).note("no valuation given"),
            },
            "regular_poset" => regular_poset(u, self.subject.bound)?,
            _ => return Err(AlgebraError::Unsupported(format!("{prop} is not an instance property"))),
        })
    }

    fn family_prop(&mut self, prop: &str, k: usize) -> Result<PropertyVerdict> {
        if prop != "lemma_technical" {
            return Err(AlgebraError::Unsupported(format!("{prop} is not a family property")));
        }
        let u = &self.subject.universe;
        let (base, members) = &self.subject.families[k];
        let family = ComaximalFamily::new(u, base.clone(), members.clone())?;
        let report = verify_lemma_technical(u, &family)?;
        let mut v = PropertyVerdict::new(prop, report.holds())
            .with_witness(Witness::Text { value: u.describe_module(&report.i_f.ideal) })
            .note(format!("stages = {}", report.i_f.stages));
        if let Some(e) = &report.exponents {
            v = v.note(format!("exponents = {e:?}"));
        }
        for part in [&report.part_a, &report.part_b] {
            v = v.note(format!("{} = {}{}", part.name, part.holds, if part.vacuous { " (vacuous)" } else { "" }));
            v.notes.extend(part.notes.iter().cloned());
        }
        Ok(v)
    }

    fn forced_prop(&mut self, prop: &str, k: usize) -> Result<PropertyVerdict> {
        if prop != "finite_generators_forced" {
            return Err(AlgebraError::Unsupported(format!("{prop} is not a forced-pair property")));
        }
        let u = &self.subject.universe;
        let (a, a0) = &self.subject.forced[k];
        Ok(render_generators(u, a, construct_finite_generators(u, a, Some(a0))))
    }
}

fn render_generators<U: RingUniverse>(u: &U, a: &U::Module, built: Result<FiniteGenerators<U>>) -> PropertyVerdict {
    let built = match built {
        Ok(b) => b,
        Err(e) => return errored("finite_generators", &e),
    };
    let mut terms = vec![u.describe_module(&built.a0)];
    terms.extend(built.local.iter().map(|(_, ai)| u.describe_module(ai)));
    if !built.extra.is_empty() {
        let xs: Vec<String> = built.extra.iter().map(|(_, x)| u.describe_element(x)).collect();
        terms.push(format!("({})", xs.join(", ")));
    }
    let holds = built.reproduces(a) && u.generated(&built.generators) == *a;
    PropertyVerdict::new("finite_generators", holds)
        .with_witness(Witness::Text { value: format!("{} = {}", terms.join(" + "), u.describe_module(&built.b)) })
        .note(format!("{} generators", built.generators.len()))
}

fn regular_poset<U: PruferUniverse>(u: &U, bound: u64) -> Result<PropertyVerdict> {
    let rp = match build_regular_ideal_poset(u, bound) {
        Err(e @ AlgebraError::BoundTooSmall(_)) => {
            return Ok(PropertyVerdict::new("regular_poset", true).vacuous(true).note(e.to_string()));
        }
        other => other?,
    };
    let n = rp.poset.len();
    let gamma = rp.poset.gamma().count_ones(..);
    let mut v = PropertyVerdict::new("regular_poset", rp.claims_hold())
        .vacuous(n == 0)
        .note(format!("|Ω| = {n}, |Γ| = {gamma}, bound = {bound}"));
    for c in &rp.claims {
        v = v.note(format!("{} = {}", c.name, c.holds));
    }
    if let Some(bad) = rp.claims.iter().find(|c| !c.holds) {
        v = v.maybe_witness(bad.witness.clone()).note(format!("{} fails", bad.name));
    }
    if gamma > 0 {
        let hyp = check_hypotheses(&rp.poset)?;
        v = v.note(format!("hypotheses (a), (b), (c) = {}, {}, {}", hyp.a.holds, hyp.b.holds, hyp.c.holds));
        v.holds &= hyp.all_hold();
        if hyp.all_hold() {
            let eq = check_equivalence(&rp.poset)?;
            v.holds &= eq.verdict.holds;
        }
    }
    Ok(v)
}

/// Evaluates properties of one poset instance.
pub struct PosetEvaluator<'a> {
    pub poset: &'a FinitePoset,
    pub ledger: Ledger,
}

/// Largest poset on which the comaximal enumeration is checked against the
/// power set.
pub const BRUTE_FORCE_LIMIT: usize = 15;

impl<'a> PosetEvaluator<'a> {
    pub fn new(poset: &'a FinitePoset) -> Self {
        Self { poset, ledger: Ledger::default() }
    }

    pub fn get(&mut self, prop: &str) -> usize {
        if let Some(i) = self.ledger.lookup(prop, Target::Instance) {
            return i;
        }
        let verdict = self.compute(prop).unwrap_or_else(|e| errored(prop, &e));
        self.ledger.push(Observation { prop: prop.into(), target: Target::Instance, subject: None, verdict })
    }

    pub fn verdict(&self, i: usize) -> &PropertyVerdict {
        self.ledger.verdict(i)
    }

    fn compute(&mut self, prop: &str) -> Result<PropertyVerdict> {
        let p = self.poset;
        Ok(match prop {
            "hypotheses" => {
                let h = check_hypotheses(p)?;
                let mut v = PropertyVerdict::new(prop, h.all_hold());
                for part in [&h.a, &h.b, &h.c] {
                    v = v.note(format!("{} = {}", part.name, part.holds));
                    if !part.holds && v.witness.is_none() {
                        v = v.maybe_witness(part.witness.clone());
                    }
                }
                v
            }
            "equivalence" => match check_equivalence(p) {
                Ok(report) => {
                    let mut v = report.verdict;
                    for row in &report.rows {
                        v = v.note(format!(
                            "{}: {} maximal above, largest comaximal subset {}",
                            row.element, row.maximal_above, row.largest_comaximal
                        ));
                    }
                    v
                }
                Err(AlgebraError::HypothesesFail(name)) => {
                    PropertyVerdict::new(prop, true).vacuous(true).note(format!("{name} fails"))
                }
                Err(e) => return Err(e),
            },
            "comaximal_enumeration" => comaximal_enumeration(p),
            _ => return Err(AlgebraError::Unsupported(format!("{prop} is not a poset property"))),
        })
    }
}

/// Compares `comaximal_subsets` against the power set of `Γ ∩ ↑a`.
fn comaximal_enumeration(p: &FinitePoset) -> PropertyVerdict {
    let name = "comaximal_enumeration";
    if p.len() > BRUTE_FORCE_LIMIT {
        return PropertyVerdict::new(name, true).vacuous(true).note(format!("more than {BRUTE_FORCE_LIMIT} elements"));
    }
    let comaximal = |set: &[usize]| set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| p.are_comaximal(x, y)));
    let mut subsets = 0;
    for a in 0..p.len() {
        let cands: Vec<usize> = (0..p.len()).filter(|&x| p.in_gamma(x) && p.leq(a, x)).collect();
        let mut brute: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1u32 << cands.len()) {
            let set: Vec<usize> = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
            if !comaximal(&set) {
                continue;
            }
            let maximal = cands.iter().all(|c| {
                set.contains(c) || {
                    let mut bigger = set.clone();
                    bigger.push(*c);
                    !comaximal(&bigger)
                }
            });
            if maximal {
                brute.push(set);
            }
        }
        brute.sort();
        let fast = p.comaximal_subsets(a);
        subsets += fast.len();
        if fast != brute {
            return PropertyVerdict::new(name, false).with_witness(Witness::Tuple { items: vec![p.label(a).to_string()] });
        }
    }
    PropertyVerdict::new(name, true).note(format!("{subsets} maximal comaximal subsets"))
}
