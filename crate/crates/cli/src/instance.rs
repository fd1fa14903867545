//! JSON instance files for finite extensions, mixed extensions and posets.
//!
//! Every file carries a `kind` field. Elements of a finite ambient are written
//! as one coefficient list per component (low degree first) or as a bare
//! integer; rational slot values as integers or `"n/d"` strings.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use extalg_core::finite::{Ambient, AmbientComponent, Extension, FiniteRing, RingElement, Submodule, DEFAULT_SIZE_CAP};
use extalg_core::mixed::{MixedExtension, MixedIdeal, SlotFlavor, SweepBounds, Q};
use extalg_core::poset::FinitePoset;
use extalg_core::props::RingUniverse;
use extalg_core::prufer::{Assignment, ManisValuationData, Value};

use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Finite,
    Mixed,
    Poset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Integer(i64),
    Coords(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[derive(Default)]
pub struct ExtensionSpec {
    /// `[p, k, f]`: the component `Z[x]/(p^k, f)` with `f` monic.
    pub ambient: Vec<(u64, u32, Vec<i64>)>,
    #[serde(default)]
    pub a_generators: Vec<ElementSpec>,
    /// Absent means `B` is the whole ambient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_generators: Option<Vec<ElementSpec>>,
}


#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteIdealSpec {
    pub generators: Vec<ElementSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Integer(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedIdealSpec {
    /// One value per slot; `0` is the zero slot.
    pub slots: Vec<RationalSpec>,
    /// Generators of the tail part; absent means the zero tail ideal.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<ElementSpec>,
}

/// An ideal given by its position in the instance's ideal list, or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealRef<I> {
    Index(usize),
    Inline(I),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec<I> {
    pub base: IdealRef<I>,
    pub members: Vec<IdealRef<I>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcedSpec<I> {
    pub ideal: IdealRef<I>,
    pub a0: IdealRef<I>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Finite(Vec<i64>),
    /// Must be `"inf"`.
    Infinity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub element: ElementSpec,
    pub value: ValueSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValuationSpec {
    Table { rank: usize, table: Vec<TableRow> },
    /// `rule` must be `"p_adic"`.
    Rule { rule: String, slot: usize, p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlavorSpec {
    Integers,
    Rationals,
    LocalAt(u64),
    Inverted(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default = "defaults::exhaustive")]
    pub exhaustive: u64,
    #[serde(default = "defaults::samples")]
    pub samples: usize,
    #[serde(default = "defaults::sample_bound")]
    pub sample_bound: u64,
    #[serde(default = "defaults::max_prime_factors")]
    pub max_prime_factors: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::max_ideals")]
    pub max_ideals: usize,
}

mod defaults {
    use extalg_core::mixed::SweepBounds;

    pub fn exhaustive() -> u64 {
        SweepBounds::default().exhaustive
    }
    pub fn samples() -> usize {
        SweepBounds::default().samples
    }
    pub fn sample_bound() -> u64 {
        SweepBounds::default().sample_bound
    }
    pub fn max_prime_factors() -> u32 {
        SweepBounds::default().max_prime_factors
    }
    pub fn max_ideals() -> usize {
        SweepBounds::default().max_ideals
    }
}

impl From<&SweepSpec> for SweepBounds {
    fn from(s: &SweepSpec) -> Self {
        SweepBounds {
            exhaustive: s.exhaustive,
            samples: s.samples,
            sample_bound: s.sample_bound,
            max_prime_factors: s.max_prime_factors,
            seed: s.seed,
            max_ideals: s.max_ideals,
        }
    }
}

impl From<&SweepBounds> for SweepSpec {
    fn from(s: &SweepBounds) -> Self {
        SweepSpec {
            exhaustive: s.exhaustive,
            samples: s.samples,
            sample_bound: s.sample_bound,
            max_prime_factors: s.max_prime_factors,
            seed: s.seed,
            max_ideals: s.max_ideals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteInstance {
    pub kind: Kind,
    pub extension: ExtensionSpec,
    /// Absent means every ideal of `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<FiniteIdealSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySpec<FiniteIdealSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forced: Vec<ForcedSpec<FiniteIdealSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<ValuationSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedInstance {
    pub kind: Kind,
    pub slots: Vec<FlavorSpec>,
    #[serde(default)]
    pub tail: ExtensionSpec,
    /// The swept ideals come first when `sweep` is given or `ideals` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<MixedIdealSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    /// Slot-value bound for the regular-ideal poset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySpec<MixedIdealSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forced: Vec<ForcedSpec<MixedIdealSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<ValuationSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetInstance {
    pub kind: Kind,
    pub elements: Vec<String>,
    /// `[x, y]` means `x ≤ y`; the order is the transitive closure.
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub gamma: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    Finite(FiniteInstance),
    Mixed(MixedInstance),
    Poset(PosetInstance),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Finite(_) => Kind::Finite,
            Instance::Mixed(_) => Kind::Mixed,
            Instance::Poset(_) => Kind::Poset,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }
}

#[derive(Deserialize)]
struct Header {
    kind: Kind,
}

fn from_str_tracked<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ParseError { origin: origin.into(), line: inner.line(), column: inner.column(), path, message: inner.to_string() }
    })?;
    de.end().map_err(|e| ParseError {
        origin: origin.into(),
        line: e.line(),
        column: e.column(),
        path: String::new(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Parses an instance file, dispatching on its `kind`.
pub fn parse_instance(text: &str, origin: &str) -> Result<Instance, ParseError> {
    let header: Header = from_str_tracked(text, origin)?;
    Ok(match header.kind {
        Kind::Finite => Instance::Finite(from_str_tracked(text, origin)?),
        Kind::Mixed => Instance::Mixed(from_str_tracked(text, origin)?),
        Kind::Poset => Instance::Poset(from_str_tracked(text, origin)?),
    })
}

/// A loaded ring instance: the universe, its ideal list and the optional
/// families, forced pairs and valuation the file names.
pub struct Subject<U: RingUniverse> {
    pub universe: U,
    pub ideals: Vec<U::Module>,
    pub families: Vec<(U::Module, Vec<U::Module>)>,
    pub forced: Vec<(U::Module, U::Module)>,
    pub valuation: Option<ManisValuationData>,
    pub bound: u64,
}

pub enum Loaded {
    Finite(Subject<Arc<Extension>>),
    Mixed(Subject<MixedExtension>),
    Poset(FinitePoset),
}

pub const DEFAULT_POSET_BOUND: u64 = 30;

pub fn load(instance: &Instance, origin: &str) -> Result<Loaded, ParseError> {
    match instance {
        Instance::Finite(f) => load_finite(f, origin).map(Loaded::Finite),
        Instance::Mixed(m) => load_mixed(m, origin).map(Loaded::Mixed),
        Instance::Poset(p) => {
            if p.kind != Kind::Poset {
                return Err(ParseError::at(origin, "kind", "expected `poset`"));
            }
            FinitePoset::from_labeled_covers(p.elements.clone(), &p.covers, &p.gamma)
                .map(Loaded::Poset)
                .map_err(|e| ParseError::at(origin, "", e))
        }
    }
}

pub fn build_extension(spec: &ExtensionSpec, origin: &str, path: &str) -> Result<Arc<Extension>, ParseError> {
    let err = |field: String, e: &dyn std::fmt::Display| ParseError::at(origin, field, e);
    let mut comps = Vec::with_capacity(spec.ambient.len());
    for (i, (p, k, f)) in spec.ambient.iter().enumerate() {
        comps.push(AmbientComponent::new(*p, *k, f).map_err(|e| err(format!("{path}ambient[{i}]"), &e))?);
    }
    let amb = Arc::new(Ambient::new(comps));
    let b = match &spec.b_generators {
        None => FiniteRing::whole(amb.clone(), DEFAULT_SIZE_CAP).map_err(|e| err(format!("{path}ambient"), &e))?,
        Some(gens) => {
            let elems = elements(&amb, gens, origin, &format!("{path}b_generators"))?;
            FiniteRing::close_subring(amb.clone(), &elems, DEFAULT_SIZE_CAP)
                .map_err(|e| err(format!("{path}b_generators"), &e))?
        }
    };
    let a_elems = elements(&amb, &spec.a_generators, origin, &format!("{path}a_generators"))?;
    for (i, e) in a_elems.iter().enumerate() {
        if b.index_of(e).is_none() {
            return Err(err(format!("{path}a_generators[{i}]"), &"element is not in B"));
        }
    }
    let a = FiniteRing::close_subring(amb, &a_elems, DEFAULT_SIZE_CAP)
        .map_err(|e| err(format!("{path}a_generators"), &e))?;
    Extension::new(Arc::new(a), Arc::new(b)).map_err(|e| err(format!("{path}a_generators"), &e))
}

fn element(amb: &Ambient, spec: &ElementSpec) -> Result<RingElement, String> {
    match spec {
        ElementSpec::Integer(n) => Ok(amb.integer(*n)),
        ElementSpec::Coords(c) => amb.element(c).map_err(|e| e.to_string()),
    }
}

fn elements(amb: &Ambient, specs: &[ElementSpec], origin: &str, path: &str) -> Result<Vec<RingElement>, ParseError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| element(amb, s).map_err(|e| ParseError::at(origin, format!("{path}[{i}]"), e)))
        .collect()
}

/// `B`-indices of `specs`.
fn b_indices(ext: &Extension, specs: &[ElementSpec], origin: &str, path: &str) -> Result<Vec<usize>, ParseError> {
    let amb = ext.b().ambient();
    let mut out = Vec::with_capacity(specs.len());
    for (i, s) in specs.iter().enumerate() {
        let e = element(amb, s).map_err(|e| ParseError::at(origin, format!("{path}[{i}]"), e))?;
        let idx = ext.b().index_of(&e).ok_or_else(|| ParseError::at(origin, format!("{path}[{i}]"), "element is not in B"))?;
        out.push(idx);
    }
    Ok(out)
}

/// Per-component coordinates of a ring element, the inverse of `Ambient::element`.
pub fn element_spec(amb: &Ambient, e: &RingElement) -> ElementSpec {
    let mut coords = e.coords().iter();
    ElementSpec::Coords(
        amb.components().iter().map(|c| coords.by_ref().take(c.degree()).map(|&x| x as i64).collect()).collect(),
    )
}

fn finite_ideal(ext: &Arc<Extension>, spec: &FiniteIdealSpec, origin: &str, path: &str) -> Result<Submodule, ParseError> {
    let gens = b_indices(ext, &spec.generators, origin, &format!("{path}.generators"))?;
    if let Some(i) = gens.iter().position(|&g| ext.in_a(g).is_none()) {
        return Err(ParseError::at(origin, format!("{path}.generators[{i}]"), "ideal generators must lie in A"));
    }
    Ok(Submodule::closure(ext, &gens))
}

fn resolve<M: Clone, I>(
    r: &IdealRef<I>,
    list: &[M],
    origin: &str,
    path: &str,
    inline: impl Fn(&I, &str) -> Result<M, ParseError>,
) -> Result<M, ParseError> {
    match r {
        IdealRef::Index(i) => list
            .get(*i)
            .cloned()
            .ok_or_else(|| ParseError::at(origin, path, format!("ideal index {i} is out of range ({} ideals)", list.len()))),
        IdealRef::Inline(spec) => inline(spec, path),
    }
}

fn load_finite(f: &FiniteInstance, origin: &str) -> Result<Subject<Arc<Extension>>, ParseError> {
    if f.kind != Kind::Finite {
        return Err(ParseError::at(origin, "kind", "expected `finite`"));
    }
    let ext = build_extension(&f.extension, origin, "extension.")?;
    let ideals = match &f.ideals {
        None => extalg_core::finite::all_ideals(ext.a()).iter().map(|s| Submodule::ideal_from_a_set(&ext, s)).collect(),
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, s)| finite_ideal(&ext, s, origin, &format!("ideals[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let inline = |s: &FiniteIdealSpec, path: &str| finite_ideal(&ext, s, origin, path);
    let families = load_families(&f.families, &ideals, origin, &inline)?;
    let forced = load_forced(&f.forced, &ideals, origin, &inline)?;
    let valuation = match &f.valuation {
        None => None,
        Some(ValuationSpec::Table { rank, table }) => {
            let mut values: Vec<Option<Value>> = vec![None; ext.b().size()];
            for (i, row) in table.iter().enumerate() {
                let path = format!("valuation.table[{i}]");
                let idx = b_indices(&ext, std::slice::from_ref(&row.element), origin, &format!("{path}.element"))?[0];
                values[idx] = Some(value(&row.value).map_err(|e| ParseError::at(origin, format!("{path}.value"), e))?);
            }
            Some(ManisValuationData { rank: *rank, assignment: Assignment::Table(values) })
        }
        Some(ValuationSpec::Rule { .. }) => {
            return Err(ParseError::at(origin, "valuation", "rule-based valuations need a mixed instance"));
        }
    };
    Ok(Subject { universe: ext, ideals, families, forced, valuation, bound: DEFAULT_POSET_BOUND })
}

fn value(spec: &ValueSpec) -> Result<Value, String> {
    match spec {
        ValueSpec::Finite(v) => Ok(Value::Finite(v.clone())),
        ValueSpec::Infinity(s) if s == "inf" => Ok(Value::Infinity),
        ValueSpec::Infinity(s) => Err(format!("expected a coordinate list or \"inf\", found {s:?}")),
    }
}

type Inline<'a, M, I> = &'a dyn Fn(&I, &str) -> Result<M, ParseError>;

fn load_families<M: Clone, I>(
    specs: &[FamilySpec<I>],
    ideals: &[M],
    origin: &str,
    inline: Inline<'_, M, I>,
) -> Result<Vec<(M, Vec<M>)>, ParseError> {
    specs
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let base = resolve(&f.base, ideals, origin, &format!("families[{k}].base"), inline)?;
            let members = f
                .members
                .iter()
                .enumerate()
                .map(|(j, m)| resolve(m, ideals, origin, &format!("families[{k}].members[{j}]"), inline))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((base, members))
        })
        .collect()
}

fn load_forced<M: Clone, I>(
    specs: &[ForcedSpec<I>],
    ideals: &[M],
    origin: &str,
    inline: Inline<'_, M, I>,
) -> Result<Vec<(M, M)>, ParseError> {
    specs
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let a = resolve(&f.ideal, ideals, origin, &format!("forced[{k}].ideal"), inline)?;
            let a0 = resolve(&f.a0, ideals, origin, &format!("forced[{k}].a0"), inline)?;
            Ok((a, a0))
        })
        .collect()
}

fn flavor(spec: &FlavorSpec) -> extalg_core::Result<SlotFlavor> {
    match spec {
        FlavorSpec::Integers => Ok(SlotFlavor::Integers),
        FlavorSpec::Rationals => Ok(SlotFlavor::Rationals),
        FlavorSpec::LocalAt(p) => SlotFlavor::local_at(*p),
        FlavorSpec::Inverted(s) if s.is_empty() => Ok(SlotFlavor::Integers),
        FlavorSpec::Inverted(s) => SlotFlavor::inverted(s),
    }
}

pub fn rational(spec: &RationalSpec) -> Result<Q, String> {
    match spec {
        RationalSpec::Integer(n) => Ok(Q::from_integer(*n as i128)),
        RationalSpec::Text(s) => {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let n: i128 = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let d: i128 = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if d == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Q::new(n, d))
        }
    }
}

fn mixed_ideal(u: &MixedExtension, spec: &MixedIdealSpec, origin: &str, path: &str) -> Result<MixedIdeal, ParseError> {
    if spec.slots.len() != u.rank() {
        return Err(ParseError::at(origin, format!("{path}.slots"), format!("expected {} slot values", u.rank())));
    }
    let values = spec
        .slots
        .iter()
        .enumerate()
        .map(|(i, s)| rational(s).map_err(|e| ParseError::at(origin, format!("{path}.slots[{i}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let tail = b_indices(u.tail(), &spec.tail, origin, &format!("{path}.tail"))?;
    u.ideal(&values, &tail).map_err(|e| ParseError::at(origin, path, e))
}

fn load_mixed(m: &MixedInstance, origin: &str) -> Result<Subject<MixedExtension>, ParseError> {
    if m.kind != Kind::Mixed {
        return Err(ParseError::at(origin, "kind", "expected `mixed`"));
    }
    let flavors = m
        .slots
        .iter()
        .enumerate()
        .map(|(i, f)| flavor(f).map_err(|e| ParseError::at(origin, format!("slots[{i}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let tail = build_extension(&m.tail, origin, "tail.")?;
    let sweep = m.sweep.as_ref().map(SweepBounds::from).unwrap_or_default();
    let u = MixedExtension::new(flavors, tail).with_sweep(sweep);
    let mut ideals = Vec::new();
    if m.sweep.is_some() || m.ideals.is_none() {
        ideals = u.ideal_sweep().map_err(|e| ParseError::at(origin, "sweep", e))?;
    }
    for (i, s) in m.ideals.iter().flatten().enumerate() {
        ideals.push(mixed_ideal(&u, s, origin, &format!("ideals[{i}]"))?);
    }
    let inline = |s: &MixedIdealSpec, path: &str| mixed_ideal(&u, s, origin, path);
    let families = load_families(&m.families, &ideals, origin, &inline)?;
    let forced = load_forced(&m.forced, &ideals, origin, &inline)?;
    let valuation = match &m.valuation {
        None => None,
        Some(ValuationSpec::Rule { rule, slot, p }) if rule == "p_adic" => {
            Some(ManisValuationData { rank: 1, assignment: Assignment::PAdic { slot: *slot, prime: *p } })
        }
        Some(ValuationSpec::Rule { rule, .. }) => {
            return Err(ParseError::at(origin, "valuation.rule", format!("unknown rule {rule:?}")));
        }
        Some(ValuationSpec::Table { .. }) => {
            return Err(ParseError::at(origin, "valuation", "table valuations need a finite instance"));
        }
    };
    Ok(Subject { universe: u, ideals, families, forced, valuation, bound: m.bound.unwrap_or(DEFAULT_POSET_BOUND) })
}
