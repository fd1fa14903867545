//! The builtin corpus: golden instances with expected flags, plus seeded
//! random finite extensions, mixed extensions and posets.

use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use extalg_core::finite::{all_ideals, is_prime_ideal, Ambient, AmbientComponent, Extension, FiniteRing, RingElement};
use extalg_core::mixed::SweepBounds;
use extalg_core::props::is_b_invertible;

use crate::error::{HarnessError, ParseError};
use crate::eval::{Target, Universe};
use crate::instance::*;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub prop: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forced: Option<usize>,
    pub holds: bool,
    /// Rendered witness the verdict must carry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Expectation {
    pub fn on(prop: &str, holds: bool) -> Self {
        Self { prop: prop.into(), ideal: None, family: None, forced: None, holds, witness: None }
    }

    pub fn ideal(mut self, i: usize) -> Self {
        self.ideal = Some(i);
        self
    }

    pub fn family(mut self, k: usize) -> Self {
        self.family = Some(k);
        self
    }

    pub fn forced(mut self, k: usize) -> Self {
        self.forced = Some(k);
        self
    }

    pub fn witness(mut self, w: &str) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn target(&self) -> Target {
        match (self.ideal, self.family, self.forced) {
            (Some(i), _, _) => Target::Ideal(i),
            (_, Some(k), _) => Target::Family(k),
            (_, _, Some(k)) => Target::Forced(k),
            _ => Target::Instance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    /// Golden entries name the law that checks their expectations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub instance: Instance,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Random draws that were skipped after exhausting their retries.
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Small,
    Standard,
}

impl Profile {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "small" => Some(Profile::Small),
            "standard" => Some(Profile::Standard),
            _ => None,
        }
    }

    fn counts(self) -> (usize, usize, usize) {
        match self {
            Profile::Small => (24, 4, 4),
            Profile::Standard => (240, 12, 10),
        }
    }
}

/// Retries per random draw before it is skipped.
const RETRIES: usize = 32;

pub fn builtin_corpus(seed: u64, profile: Profile, max_ring_size: usize) -> Corpus {
    let mut corpus = Corpus::default();
    golden(&mut corpus.entries);
    let (finite, mixed, posets) = profile.counts();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..finite {
        match (0..RETRIES).find_map(|_| random_finite(&mut rng, max_ring_size)) {
            Some(instance) => corpus.entries.push(entry(format!("random_finite_{k:03}"), None, instance, vec![])),
            None => corpus.notices.push(format!("random_finite_{k:03} skipped after {RETRIES} draws")),
        }
    }
    for k in 0..mixed {
        let instance = random_mixed(&mut rng, seed);
        corpus.entries.push(entry(format!("random_mixed_{k:02}"), None, instance, vec![]));
    }
    for k in 0..posets {
        corpus.entries.push(entry(format!("random_poset_{k:02}"), None, random_poset(&mut rng), vec![]));
    }
    for e in &mut corpus.entries {
        add_families(&mut e.instance);
    }
    corpus
}

fn entry(id: impl Into<String>, group: Option<&str>, instance: Instance, expected: Vec<Expectation>) -> CorpusEntry {
    CorpusEntry { id: id.into(), group: group.map(String::from), instance, expected }
}

fn z(n: i64) -> ElementSpec {
    ElementSpec::Integer(n)
}

fn coords(c: &[&[i64]]) -> ElementSpec {
    ElementSpec::Coords(c.iter().map(|v| v.to_vec()).collect())
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Z/n` as the product of its primary components.
pub fn integers_mod(n: u64) -> ExtensionSpec {
    ExtensionSpec { ambient: factor(n).into_iter().map(|(p, k)| (p, k, vec![0, 1])).collect(), ..Default::default() }
}

fn finite(extension: ExtensionSpec, ideals: Option<Vec<FiniteIdealSpec>>) -> FiniteInstance {
    FiniteInstance { kind: Kind::Finite, extension, ideals, families: vec![], forced: vec![], valuation: None }
}

fn mixed(slots: Vec<FlavorSpec>, tail: ExtensionSpec) -> MixedInstance {
    MixedInstance {
        kind: Kind::Mixed,
        slots,
        tail,
        ideals: None,
        sweep: None,
        bound: None,
        families: vec![],
        forced: vec![],
        valuation: None,
    }
}

fn slot_ideal(values: &[i64]) -> IdealRef<MixedIdealSpec> {
    IdealRef::Inline(MixedIdealSpec { slots: values.iter().map(|&v| RationalSpec::Integer(v)).collect(), tail: vec![] })
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn poset(elements: Vec<String>, covers: Vec<(String, String)>, gamma: Vec<String>) -> Instance {
    Instance::Poset(PosetInstance { kind: Kind::Poset, elements, covers, gamma })
}

fn golden(out: &mut Vec<CorpusEntry>) {
    for (p, q) in [(2, 3), (2, 5), (3, 5)] {
        let ext = integers_mod(p * q);
        let inst = finite(ext, Some(vec![FiniteIdealSpec { generators: vec![z(p as i64)] }]));
        let expected = vec![
            Expectation::on("flat", true).ideal(0),
            Expectation::on("faithfully_flat", false).ideal(0),
            Expectation::on("idempotent", true).ideal(0),
            Expectation::on("regular_ideal", false).ideal(0),
            Expectation::on("locally_principal", true).ideal(0),
        ];
        out.push(entry(format!("remark_b_{p}_{q}"), Some("remark_b"), Instance::Finite(inst), expected));
    }

    for (p, name) in [(2, "F2"), (3, "F3"), (5, "F5")] {
        for n in [2usize, 3] {
            let ext = ExtensionSpec { ambient: vec![(p, 1, vec![0, 1]); n], ..Default::default() };
            let mut weak = Expectation::on("weakly_surjective", false);
            if p == 2 && n == 2 {
                weak = weak.witness("(1, 0) at {(0, 0)}");
            }
            let expected = vec![
                Expectation::on("almost_prufer", true),
                weak,
                Expectation::on("prufer", false),
                Expectation::on("weak_surjectivity_crosscheck", true),
                Expectation::on("theorem_2_1", true),
            ];
            let id = format!("example_diag_{name}_{n}");
            out.push(entry(id, Some("example_diag"), Instance::Finite(finite(ext, None)), expected));
        }
    }

    let mut zq = mixed(vec![FlavorSpec::Integers], ExtensionSpec::default());
    zq.sweep = Some(SweepSpec::from(&SweepBounds::default()));
    zq.bound = Some(60);
    zq.families = vec![
        FamilySpec { base: slot_ideal(&[12]), members: vec![slot_ideal(&[3])] },
        FamilySpec { base: slot_ideal(&[12]), members: vec![slot_ideal(&[4]), slot_ideal(&[3])] },
        FamilySpec { base: slot_ideal(&[12]), members: vec![slot_ideal(&[1])] },
    ];
    zq.forced = vec![ForcedSpec { ideal: slot_ideal(&[12]), a0: slot_ideal(&[24]) }];
    zq.valuation = Some(ValuationSpec::Rule { rule: "p_adic".into(), slot: 0, p: 2 });
    let mut expected = prufer_flags();
    expected.extend([
        Expectation::on("lemma_technical", true).family(0).witness("4Z"),
        Expectation::on("lemma_technical", true).family(1).witness("Z"),
        Expectation::on("lemma_technical", true).family(2).witness("12Z"),
        Expectation::on("finite_generators_forced", true).forced(0).witness("24Z + 36Z + 24Z = 12Z"),
        Expectation::on("manis_valuation", true),
        Expectation::on("regular_poset", true),
    ]);
    out.push(entry("z_in_q", Some("golden"), Instance::Mixed(zq), expected));

    for p in [2u64, 3] {
        let mut zp = mixed(vec![FlavorSpec::LocalAt(p)], ExtensionSpec::default());
        zp.valuation = Some(ValuationSpec::Rule { rule: "p_adic".into(), slot: 0, p });
        let mut expected = prufer_flags();
        expected.push(Expectation::on("manis_valuation", true));
        out.push(entry(format!("z_local_{p}_in_q"), Some("golden"), Instance::Mixed(zp), expected));
    }

    let mut zz6 = mixed(vec![FlavorSpec::Integers], integers_mod(6));
    zz6.bound = Some(30);
    let mut expected = prufer_flags();
    expected.push(Expectation::on("regular_poset", true));
    out.push(entry("z_times_z6", Some("golden"), Instance::Mixed(zz6), expected));

    let x = coords(&[&[0, 1], &[0]]);
    let y = coords(&[&[0], &[0, 1]]);
    let plane = ExtensionSpec {
        ambient: vec![(2, 1, vec![0, 0, 1]), (2, 1, vec![0, 0, 1])],
        a_generators: vec![x.clone(), y.clone()],
        b_generators: Some(vec![x.clone(), y.clone()]),
    };
    let inst = finite(plane, Some(vec![FiniteIdealSpec { generators: vec![x, y] }]));
    let expected = vec![
        Expectation::on("locally_principal", false).ideal(0),
        Expectation::on("flat", false).ideal(0),
        Expectation::on("faithfully_flat", false).ideal(0),
        Expectation::on("b_invertible", false).ideal(0),
    ];
    out.push(entry("square_zero_plane", Some("golden"), Instance::Finite(inst), expected));

    let mut z6 = finite(integers_mod(6), None);
    let rows = (0..6)
        .map(|n| TableRow {
            element: z(n),
            value: if n % 2 == 0 { ValueSpec::Infinity("inf".into()) } else { ValueSpec::Finite(vec![]) },
        })
        .collect();
    z6.valuation = Some(ValuationSpec::Table { rank: 0, table: rows });
    let expected = vec![Expectation::on("manis_valuation", true)];
    out.push(entry("z6_prime_indicator", Some("golden"), Instance::Finite(z6), expected));

    let mut z4 = finite(integers_mod(4), None);
    let rows = [(0, None), (1, Some(0)), (2, Some(1)), (3, Some(0))]
        .into_iter()
        .map(|(n, v)| TableRow {
            element: z(n),
            value: v.map_or(ValueSpec::Infinity("inf".into()), |v| ValueSpec::Finite(vec![v])),
        })
        .collect();
    z4.valuation = Some(ValuationSpec::Table { rank: 1, table: rows });
    let expected = vec![Expectation::on("manis_valuation", false)];
    out.push(entry("z4_not_a_valuation", Some("golden"), Instance::Finite(z4), expected));

    let divisors: Vec<u64> = (1..=60).filter(|d| 60 % d == 0).collect();
    let names: Vec<String> = divisors.iter().map(u64::to_string).collect();
    let mut covers = Vec::new();
    for &a in &divisors {
        for &b in &divisors {
            if a != b && b % a == 0 && [2, 3, 5].contains(&(b / a)) {
                covers.push((a.to_string(), b.to_string()));
            }
        }
    }
    let hyp = vec![Expectation::on("hypotheses", true), Expectation::on("equivalence", true)];
    out.push(entry("divisors_of_60", Some("golden"), poset(names.clone(), covers, names), hyp.clone()));

    let chain = labels(&["c0", "c1", "c2", "c3", "c4"]);
    let covers = chain.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    out.push(entry("chain_5", Some("golden"), poset(chain.clone(), covers, chain), hyp.clone()));

    let anti = labels(&["a", "b", "c", "d"]);
    out.push(entry("antichain_4", Some("golden"), poset(anti.clone(), vec![], anti), hyp));

    let bad = poset(
        labels(&["a1", "a2", "b"]),
        vec![("a1".into(), "b".into()), ("a2".into(), "b".into())],
        labels(&["a1", "a2"]),
    );
    let expected = vec![Expectation::on("hypotheses", false).witness("a1, a2, b")];
    out.push(entry("missing_middle", Some("golden"), bad, expected));
}

fn prufer_flags() -> Vec<Expectation> {
    ["almost_prufer", "prufer", "weakly_surjective", "theorem_2_1", "main_theorem", "prufer_ring_corollary"]
        .into_iter()
        .map(|p| Expectation::on(p, true))
        .collect()
}

/// `(p, k, degree)` with `(p^k)^degree ≤ 16`.
const COMPONENT_SHAPES: &[(u64, u32, usize)] = &[
    (2, 1, 1),
    (2, 1, 2),
    (2, 1, 3),
    (2, 2, 1),
    (2, 2, 2),
    (2, 3, 1),
    (2, 4, 1),
    (3, 1, 1),
    (3, 1, 2),
    (3, 2, 1),
    (5, 1, 1),
    (7, 1, 1),
    (11, 1, 1),
    (13, 1, 1),
];

fn random_component(rng: &mut ChaCha8Rng) -> (u64, u32, Vec<i64>) {
    let &(p, k, d) = COMPONENT_SHAPES.choose(rng).expect("nonempty");
    let m = p.pow(k) as i64;
    let mut f: Vec<i64> = (0..d).map(|_| rng.gen_range(0..m)).collect();
    f.push(1);
    (p, k, f)
}

fn random_element(amb: &Ambient, rng: &mut ChaCha8Rng) -> RingElement {
    let c: Vec<Vec<i64>> = amb
        .components()
        .iter()
        .map(|c| (0..c.degree()).map(|_| rng.gen_range(0..c.modulus() as i64)).collect())
        .collect();
    amb.element(&c).expect("coordinates are reduced")
}

/// A random `A ⊆ B` with `|B| ≤ max_ring_size`, or `None` on overflow.
fn random_extension_spec(rng: &mut ChaCha8Rng, max_ring_size: usize, max_components: usize) -> Option<ExtensionSpec> {
    let n = rng.gen_range(1..=max_components);
    let ambient: Vec<(u64, u32, Vec<i64>)> = (0..n).map(|_| random_component(rng)).collect();
    let comps = ambient.iter().map(|(p, k, f)| AmbientComponent::new(*p, *k, f)).collect::<Result<Vec<_>, _>>().ok()?;
    let amb = Arc::new(Ambient::new(comps));
    let whole = amb.cardinality() <= max_ring_size as u128 && rng.gen_bool(0.3);
    let (b, b_generators) = if whole {
        (FiniteRing::whole(amb.clone(), max_ring_size).ok()?, None)
    } else {
        let gens: Vec<RingElement> = (0..rng.gen_range(1..=3)).map(|_| random_element(&amb, rng)).collect();
        let b = FiniteRing::close_subring(amb.clone(), &gens, max_ring_size).ok()?;
        (b, Some(gens.iter().map(|g| element_spec(&amb, g)).collect()))
    };
    let a_gens: Vec<ElementSpec> = (0..rng.gen_range(0..=3))
        .map(|_| element_spec(&amb, b.element(rng.gen_range(0..b.size()))))
        .collect();
    Some(ExtensionSpec { ambient, a_generators: a_gens, b_generators })
}

fn random_finite(rng: &mut ChaCha8Rng, max_ring_size: usize) -> Option<Instance> {
    let spec = random_extension_spec(rng, max_ring_size, 3)?;
    let ext = build_extension(&spec, "random", "").ok()?;
    let mut inst = finite(spec, None);
    if rng.gen_bool(0.25) {
        inst.valuation = prime_indicator(&ext, rng);
    }
    Some(Instance::Finite(inst))
}

/// `v = 0` off a random prime of `B` and `∞` on it.
fn prime_indicator(ext: &Extension, rng: &mut ChaCha8Rng) -> Option<ValuationSpec> {
    let b = ext.b();
    let primes: Vec<_> = all_ideals(b).iter().filter(|s| is_prime_ideal(b, s)).collect();
    let p = primes.choose(rng)?;
    let table = (0..b.size())
        .map(|x| TableRow {
            element: element_spec(b.ambient(), b.element(x)),
            value: if p.contains(x) { ValueSpec::Infinity("inf".into()) } else { ValueSpec::Finite(vec![]) },
        })
        .collect();
    Some(ValuationSpec::Table { rank: 0, table })
}

fn random_flavor(rng: &mut ChaCha8Rng) -> FlavorSpec {
    match rng.gen_range(0..10) {
        0..=2 => FlavorSpec::Integers,
        3..=5 => FlavorSpec::LocalAt(*[2, 3, 5].choose(rng).expect("nonempty")),
        6..=8 => {
            let mut s: Vec<u64> = [2, 3, 5].into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            if s.is_empty() {
                s.push(2);
            }
            FlavorSpec::Inverted(s)
        }
        _ => FlavorSpec::Rationals,
    }
}

fn random_mixed(rng: &mut ChaCha8Rng, seed: u64) -> Instance {
    let rank = rng.gen_range(1..=2);
    let slots: Vec<FlavorSpec> = (0..rank).map(|_| random_flavor(rng)).collect();
    let tail = match rng.gen_range(0..4) {
        0 => ExtensionSpec::default(),
        1 => integers_mod(*[2, 3, 4, 6].choose(rng).expect("nonempty")),
        _ => (0..RETRIES).find_map(|_| random_extension_spec(rng, 16, 2)).unwrap_or_default(),
    };
    let mut inst = mixed(slots, tail);
    inst.sweep = Some(SweepSpec { exhaustive: 12, samples: 4, seed, max_ideals: 150, ..SweepSpec::from(&SweepBounds::default()) });
    inst.bound = Some(if rank == 1 { 30 } else { 8 });
    if let Some(slot) = (0..rank).find(|&i| !matches!(inst.slots[i], FlavorSpec::Rationals)) {
        let p = match &inst.slots[slot] {
            FlavorSpec::LocalAt(p) => *p,
            FlavorSpec::Inverted(s) => [2, 3, 5, 7].into_iter().find(|q| !s.contains(q)).expect("a prime survives"),
            _ => 2,
        };
        inst.valuation = Some(ValuationSpec::Rule { rule: "p_adic".into(), slot, p });
    }
    Instance::Mixed(inst)
}

fn random_poset(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(2..=12);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut covers = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(0.25) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let mut gamma: Vec<String> = names.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    if gamma.is_empty() {
        gamma.push(names[0].clone());
    }
    poset(names, covers, gamma)
}

/// Families checked by the lemma on entries that name none: pairwise
/// comaximal proper `B`-invertible ideals containing `a`, plus `{A}`.
fn auto_families<U: Universe>(s: &Subject<U>, limit: usize) -> Vec<(usize, Vec<usize>)> {
    let u = &s.universe;
    let a_ring = u.ring_a();
    let invertible: Vec<usize> = (0..s.ideals.len())
        .filter(|&j| s.ideals[j] != a_ring && is_b_invertible(u, &s.ideals[j]).map(|v| v.0.holds).unwrap_or(false))
        .collect();
    let mut out = Vec::new();
    let whole = s.ideals.iter().position(|m| *m == a_ring);
    for (i, a) in s.ideals.iter().enumerate() {
        if out.len() >= limit {
            break;
        }
        let mut family: Vec<usize> = Vec::new();
        for &j in &invertible {
            let b = &s.ideals[j];
            if u.is_subset(a, b) && family.iter().all(|&k| u.comaximal_split(&s.ideals[k], b).is_some()) {
                family.push(j);
            }
        }
        if !family.is_empty() {
            out.push((i, family));
        }
    }
    if let Some(w) = whole {
        let first = s.ideals.iter().position(|m| *m != a_ring).unwrap_or(w);
        out.push((first, vec![w]));
    }
    out
}

fn index_family<I>((i, members): (usize, Vec<usize>)) -> FamilySpec<I> {
    FamilySpec { base: IdealRef::Index(i), members: members.into_iter().map(IdealRef::Index).collect() }
}

fn add_families(instance: &mut Instance) {
    match instance {
        Instance::Finite(f) if f.families.is_empty() => {
            if let Ok(Loaded::Finite(s)) = load(&Instance::Finite(f.clone()), "corpus") {
                f.families = auto_families(&s, 3).into_iter().map(index_family).collect();
            }
        }
        Instance::Mixed(m) if m.families.is_empty() => {
            if let Ok(Loaded::Mixed(s)) = load(&Instance::Mixed(m.clone()), "corpus") {
                m.families = auto_families(&s, 6).into_iter().map(index_family).collect();
            }
        }
        _ => {}
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFileEntry {
    id: String,
    #[serde(default)]
    group: Option<String>,
    instance: serde_json::Value,
    #[serde(default)]
    expected: Vec<Expectation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    entries: Vec<CorpusFileEntry>,
}

/// Loads a corpus file (`{"entries": [...]}`) or a directory of instance
/// files, one entry per `*.json` file in name order.
pub fn load_corpus(path: &Path) -> Result<Corpus, HarnessError> {
    let origin = path.display().to_string();
    let mut entries = Vec::new();
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        for f in files {
            let text = std::fs::read_to_string(&f)?;
            let instance = parse_instance(&text, &f.display().to_string())?;
            let id = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            entries.push(entry(id, None, instance, vec![]));
        }
    } else {
        let text = std::fs::read_to_string(path)?;
        let mut de = serde_json::Deserializer::from_str(&text);
        let file: CorpusFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            ParseError { origin: origin.clone(), line: inner.line(), column: inner.column(), path, message: inner.to_string() }
        })?;
        for (i, e) in file.entries.into_iter().enumerate() {
            let instance = parse_instance(&e.instance.to_string(), &format!("{origin}: entries[{i}].instance"))?;
            entries.push(CorpusEntry { id: e.id, group: e.group, instance, expected: e.expected });
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.id.clone()) {
            return Err(HarnessError::ConfigInvalid(format!("duplicate corpus id {}", e.id)));
        }
    }
    Ok(Corpus { entries, notices: vec![] })
}
