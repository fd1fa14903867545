//! Suite execution over a corpus and single-instance analysis.

use std::path::Path;

use rayon::prelude::*;

use extalg_core::poset::FINITE_INSTANCE_NOTE;
use extalg_core::props::DEFAULT_ORACLE_CAP;
use extalg_core::prufer::DESK_SCALE_NOTE;

use crate::corpus::{builtin_corpus, load_corpus, Corpus, CorpusEntry, Profile};
use crate::error::HarnessError;
use crate::eval::{Evaluator, PosetEvaluator, Target, Universe, FAMILY_PROPS, FORCED_PROPS, IDEAL_PROPS, INSTANCE_PROPS, POSET_PROPS};
use crate::instance::{load, parse_instance, Loaded, Subject};
use crate::laws::{apply_poset, apply_ring, parse_laws};
use crate::report::{Config, EntryReport, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// `builtin` or a path.
    pub corpus: String,
    pub profile: Profile,
    pub laws: String,
    pub max_ring_size: usize,
    pub seed: u64,
    pub oracle_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            corpus: "builtin".into(),
            profile: Profile::Standard,
            laws: "all".into(),
            max_ring_size: 64,
            seed: 0,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Runs on a pool of `EXTALG_THREADS` workers when set.
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    match std::env::var("EXTALG_THREADS") {
        Ok(n) => {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| HarnessError::ConfigInvalid(format!("EXTALG_THREADS must be a positive integer, got {n:?}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| HarnessError::ConfigInvalid(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

pub fn load_suite_corpus(cfg: &SuiteConfig) -> Result<Corpus, HarnessError> {
    if cfg.corpus == "builtin" {
        Ok(builtin_corpus(cfg.seed, cfg.profile, cfg.max_ring_size))
    } else {
        load_corpus(Path::new(&cfg.corpus))
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let laws = parse_laws(&cfg.laws)?;
    if cfg.max_ring_size == 0 {
        return Err(HarnessError::ConfigInvalid("--max-ring-size must be positive".into()));
    }
    let corpus = load_suite_corpus(cfg)?;
    let entries = with_pool(|| {
        corpus.entries.par_iter().map(|e| evaluate_entry(e, &laws, cfg.oracle_cap, cfg.seed)).collect::<Vec<_>>()
    })?;
    let mut notices = corpus.notices;
    if laws.contains(&"main_theorem") {
        notices.push(DESK_SCALE_NOTE.to_string());
    }
    if laws.iter().any(|l| ["poset_hypotheses", "regular_poset"].contains(l)) {
        notices.push(FINITE_INSTANCE_NOTE.to_string());
    }
    let config = Config {
        command: "verify".into(),
        corpus: cfg.corpus.clone(),
        profile: (cfg.corpus == "builtin").then(|| format!("{:?}", cfg.profile).to_lowercase()),
        laws: laws.iter().map(|l| l.to_string()).collect(),
        props: vec![],
        max_ring_size: cfg.max_ring_size,
        seed: cfg.seed,
        oracle_cap: cfg.oracle_cap,
    };
    Ok(SuiteReport::assemble(config, entries, &laws, notices))
}

fn blank_report(entry: &CorpusEntry, universe: &str, description: String) -> EntryReport {
    EntryReport {
        id: entry.id.clone(),
        universe: universe.into(),
        description,
        group: entry.group.clone(),
        instance: entry.instance.clone(),
        expected: entry.expected.clone(),
        error: None,
        observations: vec![],
        laws: vec![],
    }
}

pub fn evaluate_entry(entry: &CorpusEntry, laws: &[&str], oracle_cap: usize, seed: u64) -> EntryReport {
    let kind = format!("{:?}", entry.instance.kind()).to_lowercase();
    match load(&entry.instance, &entry.id) {
        Err(e) => {
            let mut r = blank_report(entry, &kind, String::new());
            r.error = Some(e.to_string());
            r
        }
        Ok(Loaded::Finite(s)) => ring_entry(entry, &s, laws, oracle_cap, seed),
        Ok(Loaded::Mixed(s)) => ring_entry(entry, &s, laws, oracle_cap, seed),
        Ok(Loaded::Poset(p)) => {
            let mut r = blank_report(entry, "poset", format!("|P| = {}, |Γ| = {}", p.len(), p.gamma().count_ones(..)));
            let mut ev = PosetEvaluator::new(&p);
            r.laws = apply_poset(&mut ev, entry, laws);
            r.observations = ev.ledger.observations;
            r
        }
    }
}

fn ring_entry<U: Universe>(entry: &CorpusEntry, s: &Subject<U>, laws: &[&str], oracle_cap: usize, seed: u64) -> EntryReport {
    let u = &s.universe;
    let description = format!("{}; {} ideals", u.describe_instance(), s.ideals.len());
    let mut r = blank_report(entry, u.universe_name(), description);
    let mut ev = Evaluator::new(s, oracle_cap, seed);
    r.laws = apply_ring(&mut ev, entry, laws);
    r.observations = ev.ledger.observations;
    r
}

fn expand_props(asked: &[String], known: &[&[&str]]) -> Result<Vec<String>, HarnessError> {
    let all: Vec<&str> = known.iter().flat_map(|k| k.iter().copied()).collect();
    if asked.is_empty() {
        return Err(HarnessError::ConfigInvalid("no properties given".into()));
    }
    if let Some(bad) = asked.iter().find(|p| *p != "all" && !all.contains(&p.as_str())) {
        return Err(HarnessError::ConfigInvalid(format!("unknown property `{bad}`; known: all, {}", all.join(", "))));
    }
    Ok(all.into_iter().filter(|p| asked.iter().any(|a| a == "all" || a == p)).map(String::from).collect())
}

fn evaluate_props<U: Universe>(ev: &mut Evaluator<'_, U>, props: &[String]) {
    let s = ev.subject;
    for p in props {
        let p = p.as_str();
        if IDEAL_PROPS.contains(&p) {
            for i in 0..s.ideals.len() {
                ev.get(p, Target::Ideal(i));
            }
        } else if INSTANCE_PROPS.contains(&p) {
            ev.get(p, Target::Instance);
        } else if FAMILY_PROPS.contains(&p) {
            for k in 0..s.families.len() {
                ev.get(p, Target::Family(k));
            }
        } else if FORCED_PROPS.contains(&p) {
            for k in 0..s.forced.len() {
                ev.get(p, Target::Forced(k));
            }
        }
    }
}

/// Evaluates `props` (or `all`) on every applicable target of one instance
/// file.
pub fn analyze(file: &Path, props: &[String], oracle_cap: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let origin = file.display().to_string();
    let text = std::fs::read_to_string(file)?;
    let instance = parse_instance(&text, &origin)?;
    let loaded = load(&instance, &origin)?;
    let id = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let entry = CorpusEntry { id, group: None, instance, expected: vec![] };
    let (props, report) = match &loaded {
        Loaded::Finite(s) => {
            let props = expand_props(props, &[IDEAL_PROPS, INSTANCE_PROPS, FAMILY_PROPS, FORCED_PROPS])?;
            (props.clone(), analyze_ring(&entry, s, &props, oracle_cap, seed))
        }
        Loaded::Mixed(s) => {
            let props = expand_props(props, &[IDEAL_PROPS, INSTANCE_PROPS, FAMILY_PROPS, FORCED_PROPS])?;
            (props.clone(), analyze_ring(&entry, s, &props, oracle_cap, seed))
        }
        Loaded::Poset(p) => {
            let props = expand_props(props, &[POSET_PROPS])?;
            let mut r = blank_report(&entry, "poset", format!("|P| = {}, |Γ| = {}", p.len(), p.gamma().count_ones(..)));
            let mut ev = PosetEvaluator::new(p);
            for prop in &props {
                ev.get(prop);
            }
            r.observations = ev.ledger.observations;
            (props, r)
        }
    };
    let mut notices = Vec::new();
    if props.iter().any(|p| p == "main_theorem" || p == "prufer_ring_corollary") {
        notices.push(DESK_SCALE_NOTE.to_string());
    }
    if props.iter().any(|p| p == "equivalence" || p == "regular_poset") {
        notices.push(FINITE_INSTANCE_NOTE.to_string());
    }
    let config = Config {
        command: "analyze".into(),
        corpus: origin,
        profile: None,
        laws: vec![],
        props,
        max_ring_size: extalg_core::finite::DEFAULT_SIZE_CAP,
        seed,
        oracle_cap,
    };
    Ok(SuiteReport::assemble(config, vec![report], &[], notices))
}

fn analyze_ring<U: Universe>(entry: &CorpusEntry, s: &Subject<U>, props: &[String], oracle_cap: usize, seed: u64) -> EntryReport {
    let u = &s.universe;
    let mut r = blank_report(entry, u.universe_name(), format!("{}; {} ideals", u.describe_instance(), s.ideals.len()));
    let mut ev = Evaluator::new(s, oracle_cap, seed);
    evaluate_props(&mut ev, props);
    r.observations = ev.ledger.observations;
    r
}

/// Checks the hypotheses, the equivalence and the comaximal enumeration on a
/// poset file; fails when the file is not a poset.
pub fn poset(file: &Path) -> Result<SuiteReport, HarnessError> {
    let text = std::fs::read_to_string(file)?;
    let instance = parse_instance(&text, &file.display().to_string())?;
    if !matches!(instance.kind(), crate::instance::Kind::Poset) {
        return Err(HarnessError::ConfigInvalid(format!("{} is not a poset file", file.display())));
    }
    let mut report = analyze(file, &["all".to_string()], DEFAULT_ORACLE_CAP, 0)?;
    report.config.command = "poset".into();
    report.summary.passed = poset_passed(&report);
    Ok(report)
}

/// A poset report fails when the hypotheses or the equivalence fail.
fn poset_passed(report: &SuiteReport) -> bool {
    report.entries.iter().all(|e| {
        e.observations.iter().filter(|o| o.prop == "hypotheses" || o.prop == "equivalence").all(|o| o.verdict.holds)
    })
}
