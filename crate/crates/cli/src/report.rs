//! The suite report: a versioned JSON document plus a text summary.

use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::Expectation;
use crate::eval::{render_witness, Observation, Target};
use crate::instance::Instance;
use crate::laws::LawInstance;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Self { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub command: String,
    pub corpus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    pub laws: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub props: Vec<String>,
    pub max_ring_size: usize,
    pub seed: u64,
    pub oracle_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub universe: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// The instance as evaluated; feed it to `analyze` to replay.
    pub instance: Instance,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub observations: Vec<Observation>,
    pub laws: Vec<LawInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawAggregate {
    pub law: String,
    pub instances: usize,
    pub vacuous: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub entry: String,
    pub law: String,
    #[serde(flatten)]
    pub target: Target,
    /// Properties to pass to `analyze --props` to reproduce the observations.
    pub props: Vec<String>,
    pub observations: Vec<Observation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub law_instances: usize,
    pub vacuous: usize,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub tool: Tool,
    pub config: Config,
    pub entries: Vec<EntryReport>,
    pub laws: Vec<LawAggregate>,
    pub failures: Vec<Failure>,
    pub notices: Vec<String>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Aggregates per-law counts and failures from the entry reports.
    pub fn assemble(config: Config, entries: Vec<EntryReport>, laws: &[&str], notices: Vec<String>) -> Self {
        let mut aggregates: Vec<LawAggregate> = laws
            .iter()
            .map(|l| LawAggregate { law: l.to_string(), instances: 0, vacuous: 0, failures: 0 })
            .collect();
        let mut failures = Vec::new();
        for e in &entries {
            if let Some(err) = &e.error {
                failures.push(Failure {
                    entry: e.id.clone(),
                    law: "load".into(),
                    target: Target::Instance,
                    props: vec![],
                    observations: vec![],
                    notes: vec![err.clone()],
                });
            }
            for li in &e.laws {
                let agg = aggregates.iter_mut().find(|a| a.law == li.law).expect("law was requested");
                agg.instances += 1;
                agg.vacuous += usize::from(li.vacuous);
                if !li.holds {
                    agg.failures += 1;
                    let observations: Vec<Observation> = li.observations.iter().map(|&i| e.observations[i].clone()).collect();
                    let mut props: Vec<String> = observations.iter().map(|o| o.prop.clone()).collect();
                    props.dedup();
                    failures.push(Failure {
                        entry: e.id.clone(),
                        law: li.law.clone(),
                        target: li.target,
                        props,
                        observations,
                        notes: li.notes.clone(),
                    });
                }
            }
        }
        let summary = Summary {
            entries: entries.len(),
            law_instances: aggregates.iter().map(|a| a.instances).sum(),
            vacuous: aggregates.iter().map(|a| a.vacuous).sum(),
            failures: failures.len(),
            passed: failures.is_empty(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            tool: Tool::default(),
            config,
            entries,
            laws: aggregates,
            failures,
            notices,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Per-law table, failures and notices.
    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} ({})", self.tool.name, self.tool.version, self.config.command);
        if !self.laws.is_empty() {
            let _ = writeln!(s, "{:<24} {:>9} {:>8} {:>8}", "law", "instances", "vacuous", "failures");
            for a in &self.laws {
                let _ = writeln!(s, "{:<24} {:>9} {:>8} {:>8}", a.law, a.instances, a.vacuous, a.failures);
            }
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL {} {} {}", f.entry, f.law, target_text(f.target));
            for o in &f.observations {
                let _ = writeln!(s, "  {}", observation_text(o));
            }
            for n in &f.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        for n in &self.notices {
            let _ = writeln!(s, "notice: {n}");
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{} entries, {} law instances ({} vacuous), {} failures: {}",
            m.entries,
            m.law_instances,
            m.vacuous,
            m.failures,
            if m.passed { "PASS" } else { "FAIL" }
        );
        s
    }

    /// The summary followed by every observation of every entry.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(s, "== {} [{}] {}", e.id, e.universe, e.description);
            if let Some(err) = &e.error {
                let _ = writeln!(s, "  error: {err}");
            }
            for o in &e.observations {
                let _ = writeln!(s, "  {}", observation_text(o));
            }
        }
        s.push_str(&self.summary_text());
        s
    }
}

pub fn target_text(t: Target) -> String {
    match t {
        Target::Instance => "instance".into(),
        Target::Ideal(i) => format!("ideal {i}"),
        Target::Family(k) => format!("family {k}"),
        Target::Forced(k) => format!("forced {k}"),
    }
}

pub fn observation_text(o: &Observation) -> String {
    let v = &o.verdict;
    let mut s = format!("{} @ {}", o.prop, target_text(o.target));
    if let Some(subject) = &o.subject {
        let _ = write!(s, " ({subject})");
    }
    let _ = write!(s, ": {}", v.holds);
    if v.vacuous {
        s.push_str(" [vacuous]");
    }
    if let Some(w) = &v.witness {
        let _ = write!(s, "; witness {}", render_witness(w));
    }
    s
}
