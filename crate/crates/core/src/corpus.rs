//! Regression corpus: a JSON array of entries, each naming a command, its
//! arguments and the expected values of selected result fields.
//!
//! ```json
//! [{"id": "tau-cubic", "command": "tjurina", "f": "x^3+y^3+z^3+w^3",
//!   "expected": {"tau": 16}}]
//! ```
//!
//! Expected keys are JSON pointers into `results` without the leading `/`.
//! An entry passes when every expected value matches exactly and the
//! entry's own report has no failing check.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{
    defspace_fiber_report, defspace_verify_report, dualcomplex_classify_report,
    dualcomplex_invariants_report, germ_report, smallres_report, Germ, InputError,
    DEFAULT_MAX_CUTOFF, DEFAULT_VARS,
};
use crate::dualcomplex::{DivisorConfiguration, SemistableKind};
use crate::report::{Check, Report};
use crate::smallres::GermSpec;

pub const BUNDLED_CORPUS: &str = include_str!("../../../data/corpus.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Tjurina {
        f: String,
        #[serde(default)]
        vars: Option<Vec<String>>,
    },
    Milnor {
        f: String,
        #[serde(default)]
        vars: Option<Vec<String>>,
    },
    Smallres {
        germ: GermSpec,
    },
    DualcomplexInvariants {
        config: DivisorConfiguration,
        #[serde(default = "three")]
        n: usize,
        #[serde(default)]
        semistable: Option<SemistableKind>,
    },
    DualcomplexClassify {
        config: DivisorConfiguration,
    },
    DefspaceVerify {
        n: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_trials")]
        trials: usize,
    },
    DefspaceFiber {
        n: usize,
        b: Vec<String>,
    },
}

fn three() -> usize {
    3
}

fn default_trials() -> usize {
    8
}

#[derive(Clone, Debug, Deserialize)]
pub struct Entry {
    pub id: String,
    #[serde(flatten)]
    pub task: Task,
    pub expected: BTreeMap<String, Value>,
}

impl Task {
    pub fn run(&self) -> Result<Report, InputError> {
        let default_vars = || {
            DEFAULT_VARS
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
        };
        match self {
            Task::Tjurina { f, vars } => germ_report(
                Germ::Tjurina,
                f,
                &vars.clone().unwrap_or_else(default_vars),
                Some(DEFAULT_MAX_CUTOFF),
            ),
            Task::Milnor { f, vars } => germ_report(
                Germ::Milnor,
                f,
                &vars.clone().unwrap_or_else(default_vars),
                Some(DEFAULT_MAX_CUTOFF),
            ),
            Task::Smallres { germ } => smallres_report(germ),
            Task::DualcomplexInvariants {
                config,
                n,
                semistable,
            } => {
                config.validate().map_err(|e| InputError(e.to_string()))?;
                dualcomplex_invariants_report(config, *n, *semistable)
            }
            Task::DualcomplexClassify { config } => {
                config.validate().map_err(|e| InputError(e.to_string()))?;
                dualcomplex_classify_report(config).map(|(r, _)| r)
            }
            Task::DefspaceVerify { n, seed, trials } => defspace_verify_report(*n, *seed, *trials),
            Task::DefspaceFiber { n, b } => defspace_fiber_report(*n, b),
        }
    }

    pub fn command(&self) -> &'static str {
        match self {
            Task::Tjurina { .. } => "tjurina",
            Task::Milnor { .. } => "milnor",
            Task::Smallres { .. } => "smallres",
            Task::DualcomplexInvariants { .. } => "dualcomplex-invariants",
            Task::DualcomplexClassify { .. } => "dualcomplex-classify",
            Task::DefspaceVerify { .. } => "defspace-verify",
            Task::DefspaceFiber { .. } => "defspace-fiber",
        }
    }
}

/// Parses a corpus; an empty list or duplicate ids are input errors.
pub fn parse_corpus(text: &str) -> Result<Vec<Entry>, InputError> {
    let mut entries: Vec<Entry> =
        serde_json::from_str(text).map_err(|e| InputError(format!("invalid corpus: {e}")))?;
    if entries.is_empty() {
        return Err(InputError("corpus has no entries".into()));
    }
    let mut seen = BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.id.as_str()) {
            return Err(InputError(format!("duplicate corpus id {}", e.id)));
        }
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

fn entry_checks(entry: &Entry) -> (Vec<Check>, Value) {
    let prefix = &entry.id;
    match entry.task.run() {
        Err(e) => (
            vec![Check::with_outcome(
                format!("{prefix}: runs"),
                "report",
                format!("input error: {e}"),
                false,
            )],
            Value::Null,
        ),
        Ok(report) => {
            let mut checks: Vec<Check> = entry
                .expected
                .iter()
                .map(|(key, want)| {
                    let got = report
                        .results
                        .pointer(&format!("/{key}"))
                        .cloned()
                        .unwrap_or(Value::Null);
                    Check::equal(format!("{prefix}: {key}"), want, got)
                })
                .collect();
            let failed: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
            checks.push(Check::equal(
                format!("{prefix}: internal checks"),
                Vec::<&str>::new(),
                failed,
            ));
            (checks, report.results)
        }
    }
}

/// Runs every entry in parallel; the report lists entries in id order.
pub fn run_corpus(entries: &[Entry], source: &str) -> Report {
    let outcomes: Vec<(Vec<Check>, Value)> = entries.par_iter().map(entry_checks).collect();
    let mut summary = Vec::new();
    let mut checks = Vec::new();
    for (entry, (c, _)) in entries.iter().zip(&outcomes) {
        let pass = c.iter().all(|c| c.pass);
        summary.push(json!({
            "id": entry.id,
            "command": entry.task.command(),
            "pass": pass,
            "failures": c.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect::<Vec<_>>(),
        }));
        checks.extend(c.iter().cloned());
    }
    let passed = summary.iter().filter(|s| s["pass"] == json!(true)).count();
    let mut report = Report::new(
        "corpus",
        json!({ "source": source }),
        json!({ "total": entries.len(), "passed": passed, "failed": entries.len() - passed, "entries": summary }),
    );
    report.checks = checks;
    report
}
