//! Corpus generation, the verification sweep, and report writing.

mod checks;
mod config;
mod corpus;
mod report;

pub use checks::{
    run_check, run_checks, Check, CheckResult, Outcome, ORACLE_LIMIT, SHEARER_LIMIT, SWAP_LIMIT,
};
pub use config::{ReportFormat, ResultsDetail, RunConfig, OUT_DIR_ENV};
pub use corpus::{
    find_named, generate_exhaustive, load_file, named_corpus, regular_tier, CorpusEntry,
    Provenance, EXHAUSTIVE_LIMIT,
};
pub use report::{csv_report, json_report, write_reports, SCHEMA_VERSION};

use crate::error::Result;
use crate::parallel::par_map;
use serde::Serialize;
use std::collections::BTreeMap;

/// Tiers selected by `config`, in order: exhaustive `1..=max_n`, named,
/// regular, then files.
pub fn build_corpus(config: &RunConfig) -> Result<Vec<CorpusEntry>> {
    let mut corpus = Vec::new();
    for n in 1..=config.max_n {
        corpus.extend(generate_exhaustive(n)?);
    }
    if config.named {
        corpus.extend(named_corpus());
    }
    if config.regular {
        corpus.extend(regular_tier());
    }
    for path in &config.files {
        corpus.extend(load_file(path)?);
    }
    Ok(corpus)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTotals {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub equality_cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub graph_id: String,
    pub graph6: String,
    pub check: String,
    pub detail: Option<String>,
}

/// Totals per check name plus every failure with its graph6 witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub graphs: usize,
    pub totals: BTreeMap<String, CheckTotals>,
    pub failures: Vec<Failure>,
}

impl VerificationSummary {
    pub fn from_results(graphs: usize, results: &[CheckResult]) -> Self {
        let mut summary = VerificationSummary {
            graphs,
            ..Default::default()
        };
        for r in results {
            let t = summary.totals.entry(r.check.to_string()).or_default();
            match r.result {
                Outcome::Skip => t.skipped += 1,
                Outcome::Pass => {
                    t.checked += 1;
                    t.passed += 1;
                }
                Outcome::Fail => {
                    t.checked += 1;
                    t.failed += 1;
                    summary.failures.push(Failure {
                        graph_id: r.graph_id.clone(),
                        graph6: r.graph6.clone(),
                        check: r.label(),
                        detail: r.detail.clone(),
                    });
                }
            }
            if r.result != Outcome::Skip && r.equality {
                t.equality_cases += 1;
            }
        }
        summary
    }

    pub fn failed(&self) -> usize {
        self.totals.values().map(|t| t.failed).sum()
    }

    pub fn checked(&self) -> usize {
        self.totals.values().map(|t| t.checked).sum()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{} graphs\n{:<16} {:>9} {:>9} {:>7} {:>9} {:>9}\n",
            self.graphs, "check", "checked", "passed", "failed", "skipped", "equality"
        );
        for (name, t) in &self.totals {
            out.push_str(&format!(
                "{:<16} {:>9} {:>9} {:>7} {:>9} {:>9}\n",
                name, t.checked, t.passed, t.failed, t.skipped, t.equality_cases
            ));
        }
        for f in &self.failures {
            out.push_str(&format!("FAIL {} {} ({})\n", f.check, f.graph_id, f.graph6));
        }
        out
    }
}

/// Everything a sweep produced, in corpus order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutcome {
    pub summary: VerificationSummary,
    pub results: Vec<CheckResult>,
}

/// Run every check on every entry. Work is spread over graphs; results are
/// reassembled in corpus order, so the outcome does not depend on the
/// number of threads.
pub fn run_corpus(corpus: &[CorpusEntry], config: &RunConfig) -> SweepOutcome {
    let results: Vec<CheckResult> = par_map(corpus, config.threads, |e| run_checks(&e.id, &e.graph, config))
        .into_iter()
        .flatten()
        .collect();
    SweepOutcome {
        summary: VerificationSummary::from_results(corpus.len(), &results),
        results,
    }
}

/// Build the corpus, run the sweep and write the configured reports.
pub fn run_all(config: &RunConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let corpus = build_corpus(config)?;
    let outcome = run_corpus(&corpus, config);
    if config.out_dir.is_some() {
        write_reports(config, &outcome)?;
    }
    Ok(outcome)
}
