use super::checks::{CheckResult, Outcome};
use super::config::{ReportFormat, ResultsDetail, RunConfig};
use super::SweepOutcome;
use crate::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

/// Bumped whenever the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 9] = [
    "graph_id", "graph6", "n", "m", "check", "result", "lhs_bits", "rhs_bits", "slack_bits",
];

#[derive(Serialize)]
struct Header {
    generator: String,
    generated_at_unix: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    header: Header,
    config: &'a RunConfig,
    summary: &'a super::VerificationSummary,
    results: Vec<&'a CheckResult>,
}

/// `SOURCE_DATE_EPOCH` if set, otherwise the wall clock.
fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        })
}

fn selected(outcome: &SweepOutcome, detail: ResultsDetail) -> Vec<&CheckResult> {
    outcome
        .results
        .iter()
        .filter(|r| match detail {
            ResultsDetail::None => false,
            ResultsDetail::Failures => r.result == Outcome::Fail,
            ResultsDetail::All => true,
        })
        .collect()
}

/// Pretty JSON. Everything outside `header` is a function of the config
/// and the corpus alone.
pub fn json_report(config: &RunConfig, outcome: &SweepOutcome) -> String {
    let report = JsonReport {
        schema_version: SCHEMA_VERSION,
        header: Header {
            generator: format!("isbound {}", env!("CARGO_PKG_VERSION")),
            generated_at_unix: timestamp(),
        },
        config,
        summary: &outcome.summary,
        results: selected(outcome, config.detail),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serialises");
    text.push('\n');
    text
}

pub fn csv_report(config: &RunConfig, outcome: &SweepOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    let bits = |x: Option<f64>| x.map_or(String::new(), |v| v.to_string());
    for r in selected(outcome, config.detail) {
        w.write_record([
            r.graph_id.clone(),
            r.graph6.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.label(),
            r.result.to_string(),
            bits(r.lhs_bits),
            bits(r.rhs_bits),
            bits(r.slack_bits),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

/// Write `report.json` and/or `report.csv` into the configured directory.
pub fn write_reports(config: &RunConfig, outcome: &SweepOutcome) -> Result<Vec<PathBuf>> {
    let Some(dir) = &config.out_dir else {
        return Ok(Vec::new());
    };
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in &config.formats {
        let (name, text) = match format {
            ReportFormat::Json => ("report.json", json_report(config, outcome)),
            ReportFormat::Csv => ("report.csv", csv_report(config, outcome)?),
        };
        let path = dir.join(name);
        std::fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::super::{run_corpus, named_corpus};
    use super::*;

    fn outcome(config: &RunConfig) -> SweepOutcome {
        let corpus: Vec<_> = named_corpus().into_iter().take(8).collect();
        run_corpus(&corpus, config)
    }

    fn strip_header(text: &str) -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v.as_object_mut().unwrap().remove("header");
        v
    }

    #[test]
    fn json_layout() {
        let config = RunConfig {
            detail: ResultsDetail::All,
            ..RunConfig::default()
        };
        let text = json_report(&config, &outcome(&config));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!(v["header"]["generated_at_unix"].is_u64());
        assert_eq!(v["config"]["lambdas"][0], "1/2");
        assert_eq!(v["summary"]["graphs"], 8);
        assert_eq!(v["results"][0]["check"], "oracle");
        assert_eq!(v["results"][0]["result"], "pass");
    }

    #[test]
    fn json_is_deterministic() {
        let config = RunConfig::default();
        let a = json_report(&config, &outcome(&config));
        let b = json_report(&RunConfig { threads: 1, ..config.clone() }, &outcome(&config));
        assert_eq!(strip_header(&a), strip_header(&b));
    }

    #[test]
    fn csv_columns() {
        let config = RunConfig {
            detail: ResultsDetail::All,
            ..RunConfig::default()
        };
        let text = csv_report(&config, &outcome(&config)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        let first: Vec<_> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 9);
        assert_eq!(first[4], "oracle");
        assert!(text.contains("weighted-upper@1/2"));
        let quiet = csv_report(&RunConfig::default(), &outcome(&config)).unwrap();
        assert_eq!(quiet.lines().count(), 1);
    }
}
