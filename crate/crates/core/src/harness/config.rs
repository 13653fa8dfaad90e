use super::checks::Check;
use super::corpus::EXHAUSTIVE_LIMIT;
use crate::bounds::DEFAULT_TOLERANCE;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Environment variable naming the default report directory.
pub const OUT_DIR_ENV: &str = "ISBOUND_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Unknown {
                kind: "report format",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// Which per-check rows go into the reports. The summary is always complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultsDetail {
    None,
    Failures,
    All,
}

impl FromStr for ResultsDetail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ResultsDetail::None),
            "failures" => Ok(ResultsDetail::Failures),
            "all" => Ok(ResultsDetail::All),
            _ => Err(Error::Unknown {
                kind: "results detail",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for ResultsDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResultsDetail::None => "none",
            ResultsDetail::Failures => "failures",
            ResultsDetail::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Exhaustive tiers `1..=max_n`; 0 disables the tier.
    pub max_n: usize,
    pub named: bool,
    pub regular: bool,
    pub lambdas: Vec<BigRational>,
    pub weight_pairs: Vec<(BigRational, BigRational)>,
    pub tolerance: f64,
    /// 0 uses every available core.
    pub threads: usize,
    pub out_dir: Option<PathBuf>,
    pub formats: Vec<ReportFormat>,
    pub detail: ResultsDetail,
    pub files: Vec<PathBuf>,
    /// `None` runs every check.
    pub checks: Option<BTreeSet<Check>>,
}

fn r(s: &str) -> BigRational {
    parse_rational(s).expect("literal")
}

impl Default for RunConfig {
    fn default() -> Self {
        let grid = ["1/2", "1", "2"];
        RunConfig {
            max_n: 6,
            named: true,
            regular: true,
            lambdas: ["1/2", "1", "2", "5"].into_iter().map(r).collect(),
            weight_pairs: grid
                .iter()
                .flat_map(|l| grid.iter().map(move |m| (r(l), r(m))))
                .collect(),
            tolerance: DEFAULT_TOLERANCE,
            threads: 0,
            out_dir: None,
            formats: vec![ReportFormat::Json],
            detail: ResultsDetail::Failures,
            files: Vec::new(),
            checks: None,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::domain(format!("{key}: expected a boolean, got {v:?}"))),
    }
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| Error::domain(format!("{key}: expected a non-negative integer, got {v:?}")))
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl RunConfig {
    /// The default report directory from the environment, if set.
    pub fn env_out_dir() -> Option<PathBuf> {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::domain(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_n > EXHAUSTIVE_LIMIT {
            return Err(Error::Capacity {
                what: "exhaustive tier",
                requested: self.max_n,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        Ok(())
    }

    /// Apply `key = value` lines on top of the defaults. Blank lines and
    /// lines starting with `#` are ignored; lists are comma-separated and
    /// weight pairs are written `lambda:mu`.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("line {}: expected key = value", i + 1)))?;
            config.set(key.trim(), value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "max_n" => self.max_n = parse_usize(key, v)?,
            "named" => self.named = parse_bool(key, v)?,
            "regular" => self.regular = parse_bool(key, v)?,
            "lambdas" => self.lambdas = list(v).map(parse_rational).collect::<Result<_>>()?,
            "weight_pairs" => {
                self.weight_pairs = list(v)
                    .map(|p| {
                        let (l, m) = p
                            .split_once(':')
                            .ok_or_else(|| Error::domain(format!("weight pair {p:?} is not lambda:mu")))?;
                        Ok((parse_rational(l.trim())?, parse_rational(m.trim())?))
                    })
                    .collect::<Result<_>>()?
            }
            "tolerance" => {
                self.tolerance = v
                    .parse()
                    .map_err(|_| Error::domain(format!("tolerance: not a number: {v:?}")))?
            }
            "threads" => self.threads = parse_usize(key, v)?,
            "out_dir" => self.out_dir = (!v.is_empty()).then(|| PathBuf::from(v)),
            "format" => self.formats = list(v).map(str::parse).collect::<Result<_>>()?,
            "detail" => self.detail = v.parse()?,
            "files" => self.files = list(v).map(PathBuf::from).collect(),
            "checks" => {
                self.checks = match v {
                    "all" => None,
                    _ => Some(list(v).map(str::parse).collect::<Result<_>>()?),
                }
            }
            _ => {
                return Err(Error::Unknown {
                    kind: "config key",
                    name: key.to_string(),
                })
            }
        }
        Ok(())
    }

    pub fn to_key_values(&self) -> String {
        let join = |items: Vec<String>| items.join(", ");
        let mut out = String::new();
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        kv("max_n", self.max_n.to_string());
        kv("named", self.named.to_string());
        kv("regular", self.regular.to_string());
        kv("lambdas", join(self.lambdas.iter().map(format_rational).collect()));
        kv(
            "weight_pairs",
            join(
                self.weight_pairs
                    .iter()
                    .map(|(l, m)| format!("{}:{}", format_rational(l), format_rational(m)))
                    .collect(),
            ),
        );
        kv("tolerance", format!("{:e}", self.tolerance));
        kv("threads", self.threads.to_string());
        kv(
            "out_dir",
            self.out_dir.as_ref().map_or(String::new(), |p| p.display().to_string()),
        );
        kv("format", join(self.formats.iter().map(|f| f.to_string()).collect()));
        kv("detail", self.detail.to_string());
        kv("files", join(self.files.iter().map(|p| p.display().to_string()).collect()));
        kv(
            "checks",
            self.checks.as_ref().map_or("all".to_string(), |set| {
                join(set.iter().map(|c| c.to_string()).collect())
            }),
        );
        out
    }
}

/// The run-relevant part of the configuration as it appears in reports.
/// Output location and thread count are left out so that reports do not
/// depend on where or how wide the run was.
impl Serialize for RunConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            max_n: usize,
            named: bool,
            regular: bool,
            lambdas: Vec<String>,
            weight_pairs: Vec<[String; 2]>,
            tolerance: f64,
            detail: ResultsDetail,
            files: Vec<String>,
            checks: Option<&'a BTreeSet<Check>>,
        }
        Repr {
            max_n: self.max_n,
            named: self.named,
            regular: self.regular,
            lambdas: self.lambdas.iter().map(format_rational).collect(),
            weight_pairs: self
                .weight_pairs
                .iter()
                .map(|(l, m)| [format_rational(l), format_rational(m)])
                .collect(),
            tolerance: self.tolerance,
            detail: self.detail,
            files: self.files.iter().map(|p| p.display().to_string()).collect(),
            checks: self.checks.as_ref(),
        }
        .serialize(s)
    }
}
