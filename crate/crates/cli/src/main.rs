use clap::{Parser, Subcommand, ValueEnum};
use isbound::bounds::{BoundOptions, BoundReport};
use isbound::counting::{count_independent_sets, independence_polynomial};
use isbound::entropy::audit_entropy_chain_both;
use isbound::graph::{bipartition, layer_decomposition, parse_edge_list, parse_graph6};
use isbound::harness::{
    find_named, run_all, run_check, write_reports, Check, Outcome, ReportFormat, ResultsDetail,
    RunConfig,
};
use isbound::rational::parse_rational;
use isbound::{Error, Graph};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact independent-set counts and checks of extremal bounds on small graphs.
///
/// INPUT is a path to an edge-list or graph6 file, a fixture id such as
/// `petersen` or `k3_3`, or a graph6 string.
#[derive(Parser)]
#[command(name = "isbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print i(G) and the independence polynomial.
    Count {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every applicable bound against the exact count.
    Bounds {
        input: String,
        /// Fugacity for the weighted bounds (repeatable).
        #[arg(long = "lambda")]
        lambdas: Vec<String>,
        /// Second weight for the bigraph bound, paired with each --lambda (repeatable).
        #[arg(long = "mu")]
        mus: Vec<String>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run one named check with full witness output.
    Verify {
        check: String,
        input: String,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Run the verification sweep over the configured corpus.
    Sweep {
        /// Largest n for the exhaustive tier (0 disables it).
        #[arg(long)]
        max_n: Option<usize>,
        /// Report directory; defaults to $ISBOUND_OUT_DIR.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Vec<Format>,
        /// Key-value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Rows to include in reports: none, failures or all.
        #[arg(long)]
        detail: Option<String>,
        #[arg(long)]
        no_named: bool,
        #[arg(long)]
        no_regular: bool,
        /// Extra corpus files (repeatable).
        #[arg(long = "file")]
        files: Vec<PathBuf>,
    },
    /// Audit the entropy chain on a d-regular bipartite graph.
    AuditEntropy {
        input: String,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
    /// BFS layer decomposition from a vertex.
    Layers {
        input: String,
        #[arg(short)]
        w: usize,
    },
}

/// Failures of the checks themselves exit 1; everything else that goes wrong
/// is a usage or input problem and exits 2.
enum Failure {
    Check,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().count() == 2 && l.split_whitespace().all(|t| t.parse::<usize>().is_ok()))
}

fn resolve_input(input: &str) -> Result<(String, Graph), Error> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let id = path
            .file_stem()
            .map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned());
        let g = if looks_like_edge_list(&text) {
            parse_edge_list(&text)?
        } else {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .ok_or_else(|| Error::Parse {
                    offset: 0,
                    message: format!("{input}: no graph found"),
                })?;
            parse_graph6(line)?
        };
        return Ok((id, g));
    }
    if let Some(g) = find_named(input) {
        return Ok((input.to_string(), g));
    }
    let g = parse_graph6(input)?;
    Ok((input.to_string(), g))
}

fn polynomial_text(coeffs: &[String]) -> String {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| match k {
            0 => c.clone(),
            1 => format!("{c} x"),
            _ => format!("{c} x^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn count(input: &str, json: bool) -> CliResult {
    let (id, g) = resolve_input(input)?;
    let total = count_independent_sets(&g);
    let poly = independence_polynomial(&g);
    let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    if json {
        let v = serde_json::json!({ "graph_id": id, "n": g.n(), "m": g.edge_count(), "count": total.to_string(), "coeffs": coeffs });
        println!("{v}");
    } else {
        println!("{total}");
        println!("P(x) = {}", polynomial_text(&coeffs));
    }
    Ok(())
}

fn bounds(input: &str, lambdas: &[String], mus: &[String], tolerance: f64, json: bool) -> CliResult {
    let (id, g) = resolve_input(input)?;
    let lambdas = lambdas
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mus = mus.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    let weight_pairs = lambdas
        .iter()
        .flat_map(|l| mus.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    let options = BoundOptions {
        lambdas,
        weight_pairs,
        tolerance,
    };
    let report = BoundReport::build(&id, &g, &options)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
    } else {
        print!("{}", report.to_table());
    }
    if report.entries.iter().all(|e| e.holds && e.equality_consistent()) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(check: &str, input: &str, tolerance: f64) -> CliResult {
    let check: Check = check.parse()?;
    let (id, g) = resolve_input(input)?;
    let config = RunConfig {
        tolerance,
        ..RunConfig::default()
    };
    config.validate()?;
    let rows = run_check(check, &id, &g, &config);
    println!("{}", serde_json::to_string_pretty(&rows).expect("serialisable"));
    for r in &rows {
        eprintln!("{} {} {}", r.label(), r.graph_id, r.result);
    }
    if rows.iter().any(|r| r.result == Outcome::Fail) {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    max_n: Option<usize>,
    out: Option<PathBuf>,
    formats: &[Format],
    config_file: Option<PathBuf>,
    threads: Option<usize>,
    tolerance: Option<f64>,
    detail: Option<String>,
    no_named: bool,
    no_regular: bool,
    files: Vec<PathBuf>,
) -> CliResult {
    let mut config = match &config_file {
        Some(path) => RunConfig::from_key_values(&std::fs::read_to_string(path).map_err(Error::from)?)?,
        None => RunConfig::default(),
    };
    if let Some(n) = max_n {
        config.max_n = n;
    }
    if let Some(t) = threads {
        config.threads = t;
    }
    if let Some(t) = tolerance {
        config.tolerance = t;
    }
    if let Some(d) = detail {
        config.detail = d.parse::<ResultsDetail>()?;
    }
    config.named &= !no_named;
    config.regular &= !no_regular;
    config.files.extend(files);
    if !formats.is_empty() {
        config.formats = formats
            .iter()
            .map(|f| match f {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
            })
            .collect();
    }
    config.out_dir = out.or(config.out_dir).or_else(RunConfig::env_out_dir);
    config.validate()?;

    let outcome = run_all(&RunConfig {
        out_dir: None,
        ..config.clone()
    })?;
    let written = write_reports(&config, &outcome)?;
    print!("{}", outcome.summary.to_table());
    for path in written {
        println!("wrote {}", path.display());
    }
    if outcome.summary.failed() == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn audit_entropy(input: &str, d: usize, tolerance: f64, json: bool) -> CliResult {
    let (_, g) = resolve_input(input)?;
    let bg = bipartition(&g).ok_or_else(|| Failure::Usage("graph is not bipartite".into()))?;
    let audits = audit_entropy_chain_both(&bg, d, tolerance)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&audits).expect("serialisable"));
    } else {
        for a in &audits {
            print!("{}", a.to_table());
            println!();
        }
    }
    if audits.iter().all(|a| a.pass) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn layers(input: &str, w: usize) -> CliResult {
    let (_, g) = resolve_input(input)?;
    g.check_vertex(w)?;
    let dec = layer_decomposition(&g, w)?;
    println!("{}", serde_json::to_string_pretty(&dec).expect("serialisable"));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count { input, json } => count(&input, json),
        Command::Bounds {
            input,
            lambdas,
            mus,
            tolerance,
            json,
        } => bounds(&input, &lambdas, &mus, tolerance, json),
        Command::Verify {
            check,
            input,
            tolerance,
        } => verify(&check, &input, tolerance),
        Command::Sweep {
            max_n,
            out,
            format,
            config,
            threads,
            tolerance,
            detail,
            no_named,
            no_regular,
            files,
        } => sweep(max_n, out, &format, config, threads, tolerance, detail, no_named, no_regular, files),
        Command::AuditEntropy {
            input,
            d,
            tolerance,
            json,
        } => audit_entropy(&input, d, tolerance, json),
        Command::Layers { input, w } => layers(&input, w),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
