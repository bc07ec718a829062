//! The `ahp` command line.
//!
//! Exit codes: 0 success, 1 consistency failure (`check`, `evaluate`),
//! 2 usage error, 3 file or parse error, 4 validation error.

mod error;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};

use ahp_core::io::{
    consistency_line, export_report_with_precision, fixed, parse_project, ranking_lines,
    ProjectDocument, ReportFormat, DEFAULT_PRECISION,
};
use ahp_core::{evaluate, simulate_ri, AggregationMethod, EvaluationResult, RiTable};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

pub use error::CliError;

/// Environment variable naming a JSON file `{"ri": {"3": 0.58, ...}}`.
pub const RI_TABLE_ENV: &str = "AHP_RI_TABLE";

#[derive(Debug, Parser)]
#[command(
    name = "ahp",
    version,
    about = "Analytic hierarchy process: weights, consistency and rankings"
)]
pub struct Cli {
    /// Decimals shown in text output
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,

    /// Print diagnostics on standard error as JSON
    #[arg(long, global = true)]
    json_errors: bool,

    /// How per-expert matrices are combined (geometric or arithmetic)
    #[arg(long, global = true, default_value = "geometric")]
    aggregate: AggregationMethod,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate every matrix in a project
    Validate { project: PathBuf },
    /// Local weights of each judged node, or of one node with `--node`
    Weights {
        project: PathBuf,
        #[arg(long)]
        node: Option<String>,
    },
    /// Consistency listing of every judged node
    Check { project: PathBuf },
    /// Full evaluation; optionally write the CSV report
    Evaluate {
        project: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Composite ranking of the leaves
    Rank { project: PathBuf },
    /// Monte Carlo estimate of the random index for one order
    RiSimulate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=64))]
        order: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Export the evaluation
    Report {
        project: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Start the HTTP service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Persist sessions here instead of keeping them in memory
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// Static files served at `/`
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Text,
    Json,
}

/// Run one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text).trim_end();
            let err = CliError::Usage(text.to_string());
            report_error(&err, json_errors, stderr);
            return err.exit_code();
        }
    };

    let mut out = String::new();
    let result = dispatch(&cli, &mut out, stderr);
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return 3;
    }
    match result {
        Ok(()) => 0,
        Err(err) => {
            report_error(&err, cli.json_errors, stderr);
            err.exit_code()
        }
    }
}

fn report_error(err: &CliError, json: bool, stderr: &mut dyn Write) {
    let _ = if json {
        writeln!(stderr, "{}", err.to_json())
    } else {
        writeln!(stderr, "error: {err}")
    };
}

fn dispatch(cli: &Cli, out: &mut String, stderr: &mut dyn Write) -> Result<(), CliError> {
    let p = cli.precision;
    match &cli.command {
        Command::Validate { project } => validate(project, out),
        Command::Weights { project, node } => {
            let result = evaluate_file(project, cli.aggregate)?;
            let nodes = match node {
                Some(id) => vec![result.node(id).ok_or_else(|| {
                    CliError::Invalid(format!("{id:?} is not a node with children"))
                })?],
                None => result.nodes.iter().collect(),
            };
            let labels: BTreeMap<&str, &str> = result
                .hierarchy()
                .nodes()
                .map(|x| (x.id.as_str(), x.label.as_str()))
                .collect();
            for n in nodes {
                if node.is_none() {
                    let _ = writeln!(out, "[{}]", n.node_id);
                }
                let width = n.child_ids.iter().map(String::len).max().unwrap_or(0);
                for (id, w) in n.child_ids.iter().zip(&n.weights.weights) {
                    let _ = writeln!(
                        out,
                        "{id:<width$}  {}  {}",
                        fixed(*w, p),
                        labels[id.as_str()]
                    );
                }
            }
            Ok(())
        }
        Command::Check { project } => {
            let result = evaluate_file(project, cli.aggregate)?;
            let width = result
                .nodes
                .iter()
                .map(|n| n.node_id.len())
                .max()
                .unwrap_or(0);
            for n in &result.nodes {
                let _ = writeln!(out, "{}", consistency_line(n, width, p));
            }
            consistency_outcome(&result)
        }
        Command::Evaluate { project, out: path } => {
            let result = evaluate_file(project, cli.aggregate)?;
            out.push_str(&export_report_with_precision(
                &result,
                ReportFormat::Text,
                p,
            ));
            if let Some(path) = path {
                let csv = export_report_with_precision(&result, ReportFormat::Csv, p);
                std::fs::write(path, csv).map_err(|source| CliError::Write {
                    path: path.clone(),
                    source,
                })?;
            }
            consistency_outcome(&result)
        }
        Command::Rank { project } => {
            let result = evaluate_file(project, cli.aggregate)?;
            for line in ranking_lines(&result.composite, p) {
                out.push_str(&line);
                out.push('\n');
            }
            Ok(())
        }
        Command::RiSimulate {
            order,
            samples,
            seed,
        } => {
            let ri = simulate_ri(*order as usize, *samples as usize, *seed)?;
            let _ = writeln!(
                out,
                "order={order} samples={samples} seed={seed} ri={}",
                fixed(ri, p)
            );
            Ok(())
        }
        Command::Report { project, format } => {
            let result = evaluate_file(project, cli.aggregate)?;
            match format {
                OutputFormat::Csv => {
                    out.push_str(&export_report_with_precision(&result, ReportFormat::Csv, p))
                }
                OutputFormat::Text => out.push_str(&export_report_with_precision(
                    &result,
                    ReportFormat::Text,
                    p,
                )),
                OutputFormat::Json => {
                    out.push_str(&evaluation_json(&result));
                    out.push('\n');
                }
            }
            Ok(())
        }
        Command::Serve {
            port,
            host,
            data_dir,
            static_dir,
        } => {
            let config = ahp_service::ServeConfig {
                addr: SocketAddr::new(*host, *port),
                data_dir: data_dir.clone(),
                static_dir: static_dir.clone(),
                ri: ri_table()?,
            };
            ahp_service::serve_blocking(config, |addr| {
                let _ = writeln!(stderr, "listening on http://{addr}");
                let _ = stderr.flush();
            })?;
            Ok(())
        }
    }
}

/// The evaluation as compact JSON, the same bytes the service returns.
pub fn evaluation_json(result: &EvaluationResult) -> String {
    serde_json::to_string(result).expect("evaluation results are plain data")
}

fn consistency_outcome(result: &EvaluationResult) -> Result<(), CliError> {
    let failed: Vec<String> = result.failed_nodes().map(|n| n.node_id.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Inconsistent(failed))
    }
}

fn load_project(path: &Path) -> Result<ProjectDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_project(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn evaluate_file(path: &Path, method: AggregationMethod) -> Result<EvaluationResult, CliError> {
    let doc = load_project(path)?;
    let ri = ri_table()?;
    let hierarchy = doc
        .to_hierarchy(method)
        .map_err(|source| CliError::Project {
            path: path.to_path_buf(),
            source,
        })?;
    Ok(evaluate(&hierarchy, &ri)?)
}

fn validate(path: &Path, out: &mut String) -> Result<(), CliError> {
    let doc = load_project(path)?;
    let hierarchy = doc.skeleton().map_err(|source| CliError::Project {
        path: path.to_path_buf(),
        source,
    })?;
    let _ = writeln!(
        out,
        "hierarchy: {} internal nodes, {} leaves",
        hierarchy.internal_nodes().count(),
        hierarchy.leaves().count()
    );
    let outcomes = doc.validate_matrices();
    let width = outcomes
        .iter()
        .map(|(name, _)| name.len())
        .max()
        .unwrap_or(0);
    let mut failures = 0;
    for (name, outcome) in &outcomes {
        match outcome {
            Ok(m) => {
                let _ = writeln!(out, "ok    {name:<width$}  {0}x{0}", m.order());
            }
            Err(e) => {
                failures += 1;
                let _ = writeln!(out, "FAIL  {name:<width$}  {e}");
            }
        }
    }
    let judged: Vec<&str> = doc
        .matrices
        .keys()
        .chain(doc.experts.values().flat_map(|m| m.keys()))
        .map(String::as_str)
        .collect();
    for node in hierarchy.internal_nodes() {
        if node.children.len() >= 2 && !judged.contains(&node.id.as_str()) {
            let _ = writeln!(out, "none  {:<width$}  no judgments", node.id);
        }
    }
    if failures > 0 {
        return Err(CliError::Invalid(format!(
            "{failures} of {} matrices failed validation",
            outcomes.len()
        )));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RiFile {
    ri: RiTable,
}

/// The RI table named by `AHP_RI_TABLE`, or the standard one.
fn ri_table() -> Result<RiTable, CliError> {
    let Some(path) = std::env::var_os(RI_TABLE_ENV) else {
        return Ok(RiTable::saaty());
    };
    let path = PathBuf::from(path);
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str::<RiFile>(&text)
        .map(|f| f.ri)
        .map_err(|e| CliError::RiTable {
            path,
            message: e.to_string(),
        })
}
