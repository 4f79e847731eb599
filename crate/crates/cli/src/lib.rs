//! `hecke-lab`: build Hecke graphs, verify their structure and query their
//! spectra from the command line.

pub mod config;
pub mod error;
pub mod output;
pub mod queries;
pub mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use config::{config_of, GraphArgs, RunConfig};
use error::CliError;
use graph_core::HeckeGraph;
use output::{emit, to_pretty};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;
use verify::{Check, Verifier};

#[derive(Parser, Debug)]
#[command(name = "hecke-lab", version, about = "Graphs of Hecke operators for PGL2 over the projective line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph window and write it as JSON or DOT.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; a manifest is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run structural checks and print a report.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Checks to run; all by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Coarser level for covering, splitting and fiber checks; defaults
        /// to the part of the divisor at the Hecke point.
        #[arg(long)]
        base_div: Option<String>,
        /// Verify a graph file instead of building one.
        #[arg(long)]
        graph_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Layer decomposition and the spectrum of the nucleus.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenspace dimension bounds for each λ.
    Dims {
        #[command(flatten)]
        graph: GraphArgs,
        /// `p/q` or `minpoly:residue`; repeat or separate with commas.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a seed to an eigenform layer by layer.
    Propagate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Value at the single vertex of gap 0.
        #[arg(long, allow_hyphen_values = true)]
        seed_a: Option<String>,
        /// Further seed values as `id=p/q`.
        #[arg(long)]
        seed: Vec<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve (Φ − λ) f = g on the window.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Right-hand side entries as `id=p/q`; unspecified entries are 0.
        #[arg(long)]
        rhs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const DEFAULT_N_MAX: u32 = 8;

fn summary_of(g: &HeckeGraph) -> Value {
    json!({
        "vertices": g.len(),
        "edges": g.edges.len(),
        "boundary": g.boundary.len(),
        "cusp_threshold": g.moduli().cusp_threshold(),
        "deep_threshold": g.hecke.deep_threshold(),
        "degree": g.hecke.degree(),
    })
}

fn finish(name: &str, config: &RunConfig, g: &HeckeGraph, body: &Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    emit(name, &config.echo, &to_pretty(body)?, out.map(|p| p.as_path()), summary_of(g))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { graph, format, out } => {
            let config = graph.resolve(DEFAULT_N_MAX)?;
            let g = config.build_graph()?;
            let payload = match format {
                Format::Json => g.to_json(),
                Format::Dot => g.to_dot(),
            };
            emit("build", &config.echo, &payload, out.as_deref(), summary_of(&g))
        }
        Command::Verify { graph, checks, base_div, graph_file, out } => {
            let (config, g, source) = match graph_file {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                    let g = HeckeGraph::from_json(&text)?;
                    (config_of(&g), g, format!("file:{}", p.display()))
                }
                None => {
                    let config = graph.resolve(DEFAULT_N_MAX)?;
                    let g = config.build_graph()?;
                    (config, g, "built".to_string())
                }
            };
            let base = match base_div {
                Some(s) => config.parse_divisor(&s)?,
                None => {
                    let (_, part) = g.moduli().divisor().split(std::slice::from_ref(g.hecke.point()));
                    part
                }
            };
            let checks = if checks.is_empty() { Check::ALL.to_vec() } else { checks };
            let report = Verifier::new(&g, config.clone(), base).run(&checks, &source)?;
            emit("verify", &config.echo, &to_pretty(&report)?, out.as_deref(), summary_of(&g))?;
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
        Command::Spectrum { graph, out } => {
            let config = graph.resolve(DEFAULT_N_MAX)?;
            let g = config.build_graph()?;
            let body = queries::spectrum(&config, &g)?;
            finish("spectrum", &config, &g, &body, out.as_ref())
        }
        Command::Dims { graph, lambda, out } => {
            let lambdas = lambda.iter().map(|s| queries::parse_lambda(s)).collect::<Result<Vec<_>, _>>()?;
            let config = graph.resolve(DEFAULT_N_MAX)?;
            let g = config.build_graph()?;
            let body = queries::dims(&config, &g, &lambdas)?;
            finish("dims", &config, &g, &body, out.as_ref())
        }
        Command::Propagate { graph, lambda, seed_a, seed, depth, out } => {
            let lam = queries::parse_lambda(&lambda)?;
            let seed_a = seed_a
                .map(|s| spectral::parse_rational(&s).ok_or_else(|| CliError::Config(format!("bad seed value `{s}`"))))
                .transpose()?;
            let seeds = queries::parse_assignments(&seed, "seed")?;
            if seed_a.is_none() && seeds.is_empty() {
                return Err(CliError::Config("give --seed-a or at least one --seed".into()));
            }
            let config = graph.resolve(DEFAULT_N_MAX.max(depth as u32 + 3))?;
            let g = config.build_graph()?;
            let body = queries::propagate(&config, &g, &lam, seed_a, &seeds, depth)?;
            finish("propagate", &config, &g, &body, out.as_ref())
        }
        Command::Solve { graph, lambda, rhs, out } => {
            let lam = queries::parse_lambda(&lambda)?;
            let rhs = queries::parse_assignments(&rhs, "rhs entry")?;
            let config = graph.resolve(DEFAULT_N_MAX)?;
            let g = config.build_graph()?;
            let body = queries::solve(&config, &g, &lam, &rhs)?;
            finish("solve", &config, &g, &body, out.as_ref())
        }
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
