//! Run configuration from flags and an optional JSON file.

use crate::error::CliError;
use bundles_p1::{parse_point, DivisorSpec};
use clap::Args;
use graph_core::{BuildSpec, BuilderKind, HeckeGraph};
use ring_arith::FieldCtx;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Size of the constant field; must be a prime power.
    #[arg(long)]
    pub q: Option<u64>,
    /// Ramification divisor as `point:mult,...`; the empty string is D = 0.
    #[arg(long)]
    pub div: Option<String>,
    /// Hecke point.
    #[arg(long)]
    pub x: Option<String>,
    /// Largest splitting gap in the window.
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Edge builder: bruteforce, cusp_rule or hybrid.
    #[arg(long)]
    pub builder: Option<String>,
    /// JSON file with any of `q`, `div`, `x`, `n_max`, `builder`; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    q: Option<u64>,
    div: Option<String>,
    x: Option<String>,
    n_max: Option<u32>,
    builder: Option<String>,
}

/// The normalized configuration echoed into every output.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ConfigEcho {
    pub q: u64,
    pub div: String,
    pub x: String,
    pub n_max: u32,
    pub builder: String,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: BuildSpec,
    pub echo: ConfigEcho,
}

impl RunConfig {
    pub fn build_graph(&self) -> Result<HeckeGraph, CliError> {
        Ok(HeckeGraph::build(&self.spec)?)
    }

    pub fn parse_divisor(&self, s: &str) -> Result<DivisorSpec, CliError> {
        Ok(DivisorSpec::parse(&self.spec.field, s)?)
    }

    /// The same configuration with another divisor.
    pub fn with_divisor(&self, divisor: DivisorSpec) -> RunConfig {
        let mut spec = self.spec.clone();
        spec.divisor = divisor;
        let echo = ConfigEcho { div: spec.divisor.format(&spec.field), ..self.echo.clone() };
        RunConfig { spec, echo }
    }
}

impl GraphArgs {
    pub fn resolve(&self, default_n_max: u32) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            None => FileConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
            }
        };
        let q = self.q.or(file.q).unwrap_or(2);
        let div = self.div.clone().or(file.div).unwrap_or_else(|| "x:1".into());
        let x = self.x.clone().or(file.x).unwrap_or_else(|| "x".into());
        let n_max = self.n_max.or(file.n_max).unwrap_or(default_n_max);
        let builder = self.builder.clone().or(file.builder).unwrap_or_else(|| "hybrid".into());

        let field = Arc::new(FieldCtx::new(q)?);
        let divisor = DivisorSpec::parse(&field, div.trim())?;
        let x = parse_point(&field, &x)?;
        let builder: BuilderKind = builder.parse().map_err(CliError::Config)?;
        let echo = ConfigEcho {
            q,
            div: divisor.format(&field),
            x: x.format(&field),
            n_max,
            builder: builder.to_string(),
        };
        Ok(RunConfig { spec: BuildSpec { field, divisor, x, n_max, builder }, echo })
    }
}

/// The configuration recorded in a graph file.
pub fn echo_of(g: &HeckeGraph) -> ConfigEcho {
    let m = g.moduli();
    let f = m.field();
    ConfigEcho {
        q: f.q() as u64,
        div: m.divisor().format(f),
        x: g.hecke.point().format(f),
        n_max: g.n_max,
        builder: g.builder.to_string(),
    }
}

/// The configuration of a loaded graph, for building companions of it.
pub fn config_of(g: &HeckeGraph) -> RunConfig {
    let m = g.moduli();
    RunConfig {
        spec: BuildSpec {
            field: m.field().clone(),
            divisor: m.divisor().clone(),
            x: g.hecke.point().clone(),
            n_max: g.n_max,
            builder: g.builder,
        },
        echo: echo_of(g),
    }
}
