//! JSON and DOT serialization.

use crate::error::GraphError;
use crate::graph::{format_tags, parse_tags, BuilderKind, Edge, HeckeGraph};
use bundles_p1::{parse_point, DivisorSpec, Moduli};
use hecke_edges::HeckeAt;
use ring_arith::FieldCtx;
use serde::{Deserialize, Serialize};
use std::fmt::Write;
use std::sync::Arc;

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DivisorEntry {
    pub point: String,
    pub mult: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MetaJson {
    pub schema: u32,
    pub q: u64,
    pub divisor: Vec<DivisorEntry>,
    pub x: String,
    pub n_min: u32,
    pub n_max: u32,
    pub builder: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VertexJson {
    pub id: usize,
    pub gap: u32,
    pub level: String,
    pub layer: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EdgeJson {
    pub src: usize,
    pub dst: usize,
    pub mult: u64,
    pub tag: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub meta: MetaJson,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub boundary: Vec<usize>,
}

impl HeckeGraph {
    pub fn to_json_value(&self) -> GraphJson {
        let m = self.moduli();
        let f = m.field();
        GraphJson {
            meta: MetaJson {
                schema: SCHEMA,
                q: f.q() as u64,
                divisor: m
                    .divisor()
                    .entries()
                    .iter()
                    .map(|(p, k)| DivisorEntry { point: p.format(f), mult: *k })
                    .collect(),
                x: self.hecke.point().format(f),
                n_min: self.n_min,
                n_max: self.n_max,
                builder: self.builder.to_string(),
            },
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    gap: v.gap,
                    level: m.encode_level(&v.level),
                    layer: v.layer.to_string(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { src: e.src, dst: e.dst, mult: e.mult, tag: format_tags(&e.tags) })
                .collect(),
            boundary: self.boundary.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        Self::from_json_value(serde_json::from_str(s)?)
    }

    pub fn from_json_value(g: GraphJson) -> Result<Self, GraphError> {
        let bad = |m: String| GraphError::Parse(m);
        if g.meta.schema != SCHEMA {
            return Err(bad(format!("unsupported schema {}", g.meta.schema)));
        }
        let field = Arc::new(FieldCtx::new(g.meta.q).map_err(|e| bad(e.to_string()))?);
        let mut entries = Vec::new();
        for d in &g.meta.divisor {
            entries.push((parse_point(&field, &d.point)?, d.mult));
        }
        let divisor = DivisorSpec::new(entries)?;
        let x = parse_point(&field, &g.meta.x)?;
        let builder: BuilderKind = g.meta.builder.parse().map_err(bad)?;
        let moduli = Arc::new(Moduli::new(field, divisor, Some(x))?);
        let hecke = Arc::new(HeckeAt::new(moduli.clone())?);
        let mut vertices = Vec::with_capacity(g.vertices.len());
        for (i, v) in g.vertices.iter().enumerate() {
            if v.id != i {
                return Err(bad(format!("vertex ids must be 0..n in order, found {} at {i}", v.id)));
            }
            let level = moduli.decode_level(&v.level)?;
            let vx = moduli.vertex(v.gap as i64, level);
            if vx.layer.to_string() != v.layer {
                return Err(bad(format!("vertex {i}: layer `{}` disagrees with `{}`", v.layer, vx.layer)));
            }
            vertices.push(vx);
        }
        let n = vertices.len();
        let mut edges = Vec::with_capacity(g.edges.len());
        for e in &g.edges {
            if e.src >= n || e.dst >= n {
                return Err(bad(format!("edge {} -> {} out of range", e.src, e.dst)));
            }
            edges.push(Edge { src: e.src, dst: e.dst, mult: e.mult, tags: parse_tags(&e.tag, e.mult).map_err(bad)? });
        }
        if let Some(&b) = g.boundary.iter().find(|&&b| b >= n) {
            return Err(bad(format!("boundary vertex {b} out of range")));
        }
        Ok(HeckeGraph::assemble(hecke, g.meta.n_min, g.meta.n_max, builder, vertices, edges, g.boundary))
    }

    pub fn to_dot(&self) -> String {
        let m = self.moduli();
        let mut s = String::from("digraph hecke {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if self.is_boundary(i) { ", shape=box" } else { "" };
            let _ = writeln!(
                s,
                "  v{i} [label=\"{} {} {}\"{shape}];",
                v.gap,
                v.layer,
                m.format_level(&v.level).replace('"', "'")
            );
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [label={}];", e.src, e.dst, e.mult);
        }
        s.push_str("}\n");
        s
    }
}
