//! The truncated graph of a Hecke operator and its builders.

use crate::error::GraphError;
use bundles_p1::{DivisorSpec, Moduli, Vertex};
use hecke_edges::{EdgeBundle, EdgeTag, HeckeAt};
use rayon::prelude::*;
use ring_arith::{FieldCtx, Mat2, Point};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuilderKind {
    Bruteforce,
    CuspRule,
    Hybrid,
}

impl fmt::Display for BuilderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuilderKind::Bruteforce => "bruteforce",
            BuilderKind::CuspRule => "cusp_rule",
            BuilderKind::Hybrid => "hybrid",
        })
    }
}

impl FromStr for BuilderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bruteforce" => Ok(BuilderKind::Bruteforce),
            "cusp_rule" | "cusp-rule" => Ok(BuilderKind::CuspRule),
            "hybrid" => Ok(BuilderKind::Hybrid),
            _ => Err(format!("unknown builder `{s}` (bruteforce, cusp_rule, hybrid)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub mult: u64,
    pub tags: Vec<EdgeTag>,
}

/// Renders a tag multiset: a single tag when uniform, else `tag:count`
/// terms joined by `+`.
pub fn format_tags(tags: &[EdgeTag]) -> String {
    let mut counts: Vec<(EdgeTag, usize)> = Vec::new();
    for t in tags {
        match counts.iter_mut().find(|(u, _)| u == t) {
            Some(e) => e.1 += 1,
            None => counts.push((*t, 1)),
        }
    }
    if counts.len() == 1 {
        return counts[0].0.to_string();
    }
    counts.iter().map(|(t, c)| format!("{t}:{c}")).collect::<Vec<_>>().join("+")
}

pub fn parse_tags(s: &str, mult: u64) -> Result<Vec<EdgeTag>, String> {
    if !s.contains('+') && !s.contains(':') {
        return Ok(vec![s.parse()?; mult as usize]);
    }
    let mut out = Vec::new();
    for part in s.split('+') {
        let (t, c) = part.rsplit_once(':').ok_or_else(|| format!("bad tag `{s}`"))?;
        let c: usize = c.parse().map_err(|_| format!("bad tag `{s}`"))?;
        out.extend(std::iter::repeat(t.parse::<EdgeTag>()?).take(c));
    }
    out.sort();
    Ok(out)
}

/// A window `[n_min, n_max]` of gaps of the graph of the Hecke operator at
/// `x` on `Bun_{PGL₂,D}`. Edges leaving the window are not stored; their
/// sources are listed in `boundary`.
#[derive(Clone)]
pub struct HeckeGraph {
    pub hecke: Arc<HeckeAt>,
    pub n_min: u32,
    pub n_max: u32,
    pub builder: BuilderKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub boundary: Vec<usize>,
    index: HashMap<(u32, Mat2), usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl fmt::Debug for HeckeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeGraph")
            .field("hecke", &self.hecke)
            .field("window", &(self.n_min, self.n_max))
            .field("vertices", &self.vertices.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl PartialEq for HeckeGraph {
    fn eq(&self, other: &Self) -> bool {
        let m = self.moduli();
        let o = other.moduli();
        m.field().q() == o.field().q()
            && m.divisor() == o.divisor()
            && m.x() == o.x()
            && self.n_min == other.n_min
            && self.n_max == other.n_max
            && self.builder == other.builder
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.boundary == other.boundary
    }
}

/// Parameters of a build.
#[derive(Clone, Debug)]
pub struct BuildSpec {
    pub field: Arc<FieldCtx>,
    pub divisor: DivisorSpec,
    pub x: Point,
    pub n_max: u32,
    pub builder: BuilderKind,
}

impl HeckeGraph {
    pub fn build(spec: &BuildSpec) -> Result<Self, GraphError> {
        let moduli = Moduli::new(spec.field.clone(), spec.divisor.clone(), Some(spec.x.clone()))?;
        let hecke = Arc::new(HeckeAt::new(Arc::new(moduli))?);
        Self::build_with(hecke, spec.n_max, spec.builder)
    }

    pub fn build_with(hecke: Arc<HeckeAt>, n_max: u32, builder: BuilderKind) -> Result<Self, GraphError> {
        let threshold = hecke.deep_threshold();
        let n_min = match builder {
            BuilderKind::CuspRule => (threshold + 1).max(0) as u32,
            _ => 0,
        };
        let moduli = hecke.moduli().clone();
        let vertices: Vec<Vertex> =
            moduli.enumerate(n_max)?.into_iter().filter(|v| v.gap >= n_min).collect();
        let index: HashMap<(u32, Mat2), usize> =
            vertices.iter().enumerate().map(|(i, v)| ((v.gap, v.level.clone()), i)).collect();
        let overlap = (threshold + 1).max(0) as u32;
        let outgoing: Vec<Vec<EdgeBundle>> = vertices
            .par_iter()
            .map(|v| -> Result<Vec<EdgeBundle>, GraphError> {
                let gap = v.gap as i64;
                match builder {
                    BuilderKind::Bruteforce => Ok(hecke.neighbors_bruteforce(v)?),
                    BuilderKind::CuspRule => Ok(hecke.neighbors_cusp_rule(v)?),
                    BuilderKind::Hybrid if gap < overlap as i64 => Ok(hecke.neighbors_bruteforce(v)?),
                    BuilderKind::Hybrid => {
                        let rule = hecke.neighbors_cusp_rule(v)?;
                        if v.gap == overlap && hecke.neighbors_bruteforce(v)? != rule {
                            return Err(GraphError::BuilderMismatch {
                                gap: v.gap,
                                level: moduli.format_level(&v.level),
                            });
                        }
                        Ok(rule)
                    }
                }
            })
            .collect::<Result<_, _>>()?;
        let mut edges = Vec::new();
        let mut boundary = Vec::new();
        for (src, list) in outgoing.into_iter().enumerate() {
            let mut stub = false;
            for e in list {
                if e.target.gap > n_max || e.target.gap < n_min {
                    stub = true;
                    continue;
                }
                let dst = *index.get(&(e.target.gap, e.target.level.clone())).ok_or_else(|| {
                    GraphError::MissingTarget { gap: e.target.gap, level: moduli.format_level(&e.target.level) }
                })?;
                edges.push(Edge { src, dst, mult: e.mult, tags: e.tags });
            }
            if stub {
                boundary.push(src);
            }
        }
        Ok(Self::assemble(hecke, n_min, n_max, builder, vertices, edges, boundary))
    }

    pub(crate) fn assemble(
        hecke: Arc<HeckeAt>,
        n_min: u32,
        n_max: u32,
        builder: BuilderKind,
        vertices: Vec<Vertex>,
        mut edges: Vec<Edge>,
        mut boundary: Vec<usize>,
    ) -> Self {
        edges.sort_by_key(|e| (e.src, e.dst));
        boundary.sort();
        boundary.dedup();
        let index = vertices.iter().enumerate().map(|(i, v)| ((v.gap, v.level.clone()), i)).collect();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            out[e.src].push(k);
            inc[e.dst].push(k);
        }
        HeckeGraph { hecke, n_min, n_max, builder, vertices, edges, boundary, index, out, inc }
    }

    pub fn moduli(&self) -> &Arc<Moduli> {
        self.hecke.moduli()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn find(&self, gap: u32, level: &Mat2) -> Option<usize> {
        self.index.get(&(gap, level.clone())).copied()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.out[v].iter().map(move |&k| &self.edges[k])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.inc[v].iter().map(move |&k| &self.edges[k])
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary.binary_search(&v).is_ok()
    }

    pub fn out_mult(&self, v: usize) -> u64 {
        self.out_edges(v).map(|e| e.mult).sum()
    }

    /// Replaces the edge list, e.g. to build a negative control.
    pub fn with_edges(&self, edges: Vec<Edge>) -> Self {
        Self::assemble(
            self.hecke.clone(),
            self.n_min,
            self.n_max,
            self.builder,
            self.vertices.clone(),
            edges,
            self.boundary.clone(),
        )
    }

    /// Vertices violating the out-degree law, with their out-multiplicity.
    pub fn degree_violations(&self) -> Vec<(usize, u64)> {
        let expected = self.hecke.degree();
        (0..self.len())
            .filter(|&v| !self.is_boundary(v))
            .map(|v| (v, self.out_mult(v)))
            .filter(|&(_, m)| m != expected)
            .collect()
    }

    /// Vertex ids whose gap lies in `[lo, hi]`.
    pub fn gap_range(&self, lo: i64, hi: i64) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| (lo..=hi).contains(&(self.vertices[v].gap as i64)))
            .collect()
    }
}
