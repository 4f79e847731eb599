//! The verification suite behind `hecke-lab verify`.

use crate::config::{ConfigEcho, RunConfig};
use crate::error::CliError;
use bundles_p1::{fiber_count, DivisorSpec};
use clap::ValueEnum;
use graph_core::{
    check_covering, format_tags, split_components, BuilderKind, CoveringOutcome, Forgetful, GraphError, HeckeGraph,
    Monodromy,
};
use hecke_edges::{q_binomial, q_binomial_by_subsets};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Degrees,
    Covering,
    Splitting,
    Monodromy,
    Oracle,
    Qbinom,
    Fibers,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Degrees, Check::Covering, Check::Splitting, Check::Monodromy, Check::Oracle, Check::Qbinom, Check::Fibers];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: Check,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    fn new(name: Check, ok: bool, detail: Value, witness: Option<Value>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        CheckResult { name, status, detail, witness }
    }
    fn skipped(name: Check, why: &str) -> Self {
        CheckResult { name, status: Status::Skipped, detail: json!({ "reason": why }), witness: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub source: String,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }
}

pub struct Verifier<'a> {
    pub graph: &'a HeckeGraph,
    pub config: RunConfig,
    /// Coarser level for the covering, splitting and fiber checks.
    pub base_divisor: DivisorSpec,
    base: Option<HeckeGraph>,
}

fn vertex(g: &HeckeGraph, v: usize) -> Value {
    let vx = &g.vertices[v];
    json!({ "id": v, "gap": vx.gap, "level": g.moduli().encode_level(&vx.level), "layer": vx.layer.to_string() })
}

fn edge_list(g: &HeckeGraph, v: usize, min_gap: u32) -> Vec<(u32, String, u64, String)> {
    let m = g.moduli();
    let mut out: Vec<_> = g
        .out_edges(v)
        .filter(|e| g.vertices[e.dst].gap >= min_gap)
        .map(|e| {
            let t = &g.vertices[e.dst];
            (t.gap, m.encode_level(&t.level), e.mult, format_tags(&e.tags))
        })
        .collect();
    out.sort();
    out
}

fn edges_json(list: &[(u32, String, u64, String)]) -> Value {
    list.iter().map(|(g, l, m, t)| json!({ "gap": g, "level": l, "mult": m, "tag": t })).collect()
}

impl<'a> Verifier<'a> {
    pub fn new(graph: &'a HeckeGraph, config: RunConfig, base_divisor: DivisorSpec) -> Self {
        Verifier { graph, config, base_divisor, base: None }
    }

    pub fn run(&mut self, checks: &[Check], source: &str) -> Result<Report, CliError> {
        let mut out = Vec::new();
        for &c in checks {
            out.push(match c {
                Check::Degrees => self.degrees(),
                Check::Covering => self.covering()?,
                Check::Splitting => self.splitting()?,
                Check::Monodromy => self.monodromy()?,
                Check::Oracle => self.oracle()?,
                Check::Qbinom => self.qbinom(),
                Check::Fibers => self.fibers()?,
            });
        }
        let all_pass = out.iter().all(|c| c.status != Status::Fail);
        Ok(Report { config: self.config.echo.clone(), source: source.into(), checks: out, all_pass })
    }

    fn has_base(&self) -> bool {
        &self.base_divisor != self.graph.moduli().divisor()
    }

    fn base(&mut self) -> Result<&HeckeGraph, CliError> {
        if self.base.is_none() {
            let g = self.config.with_divisor(self.base_divisor.clone()).build_graph()?;
            self.base = Some(g);
        }
        Ok(self.base.as_ref().unwrap())
    }

    fn x_power(&self) -> u64 {
        let m = self.graph.moduli();
        (m.field().q() as u64).pow(m.x_degree() as u32)
    }

    fn degrees(&self) -> CheckResult {
        let g = self.graph;
        let big_q = self.x_power();
        let law = if g.hecke.ramification() >= 1 { big_q } else { big_q + 1 };
        let checked = (0..g.len()).filter(|&v| !g.is_boundary(v)).count();
        let detail = json!({ "expected": law, "checked": checked });
        if g.hecke.degree() != law {
            return CheckResult::new(Check::Degrees, false, detail, Some(json!({ "cosets": g.hecke.degree() })));
        }
        let witness = g
            .degree_violations()
            .first()
            .map(|&(v, found)| json!({ "vertex": vertex(g, v), "found": found, "expected": law }));
        CheckResult::new(Check::Degrees, witness.is_none(), detail, witness)
    }

    fn oracle(&self) -> Result<CheckResult, CliError> {
        let g = self.graph;
        let hecke = &g.hecke;
        let reference = HeckeGraph::build_with(hecke.clone(), g.n_max, BuilderKind::Bruteforce)?;
        let mut compared = 0;
        let mut witness = None;
        for r in 0..reference.len() {
            let rv = &reference.vertices[r];
            if rv.gap < g.n_min {
                continue;
            }
            let Some(v) = g.find(rv.gap, &rv.level) else {
                witness = Some(json!({ "missing_vertex": vertex(&reference, r) }));
                break;
            };
            let (mine, theirs) = (edge_list(g, v, g.n_min), edge_list(&reference, r, g.n_min));
            compared += 1;
            if mine != theirs || g.is_boundary(v) != reference.is_boundary(r) {
                witness = Some(json!({
                    "vertex": vertex(g, v),
                    "graph_edges": edges_json(&mine),
                    "bruteforce_edges": edges_json(&theirs),
                }));
                break;
            }
        }
        if witness.is_none() && g.len() != compared {
            witness = Some(json!({ "extra_vertices": g.len() - compared }));
        }
        let threshold = hecke.deep_threshold();
        let mut deep = 0;
        if witness.is_none() {
            for v in reference.vertices.iter().filter(|v| v.gap as i64 > threshold) {
                deep += 1;
                let rule = hecke.neighbors_cusp_rule(v).map_err(GraphError::from)?;
                let brute = hecke.neighbors_bruteforce(v).map_err(GraphError::from)?;
                if rule != brute {
                    let m = g.moduli();
                    let show = |l: &[hecke_edges::EdgeBundle]| -> Value {
                        l.iter()
                            .map(|e| json!({ "gap": e.target.gap, "level": m.encode_level(&e.target.level), "mult": e.mult }))
                            .collect()
                    };
                    witness = Some(json!({
                        "gap": v.gap,
                        "level": m.encode_level(&v.level),
                        "cusp_rule": show(&rule),
                        "bruteforce": show(&brute),
                    }));
                    break;
                }
            }
        }
        let detail = json!({ "compared_vertices": compared, "deep_vertices": deep, "deep_threshold": threshold });
        Ok(CheckResult::new(Check::Oracle, witness.is_none(), detail, witness))
    }

    fn qbinom(&self) -> CheckResult {
        let big_q = self.x_power();
        let mut cases = 0;
        let mut witness = None;
        let mut qs = vec![2u128, 3, 4, 5];
        if !qs.contains(&(big_q as u128)) {
            qs.push(big_q as u128);
        }
        'outer: for &bq in &qs {
            for n in 0..=6 {
                for r in 0..=n {
                    cases += 1;
                    let (a, b) = (q_binomial(n, r, bq), q_binomial_by_subsets(n, r, bq));
                    if a != b {
                        witness = Some(json!({ "Q": bq, "n": n, "r": r, "product": a, "subsets": b }));
                        break 'outer;
                    }
                }
            }
        }
        let g = self.graph;
        let unramified = g.hecke.ramification() == 0;
        if witness.is_none() && unramified && g.hecke.degree() as u128 != q_binomial(2, 1, big_q as u128) {
            witness = Some(json!({ "cusp_degree": g.hecke.degree(), "binomial": q_binomial(2, 1, big_q as u128) }));
        }
        CheckResult::new(Check::Qbinom, witness.is_none(), json!({ "cases": cases, "Q": big_q }), witness)
    }

    fn fibers(&mut self) -> Result<CheckResult, CliError> {
        let g = self.graph;
        let m = g.moduli();
        let q = m.field().q() as u64;
        let expected = fiber_count(q, m.divisor(), &DivisorSpec::zero());
        let lo = (m.cusp_threshold() + 1).max(1).max(g.n_min as i64) as u32;
        let mut counts: BTreeMap<u32, u128> = BTreeMap::new();
        for v in g.vertices.iter().filter(|v| v.gap >= lo) {
            *counts.entry(v.gap).or_default() += 1;
        }
        let mut witness = counts
            .iter()
            .find(|(_, &c)| c != expected)
            .map(|(gap, c)| json!({ "gap": gap, "found": c, "expected": expected }));
        let mut detail = json!({ "expected_per_gap": expected, "gaps": counts.keys().collect::<Vec<_>>() });
        if witness.is_none() && self.has_base() {
            let points: Vec<_> = self.base_divisor.entries().iter().map(|(p, _)| p.clone()).collect();
            let (rest, part) = m.divisor().split(&points);
            let over = fiber_count(q, &rest, &part);
            let upper = self.graph;
            let base = self.base()?;
            let map = Forgetful::new(upper, base)?;
            let mut sizes: BTreeMap<usize, u128> = BTreeMap::new();
            for (v, img) in map.image.iter().enumerate() {
                if let Some(w) = img {
                    if upper.vertices[v].gap >= lo {
                        *sizes.entry(*w).or_default() += 1;
                    }
                }
            }
            detail["expected_over_base"] = json!(over);
            witness = sizes
                .iter()
                .find(|(_, &c)| c != over)
                .map(|(&w, c)| json!({ "base_vertex": vertex(base, w), "found": c, "expected": over }));
        }
        Ok(CheckResult::new(Check::Fibers, witness.is_none(), detail, witness))
    }

    fn covering(&mut self) -> Result<CheckResult, CliError> {
        if !self.has_base() {
            return Ok(CheckResult::skipped(Check::Covering, "the base level equals the graph level"));
        }
        let upper = self.graph;
        let base_div = self.base_divisor.format(upper.moduli().field());
        let base = self.base()?;
        Ok(match check_covering(upper, base)? {
            CoveringOutcome::Covering(w) => CheckResult::new(
                Check::Covering,
                true,
                json!({ "base": base_div, "degree": w.degree, "region": w.region, "interior": w.interior }),
                None,
            ),
            CoveringOutcome::Fails(c) => CheckResult::new(
                Check::Covering,
                false,
                json!({ "base": base_div }),
                Some(json!({
                    "clause": c.clause,
                    "upper": c.upper.map(|v| vertex(upper, v)),
                    "base_vertex": vertex(base, c.base),
                    "expected": c.expected,
                    "found": c.found,
                })),
            ),
        })
    }

    fn splitting(&mut self) -> Result<CheckResult, CliError> {
        if !self.has_base() {
            return Ok(CheckResult::skipped(Check::Splitting, "the base level equals the graph level"));
        }
        let upper = self.graph;
        let base = self.base()?;
        let r = split_components(upper, base)?;
        let counts: Vec<usize> = r.upper_components.iter().map(|c| c.len()).collect();
        let detail = json!({
            "region_start": r.region_start,
            "expected": r.expected,
            "base_components": r.base_components.len(),
            "components_over_base": counts,
        });
        let witness = if let Some(c) = r.non_isomorphic.first() {
            Some(json!({ "non_isomorphic_component": c.iter().map(|&v| vertex(upper, v)).collect::<Vec<_>>() }))
        } else {
            counts.iter().position(|&c| c as u128 != r.expected).map(|i| {
                json!({ "base_component": r.base_components[i].iter().map(|&v| vertex(base, v)).collect::<Vec<_>>(),
                        "found": counts[i], "expected": r.expected })
            })
        };
        let at_x_only = self.base_divisor.entries().iter().all(|(p, _)| p == upper.hecke.point());
        if at_x_only && upper.moduli().field().q() > 2 {
            // fibres over a level at x alone are glued by the torus monodromy
            let mut detail = detail;
            detail["reason"] = json!("no splitting is predicted over a level supported at x when T(k) is nontrivial");
            return Ok(CheckResult { name: Check::Splitting, status: Status::Skipped, detail, witness: None });
        }
        Ok(CheckResult::new(Check::Splitting, r.holds(), detail, witness))
    }

    fn monodromy(&self) -> Result<CheckResult, CliError> {
        let g = self.graph;
        let m = g.moduli();
        let x = g.hecke.point();
        let d_x = g.hecke.ramification();
        if d_x == 0 || m.divisor().entries().len() < 2 {
            return Ok(CheckResult::skipped(Check::Monodromy, "needs ramification at x and at another point"));
        }
        let base_cfg = self.config.with_divisor(DivisorSpec::new(vec![(x.clone(), d_x)])?);
        let base = base_cfg.build_graph()?;
        let mono = Monodromy::new(g, &base)?;
        let f = m.field();
        let loops = match mono.fundamental_loops() {
            Ok(l) => l,
            Err(GraphError::OutsideTorus { gap }) => {
                return Ok(CheckResult::new(
                    Check::Monodromy,
                    false,
                    json!({}),
                    Some(json!({ "outside_torus_at_gap": gap })),
                ))
            }
            Err(e) => return Err(e.into()),
        };
        let values: Vec<String> = loops.values.iter().map(|&t| f.format(t)).collect();
        let mut detail = json!({
            "loops": loops.loops,
            "values": values,
            "nontrivial": loops.nontrivial(),
            "ambiguous_steps": loops.ambiguous_steps,
        });
        let mut witness = None;
        let mut transport = Vec::new();
        for gap in 1..g.n_max {
            match mono.check_type_ii(gap) {
                Ok(c) => {
                    transport.push(json!({ "gap": gap, "checked": c.checked, "failures": c.failures.len() }));
                    if witness.is_none() {
                        if let Some(&(v, c)) = c.failures.first() {
                            witness = Some(json!({ "source": vertex(g, v), "c": f.format(c) }));
                        }
                    }
                }
                Err(GraphError::Precondition(_)) => break,
                Err(e) => return Err(e.into()),
            }
        }
        detail["type_ii_transport"] =
            if transport.is_empty() { json!("not applicable") } else { Value::Array(transport) };
        Ok(CheckResult::new(Check::Monodromy, witness.is_none(), detail, witness))
    }
}
