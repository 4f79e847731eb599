//! Lifting walks from the graph of level `d_x·[x]` to a finer level and
//! reading off the torus discrepancy of closed loops.

use crate::covering::Forgetful;
use crate::error::GraphError;
use crate::graph::HeckeGraph;
use bundles_p1::{local_value, point_section};
use hecke_edges::EdgeTag;
use ring_arith::group::local_gl2;
use ring_arith::{mat2, Fq, Mat2};
use std::collections::{BTreeSet, VecDeque};

/// One step of a walk in the base graph. `forward = false` traverses an
/// edge against its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub to: usize,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub path: Vec<usize>,
    /// Steps where more than one upper vertex lay over the base target.
    pub ambiguous: Vec<usize>,
}

impl Lift {
    pub fn end(&self) -> usize {
        *self.path.last().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopReport {
    pub loops: usize,
    /// Distinct torus values `t ∈ k^×` seen at the end of the lifted loops.
    pub values: BTreeSet<Fq>,
    pub ambiguous_steps: usize,
}

impl LoopReport {
    pub fn nontrivial(&self) -> bool {
        self.values.iter().any(|&t| t != 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIiCheck {
    pub checked: usize,
    pub failures: Vec<(usize, Fq)>,
}

pub struct Monodromy<'a> {
    upper: &'a HeckeGraph,
    base: &'a HeckeGraph,
    map: Forgetful,
    other: Vec<usize>,
    x_factor: usize,
    interior: (u32, u32),
}

impl<'a> Monodromy<'a> {
    /// `base` must have level `d_x·[x]`, with `x` the Hecke point of both graphs.
    pub fn new(upper: &'a HeckeGraph, base: &'a HeckeGraph) -> Result<Self, GraphError> {
        let x = upper.hecke.point();
        let bd = base.moduli().divisor();
        if bd.entries().len() != 1 || &bd.entries()[0].0 != x {
            return Err(GraphError::Precondition("the base level must be supported at the Hecke point".into()));
        }
        let map = Forgetful::new(upper, base)?;
        let x_factor = map.factors()[0];
        let other = (0..upper.moduli().divisor().entries().len()).filter(|&i| i != x_factor).collect();
        let r = upper.moduli().x_degree() as u32;
        let lo = (upper.hecke.deep_threshold() + 1).max(0) as u32 + r;
        Ok(Monodromy { upper, base, map, other, x_factor, interior: (lo, upper.n_max.saturating_sub(r)) })
    }

    pub fn image(&self, v: usize) -> Option<usize> {
        self.map.image[v]
    }

    pub fn fiber(&self, w: usize) -> Vec<usize> {
        (0..self.upper.len()).filter(|&v| self.map.image[v] == Some(w)).collect()
    }

    pub fn lift(&self, start: usize, walk: &[Step]) -> Result<Lift, GraphError> {
        let mut path = vec![start];
        let mut ambiguous = Vec::new();
        let mut v = start;
        for (i, s) in walk.iter().enumerate() {
            let mut cands: Vec<usize> = if s.forward {
                self.upper.out_edges(v).map(|e| e.dst).filter(|&u| self.map.image[u] == Some(s.to)).collect()
            } else {
                self.upper.in_edges(v).map(|e| e.src).filter(|&u| self.map.image[u] == Some(s.to)).collect()
            };
            cands.sort();
            cands.dedup();
            if cands.is_empty() {
                return Err(GraphError::Precondition(format!("step {i} of the walk has no lift")));
            }
            if cands.len() > 1 {
                ambiguous.push(i);
            }
            v = cands[0];
            path.push(v);
        }
        Ok(Lift { path, ambiguous })
    }

    /// The vertex obtained from `v` by right-multiplying its levels away
    /// from `x` by `diag(c, 1)`.
    pub fn twist(&self, v: usize, c: Fq) -> Result<Option<usize>, GraphError> {
        let m = self.upper.moduli();
        let vx = &self.upper.vertices[v];
        let mut raw = vx.level.clone();
        for &i in &self.other {
            let r = m.level_ring().factor(i);
            let t = mat2::diag(r.from_const(c), r.one());
            raw.0[i] = mat2::mul(r, &raw.0[i], &t);
        }
        let w = m.canonical_level(vx.gap as i64, &raw)?;
        Ok(self.upper.find(vx.gap, &w))
    }

    /// The `t ∈ k^×` carrying `start` to `end`.
    pub fn discrepancy(&self, start: usize, end: usize) -> Result<Fq, GraphError> {
        let q = self.upper.moduli().field().q();
        for c in 1..q {
            if self.twist(start, c)? == Some(end) {
                return Ok(c);
            }
        }
        Err(GraphError::OutsideTorus { gap: self.upper.vertices[start].gap })
    }

    /// Lifts the fundamental cycles of a spanning forest of the base
    /// interior and collects their discrepancies.
    pub fn fundamental_loops(&self) -> Result<LoopReport, GraphError> {
        let (lo, hi) = self.interior;
        let keep: Vec<bool> = self.base.vertices.iter().map(|v| v.gap >= lo && v.gap <= hi).collect();
        let n = self.base.len();
        // parent[v] = (parent, edge points parent -> v)
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut root = vec![usize::MAX; n];
        let mut tree_edge = vec![false; self.base.edges.len()];
        let mut edge_ids: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
        for (k, e) in self.base.edges.iter().enumerate() {
            if keep[e.src] && keep[e.dst] {
                edge_ids[e.src].push((k, e.dst, true));
                edge_ids[e.dst].push((k, e.src, false));
            }
        }
        for s in 0..n {
            if !keep[s] || root[s] != usize::MAX {
                continue;
            }
            root[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(k, w, fwd) in &edge_ids[u] {
                    if root[w] == usize::MAX {
                        root[w] = s;
                        parent[w] = Some((u, fwd));
                        tree_edge[k] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let to_root = |mut v: usize| {
            let mut steps = Vec::new();
            while let Some((p, fwd)) = parent[v] {
                steps.push(Step { to: p, forward: !fwd });
                v = p;
            }
            steps
        };
        let from_root = |v: usize| {
            let mut steps = Vec::new();
            let mut u = v;
            while let Some((p, fwd)) = parent[u] {
                steps.push(Step { to: u, forward: fwd });
                u = p;
            }
            steps.reverse();
            steps
        };
        let mut report = LoopReport { loops: 0, values: BTreeSet::new(), ambiguous_steps: 0 };
        for (k, e) in self.base.edges.iter().enumerate() {
            if tree_edge[k] || !keep[e.src] || !keep[e.dst] {
                continue;
            }
            let mut walk = from_root(e.src);
            walk.push(Step { to: e.dst, forward: true });
            walk.extend(to_root(e.dst));
            let r = root[e.src];
            let start = *self.fiber(r).first().ok_or_else(|| GraphError::Precondition("empty fiber".into()))?;
            let lift = self.lift(start, &walk)?;
            report.loops += 1;
            report.ambiguous_steps += lift.ambiguous.len();
            report.values.insert(self.discrepancy(start, lift.end())?);
        }
        Ok(report)
    }

    /// Checks `(∞, a) → (c, a·diag(−c²/π_x(y), 1))` along case-I edges out of
    /// gap `gap`, for level `[x] + [y]` with both points rational.
    pub fn check_type_ii(&self, gap: u32) -> Result<TypeIiCheck, GraphError> {
        let m = self.upper.moduli();
        let f = m.field();
        let ring = m.level_ring();
        if self.other.len() != 1
            || ring.factor(self.x_factor).width() != 1
            || ring.factor(self.other[0]).width() != 1
        {
            return Err(GraphError::Precondition("the transport rule needs level [x] + [y] at rational points".into()));
        }
        let (xi, yi) = (self.x_factor, self.other[0]);
        let rx = ring.factor(xi);
        let ry = ring.factor(yi);
        let (px, deg) = point_section(self.upper.hecke.point());
        let pxy = ry.as_const(local_value(&px, deg, ry)).unwrap();
        let mut out = TypeIiCheck { checked: 0, failures: Vec::new() };
        for a in local_gl2(ry, true) {
            let mut raw = Mat2(vec![[0; 4]; 2]);
            raw.0[xi] = [rx.zero(), rx.one(), rx.one(), rx.zero()];
            raw.0[yi] = a;
            let src_level = m.canonical_level(gap as i64, &raw)?;
            let Some(src) = self.upper.find(gap, &src_level) else { continue };
            for c in 1..f.q() {
                let ratio = f.div(f.neg(f.mul(c, c)), pxy).unwrap();
                let mut t = raw.clone();
                t.0[xi] = [rx.one(), rx.zero(), rx.from_const(c), rx.one()];
                t.0[yi] = mat2::mul(ry, &a, &mat2::diag(ry.from_const(ratio), ry.one()));
                let dst_level = m.canonical_level(gap as i64 + 1, &t)?;
                let ok = self.upper.find(gap + 1, &dst_level).is_some_and(|dst| {
                    self.upper.out_edges(src).any(|e| e.dst == dst && e.tags.contains(&EdgeTag::CaseI))
                });
                out.checked += 1;
                if !ok {
                    out.failures.push((src, c));
                }
            }
        }
        Ok(out)
    }
}
