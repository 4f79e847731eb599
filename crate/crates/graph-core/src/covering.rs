//! Forgetful maps between graphs of different levels and the covering test.

use crate::error::GraphError;
use crate::graph::HeckeGraph;
use ring_arith::Mat2;
use std::collections::{BTreeMap, HashMap};

/// Restriction of levels from `D` to a sub-divisor `D₂`, followed by
/// canonicalization in the base graph.
#[derive(Clone, Debug)]
pub struct Forgetful {
    factors: Vec<usize>,
    /// Image of each upper vertex, `None` when it falls outside the base window.
    pub image: Vec<Option<usize>>,
}

impl Forgetful {
    pub fn new(upper: &HeckeGraph, base: &HeckeGraph) -> Result<Self, GraphError> {
        let um = upper.moduli();
        let bm = base.moduli();
        if um.field().q() != bm.field().q() || um.x() != bm.x() {
            return Err(GraphError::Precondition("graphs must share the field and the Hecke point".into()));
        }
        let x = upper.hecke.point();
        if um.divisor().multiplicity(x) != bm.divisor().multiplicity(x) {
            return Err(GraphError::Precondition("the Hecke point must carry the same multiplicity in both levels".into()));
        }
        let mut factors = Vec::new();
        for (p, m) in bm.divisor().entries() {
            match um.divisor().index_of(p) {
                Some(i) if um.divisor().entries()[i].1 == *m => factors.push(i),
                _ => {
                    return Err(GraphError::Precondition(format!(
                        "{} is not a sub-divisor of {}",
                        bm.divisor().format(bm.field()),
                        um.divisor().format(um.field())
                    )))
                }
            }
        }
        let mut image = Vec::with_capacity(upper.len());
        for v in &upper.vertices {
            let raw = Mat2(factors.iter().map(|&i| v.level.factor(i).clone()).collect());
            let w = bm.canonical_level(v.gap as i64, &raw)?;
            image.push(base.find(v.gap, &w));
        }
        Ok(Forgetful { factors, image })
    }

    /// Indices of the factors of `D` that make up `D₂`.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringWitness {
    pub vertex_map: Vec<Option<usize>>,
    /// Fiber size shared by every base vertex of the region.
    pub degree: usize,
    /// Gaps of the region and of the interior where edges were compared.
    pub region: (u32, u32),
    pub interior: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// 1: surjectivity, 2: outgoing edges, 3: incoming edges.
    pub clause: u8,
    pub upper: Option<usize>,
    pub base: usize,
    pub expected: u64,
    pub found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringOutcome {
    Covering(CoveringWitness),
    Fails(Counterexample),
}

impl CoveringOutcome {
    pub fn is_covering(&self) -> bool {
        matches!(self, CoveringOutcome::Covering(_))
    }
}

/// Checks that the forgetful map is a covering of graphs on the deep cusp
/// of `upper`. Edge counts are compared at vertices whose neighbours all
/// stay inside the window.
pub fn check_covering(upper: &HeckeGraph, base: &HeckeGraph) -> Result<CoveringOutcome, GraphError> {
    if upper.n_max != base.n_max {
        return Err(GraphError::Precondition("graphs must share the window".into()));
    }
    let map = Forgetful::new(upper, base)?;
    let r = upper.moduli().x_degree() as u32;
    let lo = (upper.hecke.deep_threshold() + 1).max(0) as u32;
    let region = (lo, upper.n_max);
    let interior = (lo + r, upper.n_max.saturating_sub(r));
    let in_region = |g: u32| g >= region.0 && g <= region.1;
    let in_interior = |g: u32| g >= interior.0 && g <= interior.1;

    let mut fibers: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, img) in map.image.iter().enumerate() {
        if in_region(upper.vertices[v].gap) {
            match img {
                Some(w) => *fibers.entry(*w).or_default() += 1,
                None => return Err(GraphError::Precondition("base window misses an image".into())),
            }
        }
    }
    for (w, bv) in base.vertices.iter().enumerate() {
        if in_region(bv.gap) && !fibers.contains_key(&w) {
            return Ok(CoveringOutcome::Fails(Counterexample { clause: 1, upper: None, base: w, expected: 1, found: 0 }));
        }
    }
    let sizes: Vec<usize> = fibers.values().copied().collect();
    let degree = sizes.first().copied().unwrap_or(0);
    if let Some(&s) = sizes.iter().find(|&&s| s != degree) {
        let w = *fibers.iter().find(|(_, &c)| c == s).unwrap().0;
        return Ok(CoveringOutcome::Fails(Counterexample {
            clause: 1,
            upper: None,
            base: w,
            expected: degree as u64,
            found: s as u64,
        }));
    }

    for (v, vx) in upper.vertices.iter().enumerate() {
        if !in_interior(vx.gap) {
            continue;
        }
        let pv = map.image[v].unwrap();
        for clause in [2u8, 3] {
            let mut expected: HashMap<usize, u64> = HashMap::new();
            let mut found: HashMap<usize, u64> = HashMap::new();
            if clause == 2 {
                for e in base.out_edges(pv) {
                    *expected.entry(e.dst).or_default() += e.mult;
                }
                for e in upper.out_edges(v) {
                    if let Some(w) = map.image[e.dst] {
                        *found.entry(w).or_default() += e.mult;
                    }
                }
            } else {
                for e in base.in_edges(pv) {
                    *expected.entry(e.src).or_default() += e.mult;
                }
                for e in upper.in_edges(v) {
                    if let Some(w) = map.image[e.src] {
                        *found.entry(w).or_default() += e.mult;
                    }
                }
            }
            let mut keys: Vec<usize> = expected.keys().chain(found.keys()).copied().collect();
            keys.sort();
            keys.dedup();
            for w in keys {
                let (a, b) = (expected.get(&w).copied().unwrap_or(0), found.get(&w).copied().unwrap_or(0));
                if a != b {
                    return Ok(CoveringOutcome::Fails(Counterexample {
                        clause,
                        upper: Some(v),
                        base: w,
                        expected: a,
                        found: b,
                    }));
                }
            }
        }
    }
    Ok(CoveringOutcome::Covering(CoveringWitness { vertex_map: map.image, degree, region, interior }))
}
