//! Splitting of the deep cusp into components over a coarser level.

use crate::covering::Forgetful;
use crate::error::GraphError;
use crate::graph::HeckeGraph;
use bundles_p1::fiber_count;
use petgraph::unionfind::UnionFind;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Lowest gap of the region; the region runs to the top of the window.
    pub region_start: u32,
    /// Components of the base region, as sorted vertex lists.
    pub base_components: Vec<Vec<usize>>,
    /// Components of the upper region, grouped by the base component below.
    pub upper_components: Vec<Vec<Vec<usize>>>,
    /// Predicted number of components over each base component.
    pub expected: u128,
    /// Upper components whose projection is not a bijection onto a base component.
    pub non_isomorphic: Vec<Vec<usize>>,
}

impl ComponentReport {
    pub fn holds(&self) -> bool {
        self.non_isomorphic.is_empty()
            && self.upper_components.iter().all(|c| c.len() as u128 == self.expected)
    }
}

fn components(g: &HeckeGraph, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(g.len());
    for e in &g.edges {
        if keep[e.src] && keep[e.dst] {
            uf.union(e.src, e.dst);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in (0..g.len()).filter(|&v| keep[v]) {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Weak components of the deep cusp of `upper` and of `base`, and how the
/// former sit over the latter.
pub fn split_components(upper: &HeckeGraph, base: &HeckeGraph) -> Result<ComponentReport, GraphError> {
    let map = Forgetful::new(upper, base)?;
    let points: Vec<_> = base.moduli().divisor().entries().iter().map(|e| e.0.clone()).collect();
    let (rest, part) = upper.moduli().divisor().split(&points);
    let lo = (upper.hecke.deep_threshold() + 1).max(0) as u32;
    let up_keep: Vec<bool> = upper.vertices.iter().map(|v| v.gap >= lo).collect();
    let base_keep: Vec<bool> = base.vertices.iter().map(|v| v.gap >= lo).collect();
    let base_components = components(base, &base_keep);
    let mut owner = vec![usize::MAX; base.len()];
    for (i, c) in base_components.iter().enumerate() {
        for &w in c {
            owner[w] = i;
        }
    }
    let mut upper_components = vec![Vec::new(); base_components.len()];
    let mut non_isomorphic = Vec::new();
    for comp in components(upper, &up_keep) {
        let image: Vec<usize> = comp.iter().map(|&v| map.image[v].expect("region maps into the base window")).collect();
        let set: BTreeSet<usize> = image.iter().copied().collect();
        let b = owner[image[0]];
        let target: BTreeSet<usize> = base_components[b].iter().copied().collect();
        if set.len() != comp.len() || set != target {
            non_isomorphic.push(comp.clone());
        }
        upper_components[b].push(comp);
    }
    let q = upper.moduli().field().q() as u64;
    Ok(ComponentReport {
        region_start: lo,
        base_components,
        upper_components,
        expected: fiber_count(q, &rest, &part),
        non_isomorphic,
    })
}
