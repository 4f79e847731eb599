//! Splitting a window of a Hecke graph into a finite part and a tower of
//! layers, with the adjacency blocks between them.

use crate::error::SpectralError;
use crate::field::Rationals;
use crate::linalg;
use crate::qpoly::rat;
use bundles_p1::XPosition;
use graph_core::HeckeGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Propagation {
    Not,
    Propagative,
    Strict,
}

/// Integer block with rows indexed by a source set and columns by a target
/// set; entry = multiplicity of the edge.
pub type Block = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub struct LayeredDecomposition {
    /// Vertex ids of the finite part.
    pub prime: Vec<usize>,
    /// `layers[i]` holds `Γ_{i+1}`.
    pub layers: Vec<Vec<usize>>,
    /// Vertices of the window that belong to neither, i.e. a band cut by the
    /// top of the window.
    pub fringe: Vec<usize>,
    /// `Γ′ → Γ′`.
    pub m: Block,
    /// `Γ′ → Γ₁`.
    pub a: Block,
    /// `within[i]`: `Γ_{i+1} → Γ_{i+1}`.
    pub within: Vec<Block>,
    /// `up[i]`: `Γ_{i+1} → Γ_{i+2}`.
    pub up: Vec<Block>,
    /// `down[i]`: `Γ_{i+1} → Γ_i` for `i ≥ 1`; `down[0]` is empty.
    pub down: Vec<Block>,
    /// `to_prime[i]`: `Γ_{i+1} → Γ′`. For the first layer this is the back
    /// adjacency; deeper layers only reach `Γ′` in the ramified case.
    pub to_prime: Vec<Block>,
    /// Edges that fit none of the blocks, as `(src, dst)`.
    pub violations: Vec<(usize, usize)>,
    /// Position of each vertex: `(None, k)` for `Γ′[k]`, `(Some(i), k)` for
    /// `layers[i][k]`; fringe vertices map to `None`.
    pub slot: Vec<Option<(Option<usize>, usize)>>,
    pub boundary: Vec<bool>,
    /// Out-edges of every window vertex as `(target, multiplicity)`.
    pub out: Vec<Vec<(usize, i64)>>,
    pub gap: Vec<u32>,
    pub n_max: u32,
    pub ramified: bool,
    pub x_degree: usize,
    pub ramification: usize,
    pub degree: u64,
}

fn block(rows: usize, cols: usize) -> Block {
    vec![vec![0; cols]; rows]
}

impl LayeredDecomposition {
    pub fn new(g: &HeckeGraph) -> Result<Self, SpectralError> {
        let m = g.moduli();
        let r = m.x_degree() as i64;
        let d_x = g.hecke.ramification();
        let ramified = d_x > 0;
        let base = m.cusp_threshold();
        let complete = |band: u32| base + (band as i64 + 1) * r <= g.n_max as i64;
        let mut prime = Vec::new();
        let mut fringe = Vec::new();
        let mut layers: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![None; g.len()];
        for (v, vx) in g.vertices.iter().enumerate() {
            let band = vx.layer.band.filter(|&b| b >= 1);
            let in_tower = match band {
                None => false,
                Some(_) if !ramified => true,
                Some(_) => vx.layer.position == Some(XPosition::Infinity { depth: d_x }),
            };
            if !in_tower {
                slot[v] = Some((None, prime.len()));
                prime.push(v);
                continue;
            }
            let b = band.unwrap();
            if !complete(b) {
                fringe.push(v);
                continue;
            }
            let i = b as usize - 1;
            if layers.len() <= i {
                layers.resize(i + 1, Vec::new());
            }
            slot[v] = Some((Some(i), layers[i].len()));
            layers[i].push(v);
        }
        if layers.len() < 2 || layers.iter().any(|l| l.is_empty()) {
            return Err(SpectralError::ShallowWindow { layers: layers.len() });
        }
        let k = layers.len();
        let size = |s: Option<usize>| s.map_or(prime.len(), |i| layers[i].len());
        let mut d = LayeredDecomposition {
            m: block(prime.len(), prime.len()),
            a: block(prime.len(), layers[0].len()),
            within: (0..k).map(|i| block(size(Some(i)), size(Some(i)))).collect(),
            up: (0..k - 1).map(|i| block(size(Some(i)), size(Some(i + 1)))).collect(),
            down: (0..k).map(|i| if i == 0 { Vec::new() } else { block(size(Some(i)), size(Some(i - 1))) }).collect(),
            to_prime: (0..k).map(|i| block(size(Some(i)), prime.len())).collect(),
            violations: Vec::new(),
            boundary: (0..g.len()).map(|v| g.is_boundary(v)).collect(),
            out: (0..g.len()).map(|v| g.out_edges(v).map(|e| (e.dst, e.mult as i64)).collect()).collect(),
            gap: g.vertices.iter().map(|v| v.gap).collect(),
            n_max: g.n_max,
            ramified,
            x_degree: r as usize,
            ramification: d_x,
            degree: g.hecke.degree(),
            prime,
            layers,
            fringe,
            slot,
        };
        for e in &g.edges {
            let mult = e.mult as i64;
            let (Some(s), Some(t)) = (d.slot[e.src], d.slot[e.dst]) else {
                if d.slot[e.src].is_some() && !d.fringe.contains(&e.dst) {
                    d.violations.push((e.src, e.dst));
                }
                continue;
            };
            let cell = match (s.0, t.0) {
                (None, None) => Some(&mut d.m[s.1][t.1]),
                (None, Some(0)) => Some(&mut d.a[s.1][t.1]),
                (None, Some(_)) => None,
                (Some(i), None) => Some(&mut d.to_prime[i][s.1][t.1]),
                (Some(i), Some(j)) if i == j => Some(&mut d.within[i][s.1][t.1]),
                (Some(i), Some(j)) if j == i + 1 => Some(&mut d.up[i][s.1][t.1]),
                (Some(i), Some(j)) if i == j + 1 => Some(&mut d.down[i][s.1][t.1]),
                _ => None,
            };
            match cell {
                Some(c) => *c += mult,
                None => d.violations.push((e.src, e.dst)),
            }
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.gap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gap.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    /// `sup |Γᵢ|` over the window, and whether the last three layers agree.
    pub fn sup_layer(&self) -> (usize, bool) {
        let s = self.sizes();
        let sup = s.iter().copied().max().unwrap_or(0);
        let tail = &s[s.len().saturating_sub(3)..];
        (sup, tail.len() == 3 && tail.iter().all(|&x| x == tail[0]))
    }

    /// Rank test on every `Γᵢ → Γᵢ₊₁` block inside the window.
    pub fn propagation(&self) -> Propagation {
        let mut strict = true;
        for b in &self.up {
            let rows = b.len();
            let cols = b.first().map_or(0, |r| r.len());
            let q: Vec<Vec<_>> = b.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
            let rk = linalg::rank(&Rationals, &q, cols).expect("rationals never split");
            if rk < rows {
                return Propagation::Not;
            }
            strict &= rows == cols;
        }
        if strict {
            Propagation::Strict
        } else {
            Propagation::Propagative
        }
    }

    /// Largest `|row sum|` of `M`.
    pub fn max_row_sum(&self) -> i64 {
        self.m.iter().map(|r| r.iter().map(|v| v.abs()).sum()).max().unwrap_or(0)
    }

    /// Vertices with gap at most `n_max − margin`, where `margin` leaves room
    /// for every chain that determines a value from above.
    pub fn core_gap(&self, steps: usize) -> i64 {
        self.n_max as i64 - (steps * (self.ramification + 1) * self.x_degree) as i64
    }
}
