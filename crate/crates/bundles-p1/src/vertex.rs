//! Vertices of the moduli of `PGL₂`-bundles with level structure.

use crate::aut::{act, aut_image_in};
use crate::divisor::DivisorSpec;
use crate::error::BundleError;
use ring_arith::group::{enumeration_budget, local_gl2};
use ring_arith::{FieldCtx, Jet, JetRing, LevelRing, Mat2, Point, RingError, SubgroupSpec, SubgroupTag, M2};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

/// Where the first column of the level sits in `P¹(k_x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XPosition {
    /// `a21/a11` modulo `π`, as an element index of the residue field.
    Finite(Jet),
    /// `a11 ∈ π`; `depth` is its valuation, capped at `d_x`.
    Infinity { depth: usize },
}

/// `band = None` is the nucleus; band `i` holds the gaps `n` with
/// `T + i·r < n ≤ T + (i+1)·r`, `T = deg D − 2`, `r = deg x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub band: Option<u32>,
    pub position: Option<XPosition>,
}

impl Layer {
    pub fn is_cusp(&self) -> bool {
        self.band.is_some()
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.band {
            None => write!(f, "nucleus")?,
            Some(i) => write!(f, "cusp{i}")?,
        }
        match self.position {
            None => Ok(()),
            Some(XPosition::Finite(p)) => write!(f, "@{p}"),
            Some(XPosition::Infinity { depth }) => write!(f, "@inf{depth}"),
        }
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad layer `{s}`");
        let (head, pos) = match s.split_once('@') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let band = match head {
            "nucleus" => None,
            _ => Some(head.strip_prefix("cusp").and_then(|i| i.parse().ok()).ok_or_else(bad)?),
        };
        let position = match pos {
            None => None,
            Some(p) => Some(match p.strip_prefix("inf") {
                Some(d) => XPosition::Infinity { depth: d.parse().map_err(|_| bad())? },
                None => XPosition::Finite(p.parse().map_err(|_| bad())?),
            }),
        };
        Ok(Layer { band, position })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub gap: u32,
    pub level: Mat2,
    pub layer: Layer,
}

/// The data of `Bun_{PGL₂,D}` over `P¹` needed to name vertices, together
/// with the point `x` used for layering.
pub struct Moduli {
    field: Arc<FieldCtx>,
    divisor: DivisorSpec,
    level: LevelRing,
    x: Option<Point>,
    aut_cache: Mutex<HashMap<i64, Arc<Vec<Mat2>>>>,
}

impl fmt::Debug for Moduli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Moduli")
            .field("q", &self.field.q())
            .field("divisor", &self.divisor.format(&self.field))
            .finish()
    }
}

impl Moduli {
    pub fn new(field: Arc<FieldCtx>, divisor: DivisorSpec, x: Option<Point>) -> Result<Self, BundleError> {
        let level = divisor.level_ring(&field)?;
        Ok(Moduli { field, divisor, level, x, aut_cache: Mutex::new(HashMap::new()) })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn divisor(&self) -> &DivisorSpec {
        &self.divisor
    }
    pub fn level_ring(&self) -> &LevelRing {
        &self.level
    }
    pub fn x(&self) -> Option<&Point> {
        self.x.as_ref()
    }

    /// `deg D − 2`: gaps above it form the cusp.
    pub fn cusp_threshold(&self) -> i64 {
        self.divisor.degree() as i64 - 2
    }

    pub fn x_degree(&self) -> usize {
        self.x.as_ref().map_or(1, |p| p.degree())
    }

    /// Index of `x` among the level points, if it is ramified.
    pub fn x_index(&self) -> Option<usize> {
        self.x.as_ref().and_then(|p| self.divisor.index_of(p))
    }

    pub fn band(&self, gap: i64) -> Option<u32> {
        let t = self.cusp_threshold();
        let r = self.x_degree() as i64;
        (gap > t).then(|| ((gap - t + r - 1) / r - 1) as u32)
    }

    pub fn position(&self, level: &Mat2) -> Option<XPosition> {
        let i = self.x_index()?;
        let r = self.level.factor(i);
        let m = &level.0[i];
        let residue = JetRing::new(self.field.clone(), r.point().clone(), 1).expect("valid point");
        Some(match r.inv(m[0]) {
            None => XPosition::Infinity { depth: r.valuation(m[0]) },
            Some(inv) => XPosition::Finite(r.reduce_to(r.mul(m[2], inv), &residue)),
        })
    }

    pub fn layer(&self, gap: i64, level: &Mat2) -> Layer {
        Layer { band: self.band(gap), position: self.position(level) }
    }

    /// Right-action subgroup for the gap, shared by all gaps at or above
    /// `deg D − 1` where the sections surject.
    pub fn aut(&self, gap: i64) -> Arc<Vec<Mat2>> {
        let key = if gap == 0 { 0 } else { gap.min((self.divisor.degree() as i64 - 1).max(1)) };
        let mut cache = self.aut_cache.lock().unwrap();
        cache
            .entry(key)
            .or_insert_with(|| {
                Arc::new(aut_image_in(&self.level, key, &DivisorSpec::zero()).expect("disjoint"))
            })
            .clone()
    }

    /// Lex-least element of the orbit of `raw` under the automorphisms of
    /// `O(gap) ⊕ O`, after scalar normalization.
    pub fn canonical_level(&self, gap: i64, raw: &Mat2) -> Result<Mat2, BundleError> {
        if !self.level.is_invertible(raw) {
            return Err(BundleError::NotInvertible);
        }
        let aut = self.aut(gap);
        Ok(aut.iter().map(|h| act(&self.level, raw, h)).min().expect("identity in group"))
    }

    pub fn canonical(&self, gap: i64, raw: &Mat2) -> Result<Vertex, BundleError> {
        let level = self.canonical_level(gap, raw)?;
        Ok(self.vertex(gap, level))
    }

    pub fn vertex(&self, gap: i64, level: Mat2) -> Vertex {
        let layer = self.layer(gap, &level);
        Vertex { gap: gap as u32, level, layer }
    }

    /// Canonical levels over one gap, in increasing order.
    pub fn levels_at(&self, gap: i64) -> Result<Vec<Mat2>, BundleError> {
        orbit_representatives(&self.level, &self.aut(gap))
    }

    /// All vertices with gap at most `n_max`, sorted by gap then level.
    pub fn enumerate(&self, n_max: u32) -> Result<Vec<Vertex>, BundleError> {
        let mut out = Vec::new();
        let mut stable: Option<(i64, Vec<Mat2>)> = None;
        for gap in 0..=n_max as i64 {
            let key = if gap == 0 { 0 } else { gap.min((self.divisor.degree() as i64 - 1).max(1)) };
            let levels = match &stable {
                Some((k, l)) if *k == key => l.clone(),
                _ => {
                    let l = self.levels_at(gap)?;
                    stable = Some((key, l.clone()));
                    l
                }
            };
            out.extend(levels.into_iter().map(|l| self.vertex(gap, l)));
        }
        Ok(out)
    }

    /// Machine-readable level: points separated by `;`, each entry as
    /// `.`-joined coefficient indices.
    pub fn encode_level(&self, level: &Mat2) -> String {
        let parts: Vec<String> = self
            .level
            .factors()
            .iter()
            .zip(&level.0)
            .map(|(r, m)| {
                m.iter()
                    .map(|&j| {
                        r.coeffs(j).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        parts.join(";")
    }

    pub fn decode_level(&self, s: &str) -> Result<Mat2, BundleError> {
        let bad = || BundleError::BadLevel(s.to_string());
        let parts: Vec<&str> = if s.is_empty() { Vec::new() } else { s.split(';').collect() };
        if parts.len() != self.level.len() {
            return Err(bad());
        }
        let mut out = Vec::new();
        for (r, part) in self.level.factors().iter().zip(parts) {
            let entries: Vec<Jet> = part
                .split_whitespace()
                .map(|e| {
                    let c: Vec<u32> = e.split('.').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                    if c.len() != r.width() || c.iter().any(|&x| x >= self.field.q()) {
                        return Err(bad());
                    }
                    Ok(r.from_coeffs(&c))
                })
                .collect::<Result<_, _>>()?;
            let m: M2 = entries.try_into().map_err(|_| bad())?;
            out.push(m);
        }
        Ok(Mat2(out))
    }

    pub fn format_level(&self, level: &Mat2) -> String {
        if self.level.is_empty() {
            return "-".to_string();
        }
        self.level.format_mat(level)
    }
}

/// Lex-least representatives of the orbits of `PGL₂(O_D)` under right
/// multiplication by `group`, in increasing order.
pub fn orbit_representatives(level: &LevelRing, group: &[Mat2]) -> Result<Vec<Mat2>, BundleError> {
    let order = ring_arith::group_order(level, SubgroupSpec::pgl(SubgroupTag::GL2));
    let budget = enumeration_budget();
    if order > budget {
        return Err(RingError::BudgetExceeded { order, budget }.into());
    }
    let per_point: Vec<Vec<M2>> = level
        .factors()
        .iter()
        .map(|r| {
            let mut v = local_gl2(r, true);
            v.sort();
            v
        })
        .collect();
    let radix: Vec<usize> = per_point.iter().map(|v| v.len()).collect();
    let total: usize = radix.iter().product();
    let index_of = |m: &Mat2| -> usize {
        m.0.iter()
            .zip(&per_point)
            .fold(0, |acc, (x, list)| acc * list.len() + list.binary_search(x).expect("normalized"))
    };
    let element = |mut idx: usize| -> Mat2 {
        let mut parts = vec![[0; 4]; radix.len()];
        for i in (0..radix.len()).rev() {
            parts[i] = per_point[i][idx % radix[i]];
            idx /= radix[i];
        }
        Mat2(parts)
    };
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let a = element(idx);
        for h in group {
            seen[index_of(&act(level, &a, h))] = true;
        }
        reps.push(a);
    }
    Ok(reps)
}

/// Closed-form number of cusp vertices over one gap:
/// `q^{2(deg D1 − deg D1_red)} / (q−1)^{[D2 = 0]} · ∏_{y ∈ D1} (q^{2 deg y} − 1)`.
pub fn fiber_count(q: u64, d1: &DivisorSpec, d2: &DivisorSpec) -> u128 {
    let q = q as u128;
    let mut n = q.pow(2 * (d1.degree() - d1.reduced_degree()) as u32);
    for (y, _) in d1.entries() {
        n *= q.pow(2 * y.degree() as u32) - 1;
    }
    if d2.is_zero() && !d1.is_zero() {
        n /= q - 1;
    }
    n
}
