//! Outgoing Hecke edges of a vertex.

use crate::coset::{coset_reps, CosetLabel, CosetRep};
use crate::error::EdgeError;
use bundles_p1::{lift_value, local_value, point_section, LatticeCondition, ModFrame, ModifiedSheaf, Moduli, Vertex};
use ring_arith::{mat2, JetRing, Mat2, Point, M2};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    /// Ramified at `x`, source position `∞`.
    CaseI,
    /// Ramified at `x`, finite source position.
    CaseII,
    /// Unramified; `(1, 0)` twists the top summand down, `(0, 1)` the bottom.
    Twist(u8, u8),
    /// Unramified modification whose type is not a single summand twist.
    Mixed,
}

impl fmt::Display for EdgeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeTag::CaseI => write!(f, "case-i"),
            EdgeTag::CaseII => write!(f, "case-ii"),
            EdgeTag::Twist(a, b) => write!(f, "twist({a},{b})"),
            EdgeTag::Mixed => write!(f, "mixed"),
        }
    }
}

impl FromStr for EdgeTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "case-i" => Ok(EdgeTag::CaseI),
            "case-ii" => Ok(EdgeTag::CaseII),
            "mixed" => Ok(EdgeTag::Mixed),
            "twist(1,0)" => Ok(EdgeTag::Twist(1, 0)),
            "twist(0,1)" => Ok(EdgeTag::Twist(0, 1)),
            _ => Err(format!("unknown edge tag `{s}`")),
        }
    }
}

/// Aggregated edges to one target; `tags` holds one entry per coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBundle {
    pub target: Vertex,
    pub mult: u64,
    pub tags: Vec<EdgeTag>,
}

/// The Hecke operator at `x` on the vertices of a moduli space.
pub struct HeckeAt {
    moduli: Arc<Moduli>,
    x: Point,
    x_index: Option<usize>,
    d_x: usize,
    deep: Arc<JetRing>,
    residue: Arc<JetRing>,
    cosets: Vec<CosetRep>,
}

impl fmt::Debug for HeckeAt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeAt").field("moduli", &self.moduli).field("d_x", &self.d_x).finish()
    }
}

impl HeckeAt {
    pub fn new(moduli: Arc<Moduli>) -> Result<Self, EdgeError> {
        let x = moduli.x().cloned().ok_or(EdgeError::NoPoint)?;
        let field = moduli.field().clone();
        let x_index = moduli.x_index();
        let d_x = moduli.divisor().multiplicity(&x);
        let deep = Arc::new(JetRing::new(field.clone(), x.clone(), d_x + 1)?);
        let residue = Arc::new(JetRing::new(field, x.clone(), 1)?);
        let cosets = coset_reps(&deep, d_x);
        Ok(HeckeAt { moduli, x, x_index, d_x, deep, residue, cosets })
    }

    pub fn moduli(&self) -> &Arc<Moduli> {
        &self.moduli
    }
    pub fn point(&self) -> &Point {
        &self.x
    }
    pub fn ramification(&self) -> usize {
        self.d_x
    }
    pub fn cosets(&self) -> &[CosetRep] {
        &self.cosets
    }

    /// Total outgoing multiplicity.
    pub fn degree(&self) -> u64 {
        self.cosets.len() as u64
    }

    /// Gaps strictly above this use the symbolic rule: `deg D − 2 + deg x`,
    /// and at least `deg x − 1` so that lowering the top summand keeps it on top.
    pub fn deep_threshold(&self) -> i64 {
        let r = self.x.degree() as i64;
        (self.moduli.cusp_threshold() + r).max(r - 1)
    }

    /// The level at `x` read in the ring of order `d_x + 1`, lifted by
    /// zero extension.
    fn lifted(&self, level: &Mat2) -> M2 {
        match self.x_index {
            None => mat2::identity(&self.deep),
            Some(i) => {
                let r = self.moduli.level_ring().factor(i);
                level.0[i].map(|e| self.deep.from_poly(&r.to_poly(e)))
            }
        }
    }

    fn tag(&self, source: &Vertex, lifted: &M2, gap: i64, frame: &ModFrame) -> EdgeTag {
        if self.d_x >= 1 {
            return if self.deep.is_unit(lifted[0]) { EdgeTag::CaseII } else { EdgeTag::CaseI };
        }
        let r = self.x.degree() as i64;
        let n = source.gap as i64;
        match (frame.top, frame.bottom) {
            (t, 0) if t == n - r => EdgeTag::Twist(1, 0),
            (t, b) if t == n && b == -r => EdgeTag::Twist(0, 1),
            _ if gap == n - r => EdgeTag::Twist(1, 0),
            _ if gap == n + r => EdgeTag::Twist(0, 1),
            _ => EdgeTag::Mixed,
        }
    }

    /// Transports the level through the frame of the modification.
    fn transport(&self, level: &Mat2, lifted: &M2, coset: &CosetRep, frame: &ModFrame) -> Mat2 {
        let lr = self.moduli.level_ring();
        let parts = lr
            .factors()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let s = frame.local(r);
                if Some(i) == self.x_index {
                    let sx = frame.local(&self.deep);
                    let m = mat2::mul(&self.deep, &mat2::adj(&self.deep, &coset.gamma), &mat2::mul(&self.deep, lifted, &sx));
                    m.map(|e| self.deep.div_uniformizer(e, r).expect("lattice image lies in π"))
                } else {
                    mat2::mul(r, &level.0[i], &s)
                }
            })
            .collect();
        Mat2(parts)
    }

    fn target(&self, frame: &ModFrame, level: Mat2) -> Result<Vertex, EdgeError> {
        Ok(self.moduli.canonical(frame.gap(), &level)?)
    }

    /// Every coset handled through section spaces and splitting types.
    pub fn neighbors_bruteforce(&self, v: &Vertex) -> Result<Vec<EdgeBundle>, EdgeError> {
        let lifted = self.lifted(&v.level);
        let adj = mat2::adj(&self.deep, &lifted);
        let field = self.moduli.field();
        let mut raw = Vec::with_capacity(self.cosets.len());
        for coset in &self.cosets {
            let span = mat2::mul(&self.deep, &adj, &coset.gamma);
            let gens = [(span[0], span[2]), (span[1], span[3])]
                .map(|(a, b)| (self.deep.reduce_to(a, &self.residue), self.deep.reduce_to(b, &self.residue)));
            let cond = LatticeCondition { ring: self.residue.clone(), generators: gens.to_vec() };
            let sheaf = ModifiedSheaf::new(field.clone(), v.gap as i64, 0, &[cond]);
            let frame = sheaf.frame()?;
            let level = self.transport(&v.level, &lifted, coset, &frame);
            let target = self.target(&frame, level)?;
            let tag = self.tag(v, &lifted, frame.gap(), &frame);
            raw.push((target, tag));
        }
        Ok(aggregate(raw))
    }

    /// Symbolic rule for vertices above the deep-cusp threshold.
    pub fn neighbors_cusp_rule(&self, v: &Vertex) -> Result<Vec<EdgeBundle>, EdgeError> {
        let n = v.gap as i64;
        let threshold = self.deep_threshold();
        if n <= threshold {
            return Err(EdgeError::BelowThreshold { gap: n, threshold });
        }
        let r = self.x.degree() as i64;
        let (px, px_deg) = point_section(&self.x);
        // raise the bottom summand: S = diag(1, p_x)
        let raise = ModFrame {
            top: n,
            bottom: -r,
            entries: [vec![1], Vec::new(), Vec::new(), px.clone()],
            degrees: [0, n + r, -n, px_deg],
        };
        let lower = |s: Vec<u32>| ModFrame {
            top: n - r,
            bottom: 0,
            entries: [px.clone(), s, Vec::new(), vec![1]],
            degrees: [px_deg, n, -n + r, 0],
        };
        let mut raw = Vec::new();
        if self.d_x >= 1 {
            let lifted = self.lifted(&v.level);
            if !self.deep.is_unit(lifted[0]) {
                for coset in &self.cosets {
                    let level = self.transport(&v.level, &lifted, coset, &raise);
                    raw.push((self.target(&raise, level)?, EdgeTag::CaseI));
                }
            } else {
                let level = self.clear_corner(n, &v.level);
                let lifted = self.lifted(&level);
                let frame = lower(Vec::new());
                for coset in &self.cosets {
                    let moved = self.transport(&level, &lifted, coset, &frame);
                    raw.push((self.target(&frame, moved)?, EdgeTag::CaseII));
                }
            }
        } else {
            let lifted = self.lifted(&v.level);
            for coset in &self.cosets {
                let (frame, tag) = match coset.label {
                    CosetLabel::Upper => (raise.clone(), EdgeTag::Twist(0, 1)),
                    CosetLabel::Lower(c) => {
                        let c = self.deep.reduce_to(c, &self.residue);
                        (lower(lift_value(c, n, &self.residue)), EdgeTag::Twist(1, 0))
                    }
                    CosetLabel::Ramified(_) => unreachable!("unramified cosets"),
                };
                let level = self.transport(&v.level, &lifted, coset, &frame);
                raw.push((self.target(&frame, level)?, tag));
            }
        }
        Ok(aggregate(raw))
    }

    /// Right-multiplies by the automorphism `[[1, s], [0, 1]]` of `O(n) ⊕ O`
    /// that makes `a12 ≡ 0` at `x`.
    fn clear_corner(&self, n: i64, level: &Mat2) -> Mat2 {
        let i = self.x_index.expect("ramified");
        let lr = self.moduli.level_ring();
        let rx = lr.factor(i);
        let m = &level.0[i];
        let target = rx.neg(rx.mul(m[1], rx.inv(m[0]).expect("unit corner")));
        let s = lift_value(target, n, rx);
        let h = Mat2(
            lr.factors()
                .iter()
                .map(|r| [r.one(), local_value(&s, n, r), 0, r.one()])
                .collect(),
        );
        lr.mat_mul(level, &h)
    }

    /// Brute force at or below the deep-cusp threshold, the rule above.
    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<EdgeBundle>, EdgeError> {
        if v.gap as i64 > self.deep_threshold() {
            self.neighbors_cusp_rule(v)
        } else {
            self.neighbors_bruteforce(v)
        }
    }
}

fn aggregate(raw: Vec<(Vertex, EdgeTag)>) -> Vec<EdgeBundle> {
    let mut map: BTreeMap<Vertex, Vec<EdgeTag>> = BTreeMap::new();
    for (t, tag) in raw {
        map.entry(t).or_default().push(tag);
    }
    map.into_iter()
        .map(|(target, mut tags)| {
            tags.sort();
            EdgeBundle { target, mult: tags.len() as u64, tags }
        })
        .collect()
}
