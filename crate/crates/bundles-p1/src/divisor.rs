//! Effective divisors on the projective line.

use crate::error::BundleError;
use ring_arith::{FieldCtx, LevelRing, Point};
use std::sync::Arc;

/// An effective divisor `Σ d_y [y]`, points kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DivisorSpec {
    entries: Vec<(Point, usize)>,
}

/// Parses a point, accepting `x` for `t` and `y` for `t - 1`.
pub fn parse_point(f: &FieldCtx, s: &str) -> Result<Point, BundleError> {
    match s.trim() {
        "x" => Ok(Point::Finite(vec![0, 1])),
        "y" => Ok(Point::Finite(vec![f.neg(1), 1])),
        other => Ok(Point::parse(f, other)?),
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl DivisorSpec {
    pub fn zero() -> Self {
        DivisorSpec::default()
    }

    pub fn new(mut entries: Vec<(Point, usize)>) -> Result<Self, BundleError> {
        entries.retain(|(_, d)| *d > 0);
        entries.sort();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(BundleError::BadDivisor("repeated point".into()));
            }
        }
        Ok(DivisorSpec { entries })
    }

    /// Parses `point:mult,point:mult`; the empty string is the zero divisor.
    pub fn parse(f: &FieldCtx, s: &str) -> Result<Self, BundleError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let mut entries = Vec::new();
        for item in split_top_level(s, ',') {
            let (pt, mult) = item
                .rsplit_once(':')
                .ok_or_else(|| BundleError::BadDivisor(item.to_string()))?;
            let mult: usize = mult
                .trim()
                .parse()
                .map_err(|_| BundleError::BadDivisor(item.to_string()))?;
            entries.push((parse_point(f, pt)?, mult));
        }
        Self::new(entries)
    }

    pub fn format(&self, f: &FieldCtx) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, d)| format!("{}:{}", p.format(f), d))
            .collect();
        parts.join(",")
    }

    pub fn entries(&self) -> &[(Point, usize)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(p, d)| p.degree() * d).sum()
    }

    /// Degree of the reduced divisor.
    pub fn reduced_degree(&self) -> usize {
        self.entries.iter().map(|(p, _)| p.degree()).sum()
    }

    pub fn multiplicity(&self, p: &Point) -> usize {
        self.entries.iter().find(|(q, _)| q == p).map_or(0, |(_, d)| *d)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.entries.iter().position(|(q, _)| q == p)
    }

    pub fn add(&self, other: &DivisorSpec) -> DivisorSpec {
        let mut entries = self.entries.clone();
        for (p, d) in &other.entries {
            match entries.iter_mut().find(|(q, _)| q == p) {
                Some(e) => e.1 += d,
                None => entries.push((p.clone(), *d)),
            }
        }
        entries.sort();
        DivisorSpec { entries }
    }

    /// Splits off the part supported on `points`, returning `(rest, part)`.
    pub fn split(&self, points: &[Point]) -> (DivisorSpec, DivisorSpec) {
        let (part, rest): (Vec<_>, Vec<_>) =
            self.entries.iter().cloned().partition(|(p, _)| points.contains(p));
        (DivisorSpec { entries: rest }, DivisorSpec { entries: part })
    }

    pub fn disjoint_from(&self, other: &DivisorSpec) -> Result<(), BundleError> {
        for (p, _) in &self.entries {
            if other.multiplicity(p) > 0 {
                return Err(BundleError::NotDisjoint(format!("{p:?}")));
            }
        }
        Ok(())
    }

    pub fn level_ring(&self, f: &Arc<FieldCtx>) -> Result<LevelRing, BundleError> {
        Ok(LevelRing::new(f.clone(), &self.entries)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sorts_and_sums_degrees() {
        let f = FieldCtx::new(2).unwrap();
        let d = DivisorSpec::parse(&f, "inf:2, t^2+t+1:1, x:1").unwrap();
        assert_eq!(d.degree(), 2 + 2 + 1);
        assert_eq!(d.reduced_degree(), 1 + 2 + 1);
        assert_eq!(d.format(&f), "t:1,t^2+t+1:1,inf:2");
        assert!(DivisorSpec::parse(&f, "t^2+1:1").is_err());
        assert!(DivisorSpec::parse(&f, "").unwrap().is_zero());
    }

    #[test]
    fn aliases() {
        let f = FieldCtx::new(3).unwrap();
        assert_eq!(parse_point(&f, "y").unwrap(), Point::parse(&f, "t+2").unwrap());
        let f4 = FieldCtx::new(4).unwrap();
        let d = DivisorSpec::parse(&f4, "t+{0,1}:1,x:2").unwrap();
        assert_eq!(d.entries().len(), 2);
    }
}
