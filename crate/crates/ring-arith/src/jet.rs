//! Truncated local rings `O_y/π^d` at a point `y` of the projective line.
//!
//! At a finite point with monic irreducible `p(t)` the ring is
//! `F_q[t]/(p(t)^d)` with uniformizer `p(t)`; at infinity it is
//! `F_q[u]/(u^d)` with `u = 1/t`. Elements are `u32` indices whose base-`q`
//! digits are the coefficients, the constant coefficient being the most
//! significant digit, so integer order is lexicographic order of the
//! coefficient vector.

use crate::error::RingError;
use crate::field::{FieldCtx, Fq};
use crate::poly::{self, Poly};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub type Jet = u32;

const TABLE_LIMIT: u64 = 256;
const UNIT_TABLE_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Poly),
    Infinity,
}

impl Point {
    pub fn degree(&self) -> usize {
        match self {
            Point::Finite(p) => p.len() - 1,
            Point::Infinity => 1,
        }
    }

    /// The uniformizer as a polynomial in the local variable.
    pub fn local_uniformizer(&self) -> Poly {
        match self {
            Point::Finite(p) => p.clone(),
            Point::Infinity => vec![0, 1],
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn format(&self, f: &FieldCtx) -> String {
        match self {
            Point::Finite(p) => poly::format(f, p),
            Point::Infinity => "inf".to_string(),
        }
    }

    /// Parses `inf` or a monic irreducible polynomial in `t`.
    pub fn parse(f: &FieldCtx, s: &str) -> Result<Point, RingError> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Point::Infinity);
        }
        let p = poly::parse(f, s).ok_or_else(|| RingError::BadPoint(s.to_string()))?;
        Self::finite(f, p)
    }

    pub fn finite(f: &FieldCtx, p: Poly) -> Result<Point, RingError> {
        match poly::degree(&p) {
            Some(d) if d >= 1 && p[d] == 1 => {}
            _ => return Err(RingError::BadPoint(poly::format(f, &p))),
        }
        if !poly::is_irreducible(f, &p) {
            return Err(RingError::Reducible(poly::format(f, &p)));
        }
        Ok(Point::Finite(p))
    }

    fn sort_key(&self) -> (bool, usize, &[Fq]) {
        match self {
            Point::Finite(p) => (false, p.len(), p.as_slice()),
            Point::Infinity => (true, 1, &[]),
        }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}
impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Context for `O_y/π^d`.
pub struct JetRing {
    field: Arc<FieldCtx>,
    point: Point,
    d: usize,
    r: usize,
    n: usize,
    size: u64,
    pi: Poly,
    modulus: Poly,
    tables: Option<Tables>,
    units: Option<Vec<Jet>>,
}

impl fmt::Debug for JetRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetRing")
            .field("point", &self.point.format(&self.field))
            .field("d", &self.d)
            .finish()
    }
}

impl PartialEq for JetRing {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.point == other.point && self.d == other.d
    }
}

impl JetRing {
    pub fn new(field: Arc<FieldCtx>, point: Point, d: usize) -> Result<Self, RingError> {
        if d == 0 {
            return Err(RingError::ZeroOrder);
        }
        if let Point::Finite(p) = &point {
            Point::finite(&field, p.clone())?;
        }
        let r = point.degree();
        let n = r * d;
        let size = (field.q() as u64)
            .checked_pow(n as u32)
            .filter(|&s| s <= u32::MAX as u64)
            .ok_or(RingError::RingTooLarge)?;
        let pi = point.local_uniformizer();
        let modulus = poly::pow(&field, &pi, d as u32);
        let mut ring = JetRing {
            field,
            point,
            d,
            r,
            n,
            size,
            pi,
            modulus,
            tables: None,
            units: None,
        };
        if size <= TABLE_LIMIT {
            let s = size as usize;
            let mut add = vec![0u16; s * s];
            let mut mul = vec![0u16; s * s];
            for a in 0..s {
                for b in 0..s {
                    add[a * s + b] = ring.add_slow(a as Jet, b as Jet) as u16;
                    mul[a * s + b] = ring.mul_slow(a as Jet, b as Jet) as u16;
                }
            }
            ring.tables = Some(Tables { add, mul });
        }
        if size <= UNIT_TABLE_LIMIT {
            let mut inv = vec![0; size as usize];
            for a in 0..size as Jet {
                if ring.is_unit(a) && inv[a as usize] == 0 {
                    let b = ring.inv_slow(a);
                    inv[a as usize] = b;
                    inv[b as usize] = a;
                }
            }
            ring.units = Some(inv);
        }
        Ok(ring)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn point(&self) -> &Point {
        &self.point
    }
    /// Truncation order `d`.
    pub fn order(&self) -> usize {
        self.d
    }
    /// Degree of the point.
    pub fn point_degree(&self) -> usize {
        self.r
    }
    /// Number of `F_q` coefficients of an element.
    pub fn width(&self) -> usize {
        self.n
    }
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn modulus(&self) -> &[Fq] {
        &self.modulus
    }
    pub fn uniformizer_poly(&self) -> &[Fq] {
        &self.pi
    }

    pub fn zero(&self) -> Jet {
        0
    }

    pub fn one(&self) -> Jet {
        self.from_const(1)
    }

    /// Coefficient vector, constant term first, of length `width()`.
    pub fn coeffs(&self, a: Jet) -> Vec<Fq> {
        let q = self.field.q();
        let mut out = vec![0; self.n];
        let mut x = a;
        for i in (0..self.n).rev() {
            out[i] = x % q;
            x /= q;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[Fq]) -> Jet {
        let q = self.field.q();
        (0..self.n).fold(0, |acc, i| acc * q + c.get(i).copied().unwrap_or(0))
    }

    pub fn to_poly(&self, a: Jet) -> Poly {
        let mut p = self.coeffs(a);
        poly::trim(&mut p);
        p
    }

    /// Reduction of a polynomial in the local variable.
    pub fn from_poly(&self, p: &[Fq]) -> Jet {
        let r = poly::rem(&self.field, p, &self.modulus);
        self.from_coeffs(&r)
    }

    pub fn from_const(&self, c: Fq) -> Jet {
        self.from_coeffs(&[c])
    }

    /// The constant embedding `F_q -> O`, if `a` lies in it.
    pub fn as_const(&self, a: Jet) -> Option<Fq> {
        let c = self.coeffs(a);
        c[1..].iter().all(|&x| x == 0).then_some(c[0])
    }

    pub fn uniformizer(&self) -> Jet {
        self.from_poly(&self.pi)
    }

    fn add_slow(&self, a: Jet, b: Jet) -> Jet {
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let c: Vec<Fq> = ca.iter().zip(&cb).map(|(&x, &y)| self.field.add(x, y)).collect();
        self.from_coeffs(&c)
    }

    fn mul_slow(&self, a: Jet, b: Jet) -> Jet {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        self.from_poly(&poly::mul(&self.field, &pa, &pb))
    }

    fn inv_slow(&self, a: Jet) -> Jet {
        let (_, s, _) = poly::xgcd(&self.field, &self.to_poly(a), &self.modulus);
        self.from_poly(&s)
    }

    #[inline]
    pub fn add(&self, a: Jet, b: Jet) -> Jet {
        match &self.tables {
            Some(t) => t.add[(a as u64 * self.size + b as u64) as usize] as Jet,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Jet) -> Jet {
        let c: Vec<Fq> = self.coeffs(a).iter().map(|&x| self.field.neg(x)).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: Jet, b: Jet) -> Jet {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Jet, b: Jet) -> Jet {
        match &self.tables {
            Some(t) => t.mul[(a as u64 * self.size + b as u64) as usize] as Jet,
            None => self.mul_slow(a, b),
        }
    }

    pub fn scale(&self, a: Jet, c: Fq) -> Jet {
        let v: Vec<Fq> = self.coeffs(a).iter().map(|&x| self.field.mul(x, c)).collect();
        self.from_coeffs(&v)
    }

    /// Residue class modulo the uniformizer, as a polynomial of degree
    /// below the point degree.
    pub fn residue_poly(&self, a: Jet) -> Poly {
        poly::rem(&self.field, &self.to_poly(a), &self.pi)
    }

    pub fn is_unit(&self, a: Jet) -> bool {
        if self.n == 1 {
            return a != 0;
        }
        if self.r == 1 && !self.point.is_infinity() {
            // residue is evaluation at the root of a linear point
            let root = self.field.neg(self.pi[0]);
            return poly::eval(&self.field, &self.to_poly(a), root) != 0;
        }
        !self.residue_poly(a).is_empty()
    }

    pub fn inv(&self, a: Jet) -> Option<Jet> {
        if !self.is_unit(a) {
            return None;
        }
        match &self.units {
            Some(t) => Some(t[a as usize]),
            None => Some(self.inv_slow(a)),
        }
    }

    /// `π`-adic valuation, `d` for zero.
    pub fn valuation(&self, a: Jet) -> usize {
        let mut p = self.to_poly(a);
        let mut v = 0;
        while v < self.d && !p.is_empty() {
            let (qt, r) = poly::divrem(&self.field, &p, &self.pi);
            if !r.is_empty() {
                return v;
            }
            p = qt;
            v += 1;
        }
        self.d
    }

    /// Exact division by `π`, given an element of valuation at least one;
    /// the result is read in the ring of order `d - 1`.
    pub fn div_uniformizer(&self, a: Jet, target: &JetRing) -> Option<Jet> {
        let (qt, r) = poly::divrem(&self.field, &self.to_poly(a), &self.pi);
        r.is_empty().then(|| target.from_poly(&qt))
    }

    /// Image in `O/π^k` for `k <= d`, as an element of `target`.
    pub fn reduce_to(&self, a: Jet, target: &JetRing) -> Jet {
        target.from_poly(&self.to_poly(a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Jet> {
        0..self.size as Jet
    }

    pub fn units(&self) -> impl Iterator<Item = Jet> + '_ {
        self.elements().filter(move |&a| self.is_unit(a))
    }

    /// Closed-form unit count `(q^r - 1) q^{r(d-1)}`.
    pub fn unit_count(&self) -> u64 {
        let qr = (self.field.q() as u64).pow(self.r as u32);
        (qr - 1) * qr.pow(self.d as u32 - 1)
    }

    /// Rendering: a bare field element when the ring is a field of prime
    /// degree one, else `(c0 c1 ..)`.
    pub fn format(&self, a: Jet) -> String {
        let c = self.coeffs(a);
        if c.len() == 1 {
            return self.field.format(c[0]);
        }
        let parts: Vec<String> = c.iter().map(|&x| self.field.format(x)).collect();
        format!("({})", parts.join(" "))
    }

    pub fn parse(&self, s: &str) -> Option<Jet> {
        let s = s.trim();
        let inner = match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => inner,
            None => {
                if self.n != 1 {
                    return None;
                }
                s
            }
        };
        let c: Option<Vec<Fq>> = inner.split_whitespace().map(|x| self.field.parse(x)).collect();
        let c = c?;
        (c.len() == self.n).then(|| self.from_coeffs(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64, point: &str, d: usize) -> JetRing {
        let f = Arc::new(FieldCtx::new(q).unwrap());
        let p = Point::parse(&f, point).unwrap();
        JetRing::new(f, p, d).unwrap()
    }

    #[test]
    fn degree_one_point_is_base_field() {
        let r = ring(2, "t", 1);
        assert_eq!(r.size(), 2);
        assert_eq!(r.units().count(), 1);
    }

    #[test]
    fn degree_two_point_is_f4() {
        let r = ring(2, "t^2+t+1", 1);
        assert_eq!(r.size(), 4);
        assert_eq!(r.units().count(), 3);
        for a in r.units() {
            assert_eq!(r.mul(a, r.inv(a).unwrap()), r.one());
        }
    }

    #[test]
    fn dual_numbers_over_f2() {
        let r = ring(2, "t", 2);
        assert_eq!(r.size(), 4);
        let units: Vec<Jet> = r.units().collect();
        assert_eq!(units.len(), 2);
        // brute-force unit criterion: a is a unit iff some b has ab = 1
        for a in r.elements() {
            let has_inverse = r.elements().any(|b| r.mul(a, b) == r.one());
            assert_eq!(has_inverse, r.is_unit(a));
        }
    }

    #[test]
    fn reducible_point_rejected() {
        let f = Arc::new(FieldCtx::new(2).unwrap());
        assert!(matches!(
            Point::parse(&f, "t^2+1"),
            Err(RingError::Reducible(_))
        ));
    }

    #[test]
    fn infinity_ring() {
        let r = ring(3, "inf", 2);
        assert_eq!(r.size(), 9);
        assert_eq!(r.unit_count(), 6);
        assert_eq!(r.valuation(r.uniformizer()), 1);
        assert_eq!(r.valuation(0), 2);
    }

    #[test]
    fn index_order_is_coefficient_lex() {
        let r = ring(3, "t", 2);
        let a = r.from_coeffs(&[0, 2]);
        let b = r.from_coeffs(&[1, 0]);
        assert!(a < b);
    }

    #[test]
    fn format_round_trip() {
        let r = ring(4, "t^2+t+{0,1}", 1);
        for a in r.elements() {
            assert_eq!(r.parse(&r.format(a)), Some(a));
        }
    }
}
