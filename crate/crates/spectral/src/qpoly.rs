//! Dense univariate polynomials over ℚ, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly(pub Vec<BigRational>);

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }
    pub fn one() -> Self {
        QPoly(vec![rat(1)])
    }
    pub fn x() -> Self {
        QPoly(vec![rat(0), rat(1)])
    }
    pub fn constant(c: BigRational) -> Self {
        QPoly(vec![c]).trimmed()
    }
    pub fn from_ints(c: &[i64]) -> Self {
        QPoly(c.iter().map(|&v| rat(v)).collect()).trimmed()
    }
    pub fn from_bigints(c: &[BigInt]) -> Self {
        QPoly(c.iter().map(|v| BigRational::from_integer(v.clone())).collect()).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        QPoly((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect()).trimmed()
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.clone();
        let dl = d.lead();
        let dd = d.0.len();
        if r.0.len() < dd {
            return (QPoly::zero(), r);
        }
        let mut q = vec![BigRational::zero(); r.0.len() - dd + 1];
        while r.0.len() >= dd && !r.is_zero() {
            let shift = r.0.len() - dd;
            let c = r.lead() / &dl;
            for (i, b) in d.0.iter().enumerate() {
                r.0[shift + i] -= &c * b;
            }
            q[shift] = c;
            r = r.trimmed();
        }
        (QPoly(q).trimmed(), r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn gcdext_mod(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = BigRational::one() / r0.lead();
        (r0.scale(&l), s0.scale(&l).rem(m))
    }

    pub fn derivative(&self) -> Self {
        QPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect()).trimmed()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Yun's algorithm: `(f_i, i)` with `self = c·∏ f_i^i`, each `f_i`
    /// monic, squarefree and pairwise coprime.
    pub fn squarefree(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.divrem(&a).0;
        let mut c = df.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            if b.degree() < 1 {
                break;
            }
            c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational roots, by the rational root test on the primitive integer
    /// multiple.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut roots = Vec::new();
        let mut f = self.clone();
        while f.degree() >= 1 && f.coeff(0).is_zero() {
            f = QPoly(f.0[1..].to_vec());
            if !roots.contains(&BigRational::zero()) {
                roots.push(BigRational::zero());
            }
        }
        if f.degree() < 1 {
            return roots;
        }
        let ints = f.integer_coeffs();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num = divisors(&a0);
        let den = divisors(&an);
        for p in &num {
            for q in &den {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for s in [1, -1] {
                    let r = BigRational::new(p * BigInt::from(s), q.clone());
                    if f.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// The primitive integer polynomial with the same roots, positive lead.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Parses a polynomial in `x` such as `x^2-2`, `3/2*x+1` or `-x`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut p = QPoly::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, t.trim_start_matches('+').to_string()),
            };
            let (coef, power) = match body.find('x') {
                None => (body.as_str(), 0u32),
                Some(k) => {
                    let c = body[..k].trim_end_matches('*');
                    let e = &body[k + 1..];
                    let e = if e.is_empty() { 1 } else { e.strip_prefix('^')?.parse().ok()? };
                    (c, e)
                }
            };
            let c = if coef.is_empty() { rat(1) } else { parse_rational(coef)? };
            let mut mono = vec![BigRational::zero(); power as usize + 1];
            mono[power as usize] = c * rat(sign);
            p = p.add(&QPoly(mono));
        }
        Some(p)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let n = n.abs();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show = i == 0 || !a.is_one();
            if show {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
