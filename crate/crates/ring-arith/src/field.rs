//! Finite fields `F_q`, `q = p^e`, in the polynomial basis of a fixed
//! defining polynomial.
//!
//! An element is a `u32` whose base-`p` digits are its coefficients, the
//! least significant digit being the constant term. For prime fields the
//! index is the residue itself.

use crate::error::RingError;
use std::fmt;

/// Element of a finite field, interpreted through a [`FieldCtx`].
pub type Fq = u32;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r == 1 && p <= u32::MAX as u64 {
        Some((p as u32, e))
    } else {
        None
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    s0.rem_euclid(p as i64) as u64
}

/// Dense polynomial arithmetic over a prime field, used only while
/// searching for a defining polynomial.
mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(&mut r, m, p);
        r
    }

    /// Reduces modulo a monic `m`.
    pub fn rem(r: &mut Vec<u64>, m: &[u64], p: u64) {
        let dm = m.len() - 1;
        while r.len() > dm {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (k, &mk) in m.iter().enumerate() {
                    r[shift + k] = (r[shift + k] + p - (c * mk) % p) % p;
                }
            }
            r.pop();
        }
        trim(r);
    }

    pub fn powmod(base: &[u64], mut k: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = base.to_vec();
        rem(&mut b, m, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            k >>= 1;
        }
        acc
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lead = *b.last().unwrap();
            let inv = super::inv_mod(lead, p);
            let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
            rem(&mut a, &monic, p);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }
}

/// Rabin irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let n = m.len() as u64 - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let xqn = (0..n).fold(x.clone(), |acc, _| fp::powmod(&acc, p, m, p));
    if fp::sub(&xqn, &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for l in prime_factors(n) {
        let xq = (0..n / l).fold(x.clone(), |acc, _| fp::powmod(&acc, p, m, p));
        let g = fp::gcd(m.to_vec(), fp::sub(&xq, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// The field of order `q`, defined by the first primitive polynomial in
    /// increasing order of its lower coefficients.
    pub fn new(q: u64) -> Result<Self, RingError> {
        let (p, e) = prime_power(q).ok_or(RingError::NotPrimePower(q))?;
        if q > u32::MAX as u64 / 2 {
            return Err(RingError::FieldTooLarge(q));
        }
        if e == 1 {
            return Ok(Self::prime(p));
        }
        let p64 = p as u64;
        let count = p64.pow(e);
        for low in 0..count {
            let mut m: Vec<u64> = (0..e).map(|i| (low / p64.pow(i)) % p64).collect();
            m.push(1);
            if m[0] == 0 || !is_irreducible_fp(&m, p64) {
                continue;
            }
            let order = q - 1;
            let z = vec![0u64, 1];
            let primitive = prime_factors(order)
                .into_iter()
                .all(|l| fp::powmod(&z, order / l, &m, p64) != vec![1u64]);
            if primitive {
                let modulus: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                return Self::with_modulus(p, &modulus);
            }
        }
        Err(RingError::NotPrimePower(q))
    }

    fn prime(p: u32) -> Self {
        let mut ctx = FieldCtx {
            p,
            e: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
        };
        ctx.build_add_table();
        ctx
    }

    /// The field `F_p[z]/(m)` for a monic irreducible `m` (constant term
    /// first).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::NotPrimePower(p as u64));
        }
        let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if m.last() != Some(&1) || m.iter().any(|&c| c >= p as u64) {
            return Err(RingError::BadModulus);
        }
        if !is_irreducible_fp(&m, p as u64) {
            return Err(RingError::Reducible(format!("{modulus:?}")));
        }
        let e = modulus.len() as u32 - 1;
        if e == 1 {
            return Ok(Self::prime(p));
        }
        let q = p.pow(e);
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
        };
        ctx.build_add_table();
        // discrete log tables; the generator is the first element of full order
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let mut gen = None;
        for g in 2..q {
            let ok = factors
                .iter()
                .all(|&l| ctx.pow_slow(g, order / l) != 1);
            if ok {
                gen = Some(g);
                break;
            }
        }
        let g = gen.unwrap_or(1);
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = ctx.mul_slow(cur, g);
        }
        ctx.exp = exp;
        ctx.log = log;
        Ok(ctx)
    }

    fn build_add_table(&mut self) {
        if self.q <= ADD_TABLE_LIMIT && self.p != 2 {
            let q = self.q as usize;
            let mut t = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = self.add_digits(a as u32, b as u32);
                }
            }
            self.add_table = t;
        }
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let mut r = 0;
        let mut place = 1;
        for _ in 0..self.e {
            let d = (a % self.p + b % self.p) % self.p;
            r += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        r
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        fp::rem(&mut prod, &m, p);
        let mut out: Vec<u32> = prod.iter().map(|&c| c as u32).collect();
        out.resize(self.e as usize, 0);
        self.from_digits(&out)
    }

    fn pow_slow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 1;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            a ^ b
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.e == 1 {
            return self.p - a;
        }
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        if self.e == 1 {
            return Some(inv_mod(a as u64, self.p as u64) as u32);
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Fq, mut k: u64) -> Fq {
        let mut acc = 1;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as u32
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Fq {
        if self.e == 1 {
            let order = (self.p - 1) as u64;
            let factors = prime_factors(order);
            (1..self.p)
                .find(|&g| factors.iter().all(|&l| self.pow(g, order / l) != 1))
                .unwrap_or(1)
        } else {
            self.exp[1 % self.exp.len()]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Fq> {
        1..self.q
    }

    /// Coefficient-vector rendering: a bare integer for prime fields,
    /// `{c0,c1,..}` otherwise.
    pub fn format(&self, a: Fq) -> String {
        if self.e == 1 {
            a.to_string()
        } else {
            let d: Vec<String> = self.digits(a).iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", d.join(","))
        }
    }

    /// Inverse of [`FieldCtx::format`]; also accepts the integer index.
    pub fn parse(&self, s: &str) -> Option<Fq> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let d: Option<Vec<u32>> = inner.split(',').map(|x| x.trim().parse().ok()).collect();
            let d = d?;
            if d.len() != self.e as usize || d.iter().any(|&x| x >= self.p) {
                return None;
            }
            return Some(self.from_digits(&d));
        }
        let v: u32 = s.parse().ok()?;
        (v < self.q).then_some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn f4_generator_relation() {
        let f = FieldCtx::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = 2;
        assert_eq!(f.mul(g, g), f.add(g, 1));
        assert_eq!(f.inv(g), Some(f.mul(g, g)));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FieldCtx::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b), "q={q}");
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            FieldCtx::with_modulus(2, &[1, 0, 1]),
            Err(RingError::Reducible(_))
        ));
    }

    #[test]
    fn format_round_trip() {
        let f = FieldCtx::new(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)), Some(a));
        }
    }
}
