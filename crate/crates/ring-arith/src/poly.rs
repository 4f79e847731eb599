//! Univariate polynomials over `F_q`, stored constant term first with no
//! trailing zeros.

use crate::field::{FieldCtx, Fq};

pub type Poly = Vec<Fq>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[Fq]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn add(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(&mut r);
    r
}

pub fn sub(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(&mut r);
    r
}

pub fn scale(f: &FieldCtx, a: &[Fq], c: Fq) -> Poly {
    let mut r: Poly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut r);
    r
}

pub fn mul(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    trim(&mut r);
    r
}

pub fn pow(f: &FieldCtx, a: &[Fq], k: u32) -> Poly {
    let mut acc = vec![1];
    for _ in 0..k {
        acc = mul(f, &acc, a);
    }
    acc
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv_lead = f.inv(b[db]).unwrap();
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut qt = vec![0; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.mul(*r.last().unwrap(), inv_lead);
        qt[k] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, bi));
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut qt);
    (qt, r)
}

pub fn rem(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldCtx, a: &[Fq]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d]).unwrap()),
    }
}

pub fn gcd(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (qt, r) = divrem(f, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(f, &s0, &mul(f, &qt, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(f, &t0, &mul(f, &qt, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let c = f.inv(r0[d]).unwrap();
            (scale(f, &r0, c), scale(f, &s0, c), scale(f, &t0, c))
        }
    }
}

pub fn mulmod(f: &FieldCtx, a: &[Fq], b: &[Fq], m: &[Fq]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FieldCtx, a: &[Fq], mut k: u64, m: &[Fq]) -> Poly {
    let mut acc = rem(f, &[1], m);
    let mut b = rem(f, a, m);
    while k > 0 {
        if k & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        k >>= 1;
    }
    acc
}

pub fn eval(f: &FieldCtx, a: &[Fq], x: Fq) -> Fq {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

/// Rabin's test over `F_q`.
pub fn is_irreducible(f: &FieldCtx, m: &[Fq]) -> bool {
    let n = match degree(m) {
        None | Some(0) => return false,
        Some(n) => n as u64,
    };
    if n == 1 {
        return true;
    }
    let q = f.q() as u64;
    let x = vec![0, 1];
    let frob = |p: &Poly, times: u64| (0..times).fold(p.clone(), |acc, _| powmod(f, &acc, q, m));
    if !sub(f, &frob(&x, n), &x).is_empty() {
        return false;
    }
    prime_divisors(n).into_iter().all(|l| {
        let g = gcd(f, m, &sub(f, &frob(&x, n / l), &x));
        g.len() == 1
    })
}

/// Monic irreducible polynomials of degree `deg`, in increasing order of
/// their lower coefficients read as base-`q` digits.
pub fn monic_irreducibles(f: &FieldCtx, deg: usize) -> Vec<Poly> {
    let q = f.q() as u64;
    let count = q.pow(deg as u32);
    (0..count)
        .filter_map(|low| {
            let mut m: Poly = (0..deg)
                .map(|i| ((low / q.pow(i as u32)) % q) as Fq)
                .collect();
            m.push(1);
            is_irreducible(f, &m).then_some(m)
        })
        .collect()
}

/// Renders a polynomial in the variable `t`.
pub fn format(f: &FieldCtx, a: &[Fq]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = f.format(c);
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        terms.push(match (i, c) {
            (0, _) => coef,
            (_, 1) => mono,
            _ => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses `c*t^k+...` terms; coefficients use [`FieldCtx::parse`] syntax,
/// and `-c` is accepted for the additive inverse.
pub fn parse(f: &FieldCtx, s: &str) -> Option<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut out: Poly = Vec::new();
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, term.trim_start_matches('+').to_string()),
        };
        let (coef, mono) = if let Some(idx) = body.find('t') {
            let c = body[..idx].trim_end_matches('*');
            let c = if c.is_empty() { 1 } else { f.parse(c)? };
            (c, &body[idx..])
        } else {
            (f.parse(&body)?, "")
        };
        let k: usize = if mono.is_empty() {
            0
        } else if mono == "t" {
            1
        } else {
            mono.strip_prefix("t^")?.parse().ok()?
        };
        let c = if neg { f.neg(coef) } else { coef };
        let mut term_poly = vec![0; k + 1];
        term_poly[k] = c;
        out = add(f, &out, &term_poly);
    }
    Some(out)
}
