//! Closed-form lower bounds for eigenspace dimensions.

use crate::error::SpectralError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaCase {
    UnramifiedAtX,
    RamifiedAtXOnly,
    Mixed,
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaCase::UnramifiedAtX => "unramified_at_x",
            FormulaCase::RamifiedAtXOnly => "ramified_at_x_only",
            FormulaCase::Mixed => "mixed",
        })
    }
}

impl FromStr for FormulaCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unramified_at_x" => Ok(FormulaCase::UnramifiedAtX),
            "ramified_at_x_only" => Ok(FormulaCase::RamifiedAtXOnly),
            "mixed" => Ok(FormulaCase::Mixed),
            _ => Err(format!("unknown case `{s}`")),
        }
    }
}

/// Data entering the count: `other` lists `(deg y, multiplicity)` for the
/// points of the level away from `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaParams {
    pub q: u64,
    pub x_degree: u32,
    pub ramification: u32,
    pub other: Vec<(u32, u32)>,
    pub class_number: u64,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: BigRational,
    pub factors: Vec<(String, BigRational)>,
}

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Lower bound `sup |Γᵢ|` predicted for the case, with its factors.
pub fn dim_formula(p: &FormulaParams, case: FormulaCase) -> Result<FormulaValue, SpectralError> {
    let bad = |m: &str| Err(SpectralError::Invalid(m.to_string()));
    if p.q < 2 || p.x_degree == 0 || p.class_number == 0 {
        return bad("q ≥ 2, deg x ≥ 1 and h ≥ 1 are required");
    }
    if p.other.iter().any(|&(deg, mult)| deg == 0 || mult == 0) {
        return bad("level points need positive degree and multiplicity");
    }
    match case {
        FormulaCase::UnramifiedAtX if p.ramification != 0 => return bad("unramified case needs d_x = 0"),
        FormulaCase::RamifiedAtXOnly if p.ramification == 0 || !p.other.is_empty() => {
            return bad("ramified-only case needs d_x ≥ 1 and no other points")
        }
        FormulaCase::Mixed if p.ramification == 0 || p.other.is_empty() => {
            return bad("mixed case needs d_x ≥ 1 and other points")
        }
        _ => {}
    }
    let q = p.q as u128;
    let r = p.x_degree;
    let mut factors = vec![("deg x".to_string(), int(r as u128)), ("h".to_string(), int(p.class_number as u128))];
    let mut local = BigRational::one();
    for &(deg, mult) in &p.other {
        let v = int(q.pow(2 * deg * (mult - 1)) * (q.pow(2 * deg) - 1));
        factors.push((format!("point deg {deg} mult {mult}"), v.clone()));
        local *= v;
    }
    let torus = BigRational::new(BigInt::one(), BigInt::from(q - 1));
    match case {
        FormulaCase::UnramifiedAtX => {
            if !p.other.is_empty() {
                factors.push(("1/(q-1)".to_string(), torus.clone()));
                local *= torus;
            }
        }
        _ => {
            let d = p.ramification;
            let v = int((q.pow(r) - 1) * q.pow(r * (d - 1))) * torus;
            factors.push(("x".to_string(), v.clone()));
            local *= v;
        }
    }
    let value = factors[..2].iter().fold(local, |acc, (_, v)| acc * v);
    Ok(FormulaValue { value, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;

    fn params(q: u64, r: u32, d: u32, other: Vec<(u32, u32)>) -> FormulaParams {
        FormulaParams { q, x_degree: r, ramification: d, other, class_number: 1, genus: 0 }
    }

    #[test]
    fn reference_values() {
        assert_eq!(dim_formula(&params(2, 1, 1, vec![]), FormulaCase::RamifiedAtXOnly).unwrap().value, rat(1));
        assert_eq!(dim_formula(&params(2, 2, 0, vec![]), FormulaCase::UnramifiedAtX).unwrap().value, rat(2));
        assert_eq!(dim_formula(&params(2, 1, 1, vec![(1, 1)]), FormulaCase::Mixed).unwrap().value, rat(3));
        assert_eq!(dim_formula(&params(3, 1, 0, vec![(1, 2)]), FormulaCase::UnramifiedAtX).unwrap().value, rat(36));
        assert_eq!(dim_formula(&params(2, 1, 2, vec![]), FormulaCase::RamifiedAtXOnly).unwrap().value, rat(2));
    }

    #[test]
    fn inconsistent_case_is_rejected() {
        assert!(dim_formula(&params(2, 1, 0, vec![]), FormulaCase::Mixed).is_err());
        assert!(dim_formula(&params(2, 1, 1, vec![(1, 1)]), FormulaCase::RamifiedAtXOnly).is_err());
        assert!(dim_formula(&params(2, 1, 1, vec![]), FormulaCase::UnramifiedAtX).is_err());
    }
}
