//! Spectral queries: nucleus spectrum, dimension bounds, propagation and
//! resolvent solutions, all reported as exact strings.

use crate::config::RunConfig;
use crate::error::CliError;
use graph_core::HeckeGraph;
use num_rational::BigRational;
use serde_json::{json, Value};
use spectral::{
    dim_formula, parse_rational, ExactScalar, Field, FormulaCase, FormulaParams, LayeredDecomposition, Propagation,
    QPoly, Quotient, Rationals,
};

pub fn parse_lambda(s: &str) -> Result<ExactScalar, CliError> {
    s.parse().map_err(|e| CliError::Config(format!("λ: {e}")))
}

/// `id=value` pairs.
pub fn parse_assignments(items: &[String], what: &str) -> Result<Vec<(usize, BigRational)>, CliError> {
    items
        .iter()
        .map(|s| {
            let bad = || CliError::Config(format!("{what} `{s}` is not of the form id=p/q"));
            let (id, v) = s.split_once('=').ok_or_else(bad)?;
            let id = id.trim().parse().map_err(|_| bad())?;
            let v = parse_rational(v.trim()).ok_or_else(bad)?;
            Ok((id, v))
        })
        .collect()
}

fn propagation_name(p: Propagation) -> &'static str {
    match p {
        Propagation::Not => "not",
        Propagation::Propagative => "propagative",
        Propagation::Strict => "strict",
    }
}

/// Lower-bound formula for the configuration on the projective line.
pub fn formula_for(config: &RunConfig) -> Result<(FormulaCase, BigRational), CliError> {
    let spec = &config.spec;
    let d_x = spec.divisor.multiplicity(&spec.x);
    let other: Vec<(u32, u32)> = spec
        .divisor
        .entries()
        .iter()
        .filter(|(p, _)| *p != spec.x)
        .map(|(p, k)| (p.degree() as u32, *k as u32))
        .collect();
    let case = match (d_x, other.is_empty()) {
        (0, _) => FormulaCase::UnramifiedAtX,
        (_, true) => FormulaCase::RamifiedAtXOnly,
        _ => FormulaCase::Mixed,
    };
    let params = FormulaParams {
        q: spec.field.q() as u64,
        x_degree: spec.x.degree() as u32,
        ramification: d_x as u32,
        other,
        class_number: 1,
        genus: 0,
    };
    Ok((case, dim_formula(&params, case)?.value))
}

fn vertex_row(g: &HeckeGraph, v: usize) -> Value {
    let vx = &g.vertices[v];
    json!({ "id": v, "gap": vx.gap, "layer": vx.layer.to_string(), "level": g.moduli().encode_level(&vx.level) })
}

pub fn spectrum(config: &RunConfig, g: &HeckeGraph) -> Result<Value, CliError> {
    let l = LayeredDecomposition::new(g)?;
    let s = l.nucleus_spectrum();
    let charpoly = QPoly::from_bigints(&s.charpoly);
    let (sup, stationary) = l.sup_layer();
    let (case, value) = formula_for(config)?;
    Ok(json!({
        "config": config.echo,
        "layers": {
            "nucleus": l.prime.len(),
            "sizes": l.sizes(),
            "fringe": l.fringe.len(),
            "sup": sup,
            "stationary": stationary,
            "propagation": propagation_name(l.propagation()),
            "violations": l.violations.len(),
        },
        "nucleus": {
            "charpoly": charpoly.to_string(),
            "coefficients": s.charpoly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "factors": s.factors.iter().map(|(p, k)| json!({ "factor": p.to_string(), "multiplicity": k })).collect::<Vec<_>>(),
            "rational_roots": s.rational_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "row_bound": s.row_bound,
            "degree": s.degree,
            "bound_holds": s.bound_holds(),
        },
        "formula": {
            "case": case.to_string(),
            "value": value.to_string(),
            "matches_sup": value == BigRational::from_integer((sup as i64).into()),
        },
    }))
}

pub fn dims(config: &RunConfig, g: &HeckeGraph, lambdas: &[ExactScalar]) -> Result<Value, CliError> {
    let l = LayeredDecomposition::new(g)?;
    let mut rows = Vec::new();
    for lam in lambdas {
        for (modulus, b) in l.dim_bounds_exact(lam)? {
            let mut row = json!({
                "lambda": lam.to_string(),
                "lower": b.lower,
                "upper": b.upper,
                "exact": b.exact,
                "window": b.window,
                "prime_kernel": b.prime_kernel,
                "stationary": b.stationary,
            });
            if let Some(m) = modulus {
                row["modulus"] = json!(m.to_string());
            }
            rows.push(row);
        }
    }
    Ok(json!({ "config": config.echo, "dims": rows }))
}

enum Scalars {
    Q(BigRational),
    Alg(Quotient, QPoly),
}

fn scalars(lam: &ExactScalar) -> Scalars {
    match lam {
        ExactScalar::Rational(r) => Scalars::Q(r.clone()),
        ExactScalar::Algebraic { modulus, residue } => Scalars::Alg(Quotient::new(modulus.clone()), residue.clone()),
    }
}

fn propagate_in<F: Field>(
    l: &LayeredDecomposition,
    g: &HeckeGraph,
    f: &F,
    lambda: &F::E,
    seed: &[(usize, BigRational)],
    depth: usize,
    show: impl Fn(&F::E) -> String,
) -> Result<Value, CliError> {
    let seed: Vec<(usize, F::E)> = seed.iter().map(|(v, x)| (*v, f.from_rational(x))).collect();
    let p = l.propagate(f, lambda, &seed, depth)?;
    let rows: Vec<Value> = p
        .values
        .iter()
        .enumerate()
        .filter_map(|(v, x)| {
            x.as_ref().map(|x| {
                let mut row = vertex_row(g, v);
                row["value"] = json!(show(x));
                row
            })
        })
        .collect();
    Ok(json!({ "depth": p.depth, "verified": p.verified, "values": rows }))
}

/// The bottom vertex, as the target of `--seed-a`.
fn bottom_vertex(g: &HeckeGraph) -> Result<usize, CliError> {
    let bottom: Vec<usize> = (0..g.len()).filter(|&v| g.vertices[v].gap == 0).collect();
    match bottom[..] {
        [v] => Ok(v),
        _ => Err(CliError::Config(format!(
            "gap 0 carries {} vertices; give seeds as --seed id=value",
            bottom.len()
        ))),
    }
}

pub fn propagate(
    config: &RunConfig,
    g: &HeckeGraph,
    lam: &ExactScalar,
    seed_a: Option<BigRational>,
    seeds: &[(usize, BigRational)],
    depth: usize,
) -> Result<Value, CliError> {
    let l = LayeredDecomposition::new(g)?;
    let mut seed = seeds.to_vec();
    if let Some(a) = seed_a {
        seed.push((bottom_vertex(g)?, a));
    }
    if let Some((v, _)) = seed.iter().find(|(v, _)| *v >= g.len()) {
        return Err(CliError::Config(format!("seed vertex {v} is not in the window")));
    }
    let mut out = match scalars(lam) {
        Scalars::Q(r) => propagate_in(&l, g, &Rationals, &r, &seed, depth, |x| x.to_string())?,
        Scalars::Alg(f, r) => propagate_in(&l, g, &f, &r, &seed, depth, |x| x.to_string())?,
    };
    out["config"] = json!(config.echo);
    out["lambda"] = json!(lam.to_string());
    Ok(out)
}

fn solve_in<F: Field>(
    l: &LayeredDecomposition,
    g: &HeckeGraph,
    f: &F,
    lambda: &F::E,
    rhs: &[(usize, BigRational)],
    show: impl Fn(&F::E) -> String,
) -> Result<Value, CliError> {
    let rhs: Vec<(usize, F::E)> = rhs.iter().map(|(v, x)| (*v, f.from_rational(x))).collect();
    let r = l.solve_resolvent(f, lambda, &rhs)?;
    let particular: Vec<Value> = r
        .particular
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let mut row = vertex_row(g, v);
            row["value"] = json!(show(x));
            row
        })
        .collect();
    let homogeneous: Vec<Vec<String>> = r.homogeneous.iter().map(|h| h.iter().map(&show).collect()).collect();
    Ok(json!({ "dim": r.dim, "particular": particular, "homogeneous": homogeneous }))
}

pub fn solve(config: &RunConfig, g: &HeckeGraph, lam: &ExactScalar, rhs: &[(usize, BigRational)]) -> Result<Value, CliError> {
    let l = LayeredDecomposition::new(g)?;
    let mut out = match scalars(lam) {
        Scalars::Q(r) => solve_in(&l, g, &Rationals, &r, rhs, |x| x.to_string())?,
        Scalars::Alg(f, r) => solve_in(&l, g, &f, &r, rhs, |x| x.to_string())?,
    };
    out["config"] = json!(config.echo);
    out["lambda"] = json!(lam.to_string());
    Ok(out)
}
