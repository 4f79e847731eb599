#![allow(dead_code)]
use bundles_p1::{parse_point, DivisorSpec};
use graph_core::{BuildSpec, BuilderKind, HeckeGraph};
use num_rational::BigRational;
use ring_arith::FieldCtx;
use spectral::rat;
use std::sync::Arc;

pub fn graph(q: u64, div: &str, x: &str, n_max: u32) -> HeckeGraph {
    let field = Arc::new(FieldCtx::new(q).unwrap());
    let divisor = if div.is_empty() { DivisorSpec::zero() } else { DivisorSpec::parse(&field, div).unwrap() };
    let x = parse_point(&field, x).unwrap();
    HeckeGraph::build(&BuildSpec { field, divisor, x, n_max, builder: BuilderKind::Hybrid }).unwrap()
}

pub fn at(g: &HeckeGraph, gap: u32, layer: &str) -> usize {
    (0..g.len())
        .find(|&v| g.vertices[v].gap == gap && g.vertices[v].layer.to_string() == layer)
        .unwrap_or_else(|| panic!("no vertex {layer} at gap {gap}"))
}

pub fn pow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(rat(1), |acc, _| acc * x)
}

/// Values of the eigenform on the ramified graph of `D = [x]` seeded by
/// `a` at the bottom vertex: `(finite position, infinite position)` at gap `n`.
pub fn closed_form(q: i64, lambda: &BigRational, a: &BigRational, n: u32) -> (BigRational, BigRational) {
    let ratio = rat(q) / lambda;
    let finite = a * pow(&ratio, n);
    let mut sum = rat(0);
    for i in 0..n {
        sum += pow(lambda, i) * pow(&ratio, n - i);
    }
    let inf = a * pow(lambda, n) - a * rat(q - 1) * sum;
    (finite, inf)
}
