//! Shared fixtures and the pass/fail reporter for the acceptance run.

use bundles_p1::{parse_point, DivisorSpec, Moduli};
use hecke_edges::HeckeAt;
use graph_core::{BuildSpec, BuilderKind, HeckeGraph};
use ring_arith::{poly, FieldCtx, Point};
use std::sync::Arc;
use std::time::{Duration, Instant};

pub type Outcome = Result<String, String>;

pub struct Report {
    pub id: u32,
    pub title: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub estimate: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        let (tag, msg) = match &self.outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        let slow = if self.elapsed > self.estimate { " [over estimate]" } else { "" };
        format!(
            "criterion {} {tag}: {} ({:.2?}, estimate {:?}{slow}) {msg}",
            self.id, self.title, self.elapsed, self.estimate
        )
    }
}

pub fn run(id: u32, title: &'static str, estimate_secs: u64, f: impl FnOnce() -> Outcome) -> Report {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
    Report { id, title, outcome, elapsed: start.elapsed(), estimate: Duration::from_secs(estimate_secs) }
}

/// Fails with `msg` unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn field(q: u64) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(q).unwrap())
}

/// The first monic irreducible of degree 2.
pub fn quadratic_point(f: &FieldCtx) -> Point {
    Point::Finite(poly::monic_irreducibles(f, 2).remove(0))
}

pub fn point(f: &FieldCtx, s: &str) -> Point {
    parse_point(f, s).unwrap()
}

pub fn spec(q: u64, div: &str, x: &str, n_max: u32, builder: BuilderKind) -> BuildSpec {
    let field = field(q);
    let divisor = DivisorSpec::parse(&field, div).unwrap();
    let x = point(&field, x);
    BuildSpec { field, divisor, x, n_max, builder }
}

pub fn graph(q: u64, div: &str, x: &str, n_max: u32) -> HeckeGraph {
    HeckeGraph::build(&spec(q, div, x, n_max, BuilderKind::Hybrid)).unwrap()
}

/// One entry of the degree and oracle matrix.
#[derive(Clone)]
pub struct Config {
    pub field: Arc<FieldCtx>,
    pub divisor: DivisorSpec,
    pub x: Point,
}

impl Config {
    pub fn hecke(&self) -> Arc<HeckeAt> {
        let m = Moduli::new(self.field.clone(), self.divisor.clone(), Some(self.x.clone())).unwrap();
        Arc::new(HeckeAt::new(Arc::new(m)).unwrap())
    }

    /// Two gaps past the deep threshold.
    pub fn n_max(hecke: &HeckeAt) -> u32 {
        (hecke.deep_threshold() + 2).max(1) as u32
    }

    pub fn describe(&self) -> String {
        format!("q={} D=[{}] x={}", self.field.q(), self.divisor.format(&self.field), self.x.format(&self.field))
    }
}

/// Every configuration with `q ≤ 4`, `deg x ≤ 2` and `deg D ≤ 3`.
pub fn configuration_matrix() -> Vec<Config> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4] {
        let f = field(q);
        let t = point(&f, "x");
        let y = point(&f, "y");
        let p2 = quadratic_point(&f);
        let inf = Point::Infinity;
        let d = |e: &[(&Point, usize)]| DivisorSpec::new(e.iter().map(|(p, k)| ((*p).clone(), *k)).collect()).unwrap();
        let at_t = vec![
            d(&[]),
            d(&[(&t, 1)]),
            d(&[(&y, 1)]),
            d(&[(&t, 2)]),
            d(&[(&y, 2)]),
            d(&[(&t, 3)]),
            d(&[(&t, 1), (&y, 1)]),
            d(&[(&t, 2), (&y, 1)]),
            d(&[(&t, 1), (&y, 2)]),
            d(&[(&t, 1), (&y, 1), (&inf, 1)]),
            d(&[(&p2, 1)]),
            d(&[(&t, 1), (&p2, 1)]),
            d(&[(&y, 1), (&p2, 1)]),
        ];
        let at_p2 = vec![d(&[]), d(&[(&p2, 1)]), d(&[(&t, 1)]), d(&[(&p2, 1), (&t, 1)]), d(&[(&t, 1), (&y, 1)])];
        for (x, divisors) in [(t.clone(), at_t), (p2.clone(), at_p2)] {
            for divisor in divisors {
                out.push(Config { field: f.clone(), divisor, x: x.clone() });
            }
        }
    }
    out
}
