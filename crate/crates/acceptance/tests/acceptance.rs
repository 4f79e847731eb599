//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

use acceptance::*;
use bundles_p1::{fiber_count, DivisorSpec, XPosition};
use graph_core::{check_covering, split_components, BuilderKind, CoveringOutcome, Forgetful, HeckeGraph, Monodromy, Step};
use hecke_edges::{q_binomial, q_binomial_by_subsets};
use num_rational::BigRational;
use rayon::prelude::*;
use ring_arith::group::local_p1;
use ring_arith::{enumerate_group, group_order, p1_count, poly, JetRing, LevelRing, Point, SubgroupSpec, SubgroupTag};
use spectral::{dim_formula, rat, FormulaCase, FormulaParams, LayeredDecomposition, Propagation, QPoly, Rationals};
use std::collections::{BTreeMap, HashMap};

fn pow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(rat(1), |acc, _| acc * x)
}

/// `x` is the position of `v` at the Hecke point, `None` for `∞`.
fn position(g: &HeckeGraph, v: usize) -> Option<u32> {
    match g.vertices[v].layer.position {
        Some(XPosition::Finite(c)) => Some(c),
        _ => None,
    }
}

fn out_map(g: &HeckeGraph, v: usize) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for e in g.out_edges(v) {
        *m.entry(e.dst).or_default() += e.mult;
    }
    m
}

fn worked_example(q: u64) -> Result<usize, String> {
    let n_max = 6;
    let g = HeckeGraph::build(&spec(q, "x:1", "x", n_max, BuilderKind::Bruteforce)).map_err(|e| e.to_string())?;
    let f = g.moduli().field().clone();
    let mut at: HashMap<(u32, Option<u32>), usize> = HashMap::new();
    for v in 0..g.len() {
        at.insert((g.vertices[v].gap, position(&g, v)), v);
    }
    let bottom: Vec<usize> = (0..g.len()).filter(|&v| g.vertices[v].gap == 0).collect();
    ensure(bottom.len() == 1, || format!("q={q}: {} vertices at gap 0", bottom.len()))?;
    let c0 = bottom[0];
    for n in 1..=n_max {
        let count = g.vertices.iter().filter(|v| v.gap == n).count();
        ensure(count as u64 == q + 1, || format!("q={q}: {count} vertices at gap {n}"))?;
    }
    let c = |n: u32, p: Option<u32>| at[&(n, p)];
    let up = |n: u32| -> BTreeMap<usize, u64> {
        let mut m = BTreeMap::new();
        if n < n_max {
            m.insert(c(n + 1, None), 1);
            for u in f.units() {
                m.insert(c(n + 1, Some(u)), 1);
            }
        }
        m
    };
    let mut checked = 0;
    for v in 0..g.len() {
        let n = g.vertices[v].gap;
        let expected = match (n, position(&g, v)) {
            (0, _) => up(0),
            (_, None) => up(n),
            (1, Some(_)) => BTreeMap::from([(c0, q)]),
            (_, Some(_)) => BTreeMap::from([(c(n - 1, Some(0)), q)]),
        };
        let found = out_map(&g, v);
        ensure(found == expected, || format!("q={q}: vertex {v} at gap {n}: {found:?} != {expected:?}"))?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for q in [2, 3, 4] {
        total += worked_example(q)?;
    }
    Ok(format!("{total} vertices matched exactly for q = 2, 3, 4"))
}

fn criterion_2() -> Outcome {
    let mut vertices = 0;
    let matrix = configuration_matrix();
    for cfg in &matrix {
        let hecke = cfg.hecke();
        let big_q = (cfg.field.q() as u64).pow(cfg.x.degree() as u32);
        let law = if hecke.ramification() >= 1 { big_q } else { big_q + 1 };
        ensure(hecke.degree() == law, || format!("{}: {} cosets, expected {law}", cfg.describe(), hecke.degree()))?;
        let g = HeckeGraph::build_with(hecke.clone(), Config::n_max(&hecke), BuilderKind::Hybrid)
            .map_err(|e| format!("{}: {e}", cfg.describe()))?;
        let bad = g.degree_violations();
        ensure(bad.is_empty(), || format!("{}: out-degree violations {bad:?}", cfg.describe()))?;
        vertices += (0..g.len()).filter(|&v| !g.is_boundary(v)).count();
    }
    Ok(format!("{} configurations, {vertices} non-stub vertices", matrix.len()))
}

fn criterion_3() -> Outcome {
    let matrix = configuration_matrix();
    let mut compared = 0;
    for cfg in &matrix {
        let hecke = cfg.hecke();
        let thr = hecke.deep_threshold();
        let deep: Vec<_> = hecke
            .moduli()
            .enumerate(Config::n_max(&hecke))
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|v| v.gap as i64 > thr)
            .collect();
        ensure(!deep.is_empty(), || format!("{}: no deep vertices in the window", cfg.describe()))?;
        let mismatch = deep.par_iter().find_any(|v| {
            let rule = hecke.neighbors_cusp_rule(v);
            let brute = hecke.neighbors_bruteforce(v);
            !matches!((rule, brute), (Ok(a), Ok(b)) if a == b)
        });
        if let Some(v) = mismatch {
            return Err(format!("{}: builders differ at gap {}", cfg.describe(), v.gap));
        }
        compared += deep.len();
    }
    Ok(format!("{} configurations, {compared} deep vertices identical", matrix.len()))
}

fn fiber_sizes(q: u64, div: &str, base_div: &str, x: &str, n_max: u32) -> Result<(), String> {
    let upper = graph(q, div, x, n_max);
    let base = graph(q, base_div, x, n_max);
    let map = Forgetful::new(&upper, &base).map_err(|e| e.to_string())?;
    let m = upper.moduli();
    let points: Vec<Point> = base.moduli().divisor().entries().iter().map(|(p, _)| p.clone()).collect();
    let (rest, part) = m.divisor().split(&points);
    let expected = fiber_count(q, &rest, &part);
    let lo = (upper.hecke.deep_threshold() + 1) as u32;
    let mut sizes: BTreeMap<usize, u128> = BTreeMap::new();
    for (v, img) in map.image.iter().enumerate() {
        if upper.vertices[v].gap >= lo {
            *sizes.entry(img.ok_or("vertex without image")?).or_default() += 1;
        }
    }
    ensure(!sizes.is_empty(), || "empty region".into())?;
    if let Some((w, s)) = sizes.iter().find(|(_, &s)| s != expected) {
        return Err(format!("q={q} D={div} over {base_div}: fiber over {w} has {s}, expected {expected}"));
    }
    // absolute counts per gap, i.e. over the level-free base
    let per_gap = fiber_count(q, m.divisor(), &DivisorSpec::zero());
    for n in lo..=n_max {
        let c = upper.vertices.iter().filter(|v| v.gap == n).count() as u128;
        ensure(c == per_gap, || format!("q={q} D={div}: {c} vertices at gap {n}, expected {per_gap}"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let upper = graph(2, "x:1,y:1", "x", 6);
    let base = graph(2, "x:1", "x", 6);
    let witness = match check_covering(&upper, &base).map_err(|e| e.to_string())? {
        CoveringOutcome::Covering(w) => w,
        CoveringOutcome::Fails(c) => return Err(format!("covering fails: {c:?}")),
    };
    ensure(witness.degree == 3, || format!("covering degree {}", witness.degree))?;
    let r = split_components(&upper, &base).map_err(|e| e.to_string())?;
    ensure(r.expected == 3 && r.holds(), || format!("splitting: {r:?}"))?;
    let mut component = HashMap::new();
    for (i, c) in r.upper_components.iter().flatten().enumerate() {
        for &v in c {
            component.insert(v, i);
        }
    }
    let cross = upper
        .edges
        .iter()
        .filter(|e| matches!((component.get(&e.src), component.get(&e.dst)), (Some(a), Some(b)) if a != b))
        .count();
    ensure(cross == 0, || format!("{cross} edges between components"))?;
    let cases = [
        (2, "x:1,y:1", "x:1", "x", 6),
        (2, "x:1,y:1", "y:1", "y", 6),
        (2, "y:1", "", "x", 6),
        (3, "y:1", "", "x", 5),
        (3, "y:2", "", "x", 5),
        (2, "x:1,y:2", "x:1", "x", 6),
        (3, "x:1,y:1", "x:1", "x", 5),
        (4, "x:1,y:1", "x:1", "x", 5),
        (2, "x:1,y:1,inf:1", "x:1,y:1", "x", 6),
    ];
    for (q, d, d2, x, n) in cases {
        fiber_sizes(q, d, d2, x, n)?;
    }
    Ok(format!("degree 3 covering, {} isomorphic components per base component, {} fiber laws", r.expected, cases.len()))
}

fn criterion_5() -> Outcome {
    let n_max = 5;
    let upper = graph(4, "x:1,y:1", "x", n_max);
    let base = graph(4, "x:1", "x", n_max);
    let m = Monodromy::new(&upper, &base).map_err(|e| e.to_string())?;
    let mut transported = 0;
    for n in 1..n_max {
        let c = m.check_type_ii(n).map_err(|e| e.to_string())?;
        ensure(c.checked > 0 && c.failures.is_empty(), || format!("transport rule at gap {n}: {:?}", c.failures))?;
        transported += c.checked;
    }
    let find = |gap: u32, layer: &str| -> Result<usize, String> {
        (0..base.len())
            .find(|&v| base.vertices[v].gap == gap && base.vertices[v].layer.to_string() == layer)
            .ok_or_else(|| format!("no base vertex {layer}"))
    };
    // (3,∞) → (4,c) → (3,0) ← (4,c') ← (3,∞)
    let w0 = find(3, "cusp3@inf1")?;
    let walk = [
        Step { to: find(4, "cusp4@1")?, forward: true },
        Step { to: find(3, "cusp3@0")?, forward: true },
        Step { to: find(4, "cusp4@2")?, forward: false },
        Step { to: w0, forward: false },
    ];
    let v0 = m.fiber(w0)[0];
    let lift = m.lift(v0, &walk).map_err(|e| e.to_string())?;
    let t = m.discrepancy(v0, lift.end()).map_err(|e| e.to_string())?;
    ensure(t != 1, || "the example loop lifts to a closed loop".into())?;
    let loops = m.fundamental_loops().map_err(|e| e.to_string())?;
    ensure(loops.loops > 0 && loops.nontrivial(), || format!("{loops:?}"))?;
    let f = upper.moduli().field();
    let values: Vec<String> = loops.values.iter().map(|&t| f.format(t)).collect();
    Ok(format!(
        "example loop t = {}, {} fundamental loops with t in {{{}}}, {transported} transport edges",
        f.format(t),
        loops.loops,
        values.join(" ")
    ))
}

fn lambdas() -> Vec<BigRational> {
    let mut out: Vec<BigRational> = (-6..=8).filter(|&n| n != 0).map(rat).collect();
    out.extend([(1, 2), (-3, 2), (7, 3), (5, 4), (-9, 5), (11, 7), (-2, 9), (13, 4)].iter().map(|&(a, b)| BigRational::new(a.into(), b.into())));
    out
}

fn criterion_6() -> Outcome {
    let p = |q, r, d, other: Vec<(u32, u32)>| FormulaParams { q, x_degree: r, ramification: d, other, class_number: 1, genus: 0 };
    let cases = [
        (2, "", "x", 6, p(2, 1, 0, vec![]), FormulaCase::UnramifiedAtX),
        (3, "", "x", 6, p(3, 1, 0, vec![]), FormulaCase::UnramifiedAtX),
        (2, "", "t^2+t+1", 9, p(2, 2, 0, vec![]), FormulaCase::UnramifiedAtX),
        (2, "y:1", "x", 6, p(2, 1, 0, vec![(1, 1)]), FormulaCase::UnramifiedAtX),
        (3, "y:1", "x", 5, p(3, 1, 0, vec![(1, 1)]), FormulaCase::UnramifiedAtX),
        (2, "x:1", "x", 7, p(2, 1, 1, vec![]), FormulaCase::RamifiedAtXOnly),
        (3, "x:1", "x", 6, p(3, 1, 1, vec![]), FormulaCase::RamifiedAtXOnly),
        (2, "x:2", "x", 8, p(2, 1, 2, vec![]), FormulaCase::RamifiedAtXOnly),
        (2, "x:1,y:1", "x", 6, p(2, 1, 1, vec![(1, 1)]), FormulaCase::Mixed),
    ];
    let configs = cases.len();
    let mut tested = 0;
    for (q, d, x, n, params, case) in cases {
        let g = graph(q, d, x, n);
        let l = LayeredDecomposition::new(&g).map_err(|e| e.to_string())?;
        let (sup, stationary) = l.sup_layer();
        let formula = dim_formula(&params, case).map_err(|e| e.to_string())?.value;
        ensure(stationary && rat(sup as i64) == formula, || {
            format!("q={q} D={d} x={x}: sup |layer| = {sup} (stationary {stationary}), formula {formula}")
        })?;
        ensure(l.propagation() != Propagation::Not, || format!("q={q} D={d}: not propagative"))?;
        let spectrum = l.nucleus_spectrum();
        let mut count = 0;
        for lam in lambdas() {
            if spectrum.rational_roots.contains(&lam) {
                continue;
            }
            let b = l.dim_bounds(&Rationals, &lam).map_err(|e| e.to_string())?;
            ensure(b.lower <= b.exact && b.exact <= b.upper && b.exact == b.lower, || {
                format!("q={q} D={d} λ={lam}: {b:?}")
            })?;
            count += 1;
        }
        ensure(count >= 20, || format!("only {count} values of λ outside the nucleus spectrum"))?;
        tested += count;
    }
    Ok(format!("{configs} configurations match the formulas, exact = lower at {tested} (config, λ) pairs"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3, 4, 5] {
        let g = graph(q, "x:1", "x", 13);
        let l = LayeredDecomposition::new(&g).map_err(|e| e.to_string())?;
        let f = g.moduli().field().clone();
        let bottom = (0..g.len()).find(|&v| g.vertices[v].gap == 0).unwrap();
        for lam in [2, 3, 5, 7, q as i64] {
            let lambda = rat(lam);
            let a = rat(1);
            let p = l.propagate(&Rationals, &lambda, &[(bottom, a.clone())], 12).map_err(|e| e.to_string())?;
            let ratio = rat(q as i64) / &lambda;
            for v in 0..g.len() {
                let n = g.vertices[v].gap;
                if n == 0 || n > 12 {
                    continue;
                }
                let expected = match position(&g, v) {
                    Some(_) => &a * pow(&ratio, n),
                    None => {
                        let sum: BigRational = (0..n).map(|i| pow(&lambda, i) * pow(&ratio, n - i)).sum();
                        &a * pow(&lambda, n) - &a * rat(q as i64 - 1) * sum
                    }
                };
                ensure(p.values[v].as_ref() == Some(&expected), || {
                    format!("q={q} λ={lam} gap {n} {}: {:?} != {expected}", g.vertices[v].layer, p.values[v])
                })?;
                checked += 1;
            }
            ensure(f.q() as u64 == q, || "field mismatch".into())?;
        }
    }
    Ok(format!("{checked} propagated values equal the closed forms"))
}

fn criterion_8() -> Outcome {
    let g = graph(2, "x:1", "x", 10);
    let l = LayeredDecomposition::new(&g).map_err(|e| e.to_string())?;
    let lambda = rat(5);
    let dim = l.dim_bounds(&Rationals, &lambda).map_err(|e| e.to_string())?.exact;
    ensure(dim == 1, || format!("dim of the λ-eigenspace is {dim}"))?;
    let core = l.core_gap(1);
    let support: Vec<usize> = (0..l.len()).filter(|&v| !l.boundary[v] && l.gap[v] as i64 <= core).collect();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for trial in 0..5 {
        let mut g_vals = Vec::new();
        for &v in &support {
            if next() % 2 == 0 {
                let num = (next() % 19) as i64 - 9;
                let den = (next() % 4) as i64 + 1;
                g_vals.push((v, BigRational::new(num.into(), den.into())));
            }
        }
        let r = l.solve_resolvent(&Rationals, &lambda, &g_vals).map_err(|e| e.to_string())?;
        ensure(r.dim == 1, || format!("trial {trial}: homogeneous dimension {}", r.dim))?;
        for v in (0..l.len()).filter(|&v| !l.boundary[v]) {
            let phi: BigRational = l.out[v].iter().map(|&(w, m)| rat(m) * &r.particular[w]).sum();
            let gv = g_vals.iter().find(|(u, _)| *u == v).map_or(rat(0), |(_, x)| x.clone());
            ensure(phi - &lambda * &r.particular[v] == gv, || format!("trial {trial}: residual at vertex {v}"))?;
        }
    }
    let mut gen = Vec::new();
    for k in 1..=3 {
        let d = l.window_dim(&Rationals, &lambda, k).map_err(|e| e.to_string())?;
        ensure(d == k * dim, || format!("dim ker(Φ-λ)^{k} = {d}"))?;
        gen.push(d);
    }
    Ok(format!("5 right-hand sides solved with 1-dimensional fibres; generalized kernels {gen:?}"))
}

fn identities() -> Result<String, String> {
    let mut binomials = 0;
    for big_q in [2u128, 3, 4, 5] {
        for n in 0..=6 {
            for r in 0..=n {
                let (a, b) = (q_binomial(n, r, big_q), q_binomial_by_subsets(n, r, big_q));
                ensure(a == b, || format!("[{n} {r}]_{big_q}: {a} vs {b}"))?;
                binomials += 1;
            }
        }
    }
    let mut rings = 0;
    let mut groups = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = field(q);
        for r in 1..=16usize {
            for d in 1..=16usize {
                if (q as f64).powi((r * d) as i32) > 65536.0 {
                    continue;
                }
                let Some(p) = poly::monic_irreducibles(&f, r).into_iter().next() else { continue };
                let point = Point::Finite(p);
                let ring = JetRing::new(f.clone(), point.clone(), d).map_err(|e| e.to_string())?;
                let units = ring.units().count() as u128;
                let qr = (q as u128).pow(r as u32);
                ensure(units == (qr - 1) * qr.pow(d as u32 - 1), || format!("units of q={q} r={r} d={d}: {units}"))?;
                rings += 1;
                let level = LevelRing::new(f.clone(), &[(point, d)]).map_err(|e| e.to_string())?;
                groups += check_groups(&level, &ring)?;
            }
        }
    }
    for (q, pts) in [(2u64, vec![("t", 1), ("t+1", 1)]), (3, vec![("t", 2), ("t+1", 1)]), (2, vec![("t", 1), ("inf", 1)])] {
        let f = field(q);
        let pts: Vec<(Point, usize)> = pts.iter().map(|&(s, d)| (Point::parse(&f, s).unwrap(), d)).collect();
        let level = LevelRing::new(f.clone(), &pts).map_err(|e| e.to_string())?;
        for tag in [SubgroupTag::Borel, SubgroupTag::TkLtimesU, SubgroupTag::U, SubgroupTag::Scalars, SubgroupTag::Tk] {
            for spec in [SubgroupSpec::gl(tag), SubgroupSpec::pgl(tag)] {
                let order = group_order(&level, spec);
                let elems = enumerate_group(&level, spec).map_err(|e| e.to_string())?;
                ensure(elems.len() as u128 == order, || format!("{spec:?} on {} points", pts.len()))?;
                groups += 1;
            }
        }
    }
    Ok(format!("{binomials} binomial identities, {rings} unit counts, {groups} group orders"))
}

/// Closed-form orders against counts made without the enumerators where
/// the matrix space is small, and against the enumerators elsewhere.
fn check_groups(level: &LevelRing, ring: &JetRing) -> Result<usize, String> {
    let size = ring.size() as u128;
    let mut checked = 0;
    let units = ring.units().count() as u128;
    if size.pow(4) <= 1 << 20 {
        let elems: Vec<_> = ring.elements().collect();
        let mut invertible = 0u128;
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    for &d in &elems {
                        if ring.is_unit(ring.sub(ring.mul(a, d), ring.mul(b, c))) {
                            invertible += 1;
                        }
                    }
                }
            }
        }
        ensure(invertible == group_order(level, SubgroupSpec::gl(SubgroupTag::GL2)), || {
            format!("GL2 of a ring of size {size}: {invertible}")
        })?;
        ensure(invertible / units == group_order(level, SubgroupSpec::pgl(SubgroupTag::GL2)), || "PGL2".into())?;
        let lines = local_p1(ring).len() as u128;
        ensure(lines == p1_count(level), || format!("P1 of a ring of size {size}: {lines}"))?;
        checked += 3;
    }
    for tag in [SubgroupTag::GL2, SubgroupTag::Borel, SubgroupTag::TkLtimesU, SubgroupTag::U, SubgroupTag::Scalars, SubgroupTag::Tk] {
        for spec in [SubgroupSpec::gl(tag), SubgroupSpec::pgl(tag)] {
            let order = group_order(level, spec);
            if order > 1 << 12 {
                continue;
            }
            let elems = enumerate_group(level, spec).map_err(|e| e.to_string())?;
            ensure(elems.len() as u128 == order, || format!("{spec:?} for a ring of size {size}"))?;
            ensure(elems.iter().all(|m| level.is_invertible(m)), || format!("{spec:?} holds a singular matrix"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn families() -> Result<String, String> {
    let g = graph(2, "x:1", "x", 6);
    let l = LayeredDecomposition::new(&g).map_err(|e| e.to_string())?;
    let depth = 4;
    let samples: Vec<BigRational> =
        (0..2 * (l.prime.len() + depth) + 4).map(|i| BigRational::new((2 * i as i64 + 5).into(), 2.into())).collect();
    let seed = [(0usize, rat(1))];
    let find = |n: u32, p: Option<u32>| (0..g.len()).find(|&v| g.vertices[v].gap == n && position(&g, v) == p).unwrap();
    let x = QPoly::x();
    let mut held_out = 0;
    for n in 1..=3u32 {
        let fam = l.eigenform_family(find(n, Some(1)), &seed, &samples, depth).map_err(|e| e.to_string())?;
        ensure(fam.numerator == QPoly::constant(rat(1 << n)) && fam.denominator == x.pow(n), || {
            format!("c_({n},1) = ({}) / ({})", fam.numerator, fam.denominator)
        })?;
        ensure(fam.growth() <= depth as i64, || "growth".into())?;
        held_out += fam.held_out;
    }
    let fam = l.eigenform_family(find(1, None), &seed, &samples, depth).map_err(|e| e.to_string())?;
    ensure(fam.numerator == QPoly::from_ints(&[-2, 0, 1]) && fam.denominator == x, || {
        format!("c_(1,∞) = ({}) / ({})", fam.numerator, fam.denominator)
    })?;
    held_out += fam.held_out;
    Ok(format!("4 eigenform families interpolated, {held_out} held-out λ with zero residual"))
}

fn criterion_9() -> Outcome {
    Ok(format!("{}; {}", identities()?, families()?))
}

fn main() {
    let reports = vec![
        run(1, "worked-example graph", 1, criterion_1),
        run(2, "out-degree laws", 10, criterion_2),
        run(3, "cusp rule equals brute force", 60, criterion_3),
        run(4, "covering and splitting", 10, criterion_4),
        run(5, "torus monodromy", 10, criterion_5),
        run(6, "dimension theorems", 60, criterion_6),
        run(7, "closed-form eigenforms", 5, criterion_7),
        run(8, "resolvent and generalized eigenspaces", 10, criterion_8),
        run(9, "identities", 30, criterion_9),
    ];
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("acceptance: {} of {} criteria passed", reports.len() - failed, reports.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
