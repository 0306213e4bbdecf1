//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use leavitt_lab::graph::{classify_graph, explicit_paths, Graph, Path, Verdict};
use leavitt_lab::lpa::{basis_monomials, normalize_terms, Coeff, Element, ElementSampler, Monomial, RewriteStrategy};
use leavitt_lab::matricial::decompose_0n;
use leavitt_lab::pnorm::{
    element_norm_acyclic, largest_singular_value, phi_n_numeric_check, power_lower_bound, spatial_rep_acyclic,
    EstimatorOptions, ACCEPT_TOL,
};
use leavitt_lab::spi::{cohn_embedding, equal_length_closed_paths, spi_witness};
use leavitt_lab::transforms::reachable_subgraph;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn trichotomy() -> Check {
    let fixtures: Vec<(&str, Arc<Graph>, Verdict)> = vec![
        ("R_1", rose(1), Verdict::NotSimple),
        ("R_2", rose(2), Verdict::SimplePurelyInfinite),
        ("R_3", rose(3), Verdict::SimplePurelyInfinite),
        ("A_2", a2(), Verdict::SimpleAcyclic),
        ("A_3", a3(), Verdict::SimpleAcyclic),
        ("A_2 + A_2", two_a2(), Verdict::NotSimple),
        ("R_2 + vertex", rose2_and_vertex(), Verdict::NotSimple),
        ("triangle with chord", triangle(), Verdict::SimplePurelyInfinite),
        ("loop without exit and sink", loop_and_sink(), Verdict::NotSimple),
        ("infinite emitter", omega_graph(), Verdict::SimplePurelyInfinite),
        ("random a", random_a(), Verdict::NotSimple),
        ("random b", random_b(), Verdict::NotSimple),
    ];
    for (name, g, expected) in &fixtures {
        let c = classify_graph(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.verdict == *expected, || format!("{name}: got {:?}, expected {expected:?}", c.verdict))?;
        ensure(c.recheck(g), || format!("{name}: classification witness does not recheck"))?;
        let oracle = match brute_force_verdict(g) {
            (false, _) => Verdict::NotSimple,
            (true, true) => Verdict::SimplePurelyInfinite,
            (true, false) => Verdict::SimpleAcyclic,
        };
        ensure(oracle == *expected, || format!("{name}: subset oracle says {oracle:?}"))?;
    }
    Ok(format!("{} graphs", fixtures.len()))
}

fn witness_soundness() -> Check {
    let graphs = [("R_2", rose(2)), ("R_3", rose(3)), ("triangle", triangle()), ("square", square())];
    let sampler = ElementSampler::new(6, 4);
    let mut total = 0;
    for (gi, (name, g)) in graphs.iter().enumerate() {
        let mut r = rng(200 + gi as u64);
        for k in 0..100 {
            let a = sampler.sample_nonzero(g, &mut r).ok_or("sampler produced only zeros")?;
            let w = spi_witness(&a).map_err(|e| format!("{name} #{k}: {e}"))?;
            let product = &(&w.x * &a) * &w.y;
            ensure(product == Element::vertex(g, w.v), || format!("{name} #{k}: x·a·y = {product}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} witnesses verified"))
}

fn equal_length_paths() -> Check {
    let g = rose(2);
    let v = g.vertex("v").unwrap();
    let vertex = Element::vertex(&g, v);
    for m in [1, 2, 3, 5] {
        let fam = equal_length_closed_paths(&g, &BTreeSet::from([v]), m).map_err(|e| e.to_string())?;
        let paths = &fam.paths[&v];
        ensure(paths.len() == m, || format!("m={m}: {} paths", paths.len()))?;
        ensure(paths.iter().collect::<BTreeSet<_>>().len() == m, || format!("m={m}: repeated path"))?;
        for (i, gi) in paths.iter().enumerate() {
            ensure(gi.len() == fam.length && gi.is_closed() && gi.source() == v, || {
                format!("m={m}: path {i} is not closed of length {}", fam.length)
            })?;
            for (j, gj) in paths.iter().enumerate() {
                let prod = &Element::ghost(&g, gi) * &Element::path(&g, gj);
                let want = if i == j { vertex.clone() } else { Element::zero(&g) };
                ensure(prod == want, || format!("m={m}: γ{i}*γ{j} = {prod}"))?;
            }
        }
    }
    Ok("m ∈ {1, 2, 3, 5}".into())
}

fn psi_laws() -> Check {
    let graphs = [("R_2", rose(2)), ("triangle", triangle())];
    let mut count = 0;
    for (gi, (name, g)) in graphs.iter().enumerate() {
        let mut r = rng(400 + gi as u64);
        let any = ElementSampler::new(4, 2);
        let diagonal = ElementSampler::new(4, 2).same_source(true);
        for rr in 0..=3 {
            let local = ElementSampler::new(4, rr).equal_lengths(true);
            for k in 0..50 {
                let a = any.sample(g, &mut r);
                let x = local.sample(g, &mut r);
                let pa = a.psi(rr).map_err(|e| e.to_string())?;
                ensure(&pa * &x == &x * &pa, || format!("{name} r={rr} #{k}: ψ_r(a) and x do not commute"))?;

                let a = diagonal.sample(g, &mut r);
                let b = any.sample(g, &mut r);
                for v in g.vertices_sorted() {
                    let ve = Element::vertex(g, v);
                    ensure(&ve * &a == &a * &ve, || format!("{name}: sample does not commute with vertices"))?;
                }
                let lhs = (&a * &b).psi(rr).map_err(|e| e.to_string())?;
                let rhs = &a.psi(rr).map_err(|e| e.to_string())? * &b.psi(rr).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("{name} r={rr} #{k}: ψ_r(ab) ≠ ψ_r(a)ψ_r(b)"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} commuting checks and {count} products"))
}

fn decompose_homomorphism() -> Check {
    let graphs = [("R_2", rose(2)), ("A_3", a3()), ("triangle", triangle()), ("loop and sink", loop_and_sink())];
    let mut count = 0;
    for (gi, (name, g)) in graphs.iter().enumerate() {
        let mut r = rng(500 + gi as u64);
        for n in 0..=3 {
            let sampler = ElementSampler::new(4, n).equal_lengths(true);
            for k in 0..100 {
                let x = sampler.sample(g, &mut r);
                let y = sampler.sample(g, &mut r);
                let dx = decompose_0n(&x, n).map_err(|e| format!("{name} n={n}: {e}"))?;
                let dy = decompose_0n(&y, n).map_err(|e| format!("{name} n={n}: {e}"))?;
                let dxy = decompose_0n(&(&x * &y), n).map_err(|e| format!("{name} n={n}: {e}"))?;
                let prod = dx.mul(&dy).map_err(|e| e.to_string())?;
                ensure(dxy == prod, || format!("{name} n={n} #{k}: product not preserved"))?;
                ensure(dx.recompose() == x, || format!("{name} n={n} #{k}: recompose ≠ id"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

/// Column sums of `|x|` acting on the span of paths into each sink, by the
/// left action `αβ*·γ = αγ'` when `γ = βγ'`.
fn column_sum_oracle(x: &Element) -> BigRational {
    let g = x.graph();
    let mut best = BigRational::zero();
    for w in g.vertices_sorted().filter(|&w| g.is_sink(w)) {
        let basis: Vec<Path> = (0..g.vertex_count()).flat_map(|n| explicit_paths(g, n, Some(w))).collect();
        for gamma in &basis {
            let mut column: BTreeMap<Path, Coeff> = BTreeMap::new();
            for (m, c) in x.terms() {
                if let Some(rest) = gamma.strip_prefix(m.beta()) {
                    let target = m.alpha().concat(&rest).unwrap();
                    let entry = column.entry(target).or_insert_with(Coeff::zero);
                    *entry += c;
                }
            }
            let sum = column
                .values()
                .fold(BigRational::zero(), |acc, c| {
                    assert!(c.is_real(), "oracle needs real coefficients");
                    acc + c.re().abs()
                });
            if sum > best {
                best = sum;
            }
        }
    }
    best
}

fn norm_formula() -> Check {
    let graphs = [("A_2", a2()), ("A_3", a3()), ("6-path", path6())];
    let opts = EstimatorOptions::default();
    let mut worst_rel = 0.0_f64;
    for (gi, (name, g)) in graphs.iter().enumerate() {
        let mut r = rng(600 + gi as u64);
        let integer = ElementSampler::new(6, g.vertex_count() - 1)
            .integer_coefficients(true)
            .real_coefficients(true);
        let complex = ElementSampler::new(6, g.vertex_count() - 1);
        for k in 0..200 {
            let x = integer.sample(g, &mut r);
            let oracle = column_sum_oracle(&x).to_f64().unwrap();
            let got = element_norm_acyclic(&x, 1.0).map_err(|e| e.to_string())?;
            ensure(got.exact && got.value == oracle, || {
                format!("{name} #{k}: p=1 norm {} vs oracle {oracle}", got.value)
            })?;

            let y = complex.sample(g, &mut r);
            let s = spatial_rep_acyclic(&y, 2.0).map_err(|e| e.to_string())?;
            let mut est = 0.0_f64;
            let mut svd = 0.0_f64;
            for b in &s.blocks {
                est = est.max(power_lower_bound(&b.matrix, 2.0, &opts).map_err(|e| e.to_string())?.value);
                svd = svd.max(largest_singular_value(&b.matrix));
            }
            let exact = element_norm_acyclic(&y, 2.0).map_err(|e| e.to_string())?.value;
            ensure((exact - svd).abs() <= 1e-12 * svd.max(1.0), || format!("{name} #{k}: p=2 norm is not the SVD"))?;
            let rel = if svd == 0.0 { est } else { (est - svd).abs() / svd };
            worst_rel = worst_rel.max(rel);
            ensure(rel <= 1e-6, || format!("{name} #{k}: p=2 estimate {est} vs {svd}"))?;
        }
    }
    Ok(format!("600 exact p=1 matches; worst p=2 relative gap {worst_rel:.1e}"))
}

fn phi_quadrature() -> Check {
    let graphs = [a2(), a3(), path6()];
    let mut r = rng(700);
    let mut worst = 0.0_f64;
    for k in 0..50 {
        let g = &graphs[k % graphs.len()];
        let x = ElementSampler::new(6, g.vertex_count() - 1).sample(g, &mut r);
        let maxdeg = x.degrees().iter().map(|d| d.abs()).max().unwrap_or(0);
        for n in -(maxdeg + 1)..=maxdeg + 1 {
            let dev = phi_n_numeric_check(&x, n, 2.0).map_err(|e| e.to_string())?;
            worst = worst.max(dev);
            ensure(dev <= ACCEPT_TOL, || format!("#{k} n={n}: deviation {dev:e}"))?;
        }
    }
    Ok(format!("worst deviation {worst:.1e}"))
}

fn corner_identity() -> Check {
    let fixtures = [
        ("source graph", with_source(), "a"),
        ("loop and sink", loop_and_sink(), "u"),
        ("A_3", a3(), "v"),
        ("R_2 + vertex", rose2_and_vertex(), "v"),
        ("random a", random_a(), "v3"),
    ];
    let corner = |g: &Graph, w: &str| -> BTreeSet<String> {
        let v = g.vertex(w).unwrap();
        basis_monomials(g, 4)
            .into_iter()
            .filter(|m| m.source() == v && m.right_vertex() == v)
            .map(|m| m.display(g))
            .collect()
    };
    let mut sizes = Vec::new();
    for (name, g, w) in &fixtures {
        let h = reachable_subgraph(g, w).map_err(|e| e.to_string())?;
        ensure(h.vertex_count() < g.vertex_count(), || format!("{name}: corner graph is not proper"))?;
        let (ce, ch) = (corner(g, w), corner(&h, w));
        ensure(ce == ch, || format!("{name}: corner bases differ ({} vs {})", ce.len(), ch.len()))?;
        sizes.push(ce.len());
    }
    Ok(format!("corner sizes {sizes:?}"))
}

fn cohn_relations() -> Check {
    let graphs = [
        ("R_2", rose(2)),
        ("R_3", rose(3)),
        ("triangle", triangle()),
        ("square", square()),
        ("source graph", with_source()),
    ];
    let mut count = 0;
    for (name, g) in &graphs {
        for v in g.vertices_sorted() {
            let c = cohn_embedding(g, v).map_err(|e| format!("{name}: {e}"))?;
            let ve = Element::vertex(g, v);
            for i in 0..2 {
                for j in 0..2 {
                    let prod = &c.t[i] * &c.s[j];
                    let want = if i == j { ve.clone() } else { Element::zero(g) };
                    ensure(prod == want, || format!("{name} at {}: t{i}s{j} = {prod}", g.vertex_name(v)))?;
                }
            }
            for x in c.s.iter().chain(&c.t) {
                ensure(&(&ve * x) * &ve == *x, || format!("{name}: element outside the corner"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} vertices"))
}

fn confluence() -> Check {
    let graphs = [rose(2), rose(3), triangle(), a3(), loop_and_sink()];
    let mut r = rng(1000);
    for k in 0..200 {
        let g = &graphs[k % graphs.len()];
        let paths: Vec<Path> = (0..=4).flat_map(|n| explicit_paths(g, n, None)).collect();
        let count = r.gen_range(1..=8);
        let mut raw = Vec::with_capacity(count);
        for _ in 0..count {
            let a = paths[r.gen_range(0..paths.len())].clone();
            let partners: Vec<&Path> = paths.iter().filter(|b| b.range() == a.range()).collect();
            let b = partners[r.gen_range(0..partners.len())].clone();
            let c = Coeff::gaussian((r.gen_range(-5..=5), r.gen_range(1..=4)), (r.gen_range(-2..=2), 1));
            raw.push((Monomial::new(a, b).unwrap(), c));
        }
        let left = normalize_terms(g, raw.clone(), RewriteStrategy::LeftmostInnermost);
        let random = normalize_terms(g, raw, RewriteStrategy::Random { seed: k as u64 });
        ensure(left == random, || format!("map #{k}: strategies disagree"))?;
        ensure(left.keys().all(|m| !m.is_reducible(g)), || format!("map #{k}: reducible term left"))?;
    }
    Ok("200 maps".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "trichotomy fidelity", budget: Duration::from_secs(1), run: trichotomy },
        Criterion { id: 2, name: "witness soundness", budget: Duration::from_secs(60), run: witness_soundness },
        Criterion { id: 3, name: "equal-length closed paths", budget: Duration::from_secs(1), run: equal_length_paths },
        Criterion { id: 4, name: "psi_r laws", budget: Duration::from_secs(10), run: psi_laws },
        Criterion { id: 5, name: "stage decomposition homomorphism", budget: Duration::from_secs(30), run: decompose_homomorphism },
        Criterion { id: 6, name: "acyclic norm formula", budget: Duration::from_secs(30), run: norm_formula },
        Criterion { id: 7, name: "Phi_n quadrature", budget: Duration::from_secs(10), run: phi_quadrature },
        Criterion { id: 8, name: "corner identity", budget: Duration::from_secs(5), run: corner_identity },
        Criterion { id: 9, name: "Cohn relations", budget: Duration::from_secs(1), run: cohn_relations },
        Criterion { id: 10, name: "rewriting confluence", budget: Duration::from_secs(10), run: confluence },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {:?} budget", c.budget)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{:>2}] {} ({:.2?}): {detail}", c.id, c.name, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
