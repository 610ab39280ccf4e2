//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use apollonet::analysis::{
    apl_sampled, average_clustering, compare_to_theory, degree_histogram,
    empirical_parallel_coefficient, gamma_mle, local_clustering, ordering_shortest_path_check,
    parallel_degree_histogram, Histogram,
};
use apollonet::experiment::{
    generate_to_dir, run_experiment, write_report, Analysis, ExperimentSpec,
};
use apollonet::generators::{generate, GrowthConfig, Model, PdanPolicy, RngStream, Target};
use apollonet::theory::{
    degree_pmf_theory, local_clustering_theory, parallel_coefficient_theory, pc_theory_f64,
};
use apollonet::{Dimension, Graph, VertexId};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pran(d: usize, n: usize, seed: u64) -> Graph {
    generate(&GrowthConfig::pran(d, n, seed)).unwrap()
}

fn ran(d: usize, n: usize, seed: u64) -> Graph {
    generate(&GrowthConfig::ran(d, n, seed)).unwrap()
}

/// 1. Parallel-degree pmf, d = 2, 10 x N = 1e5: |mean pmf(m) - Pc(m)| < 0.005
/// for m = 0..5, in under 30 s.
fn parallel_degree_law() -> Outcome {
    let start = Instant::now();
    let runs: Vec<Histogram> = (0..10)
        .map(|seed| parallel_degree_histogram(&pran(2, 100_000, seed)).unwrap())
        .collect();
    let rows = compare_to_theory(&runs, |m| pc_theory_f64(dim(2), m as u32)).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let mut worst: f64 = 0.0;
    for m in 0..=5u64 {
        let row = rows
            .iter()
            .find(|r| r.value == m)
            .ok_or(format!("no row for m = {m}"))?;
        ensure(row.abs_error < 0.005, || {
            format!(
                "m = {m}: empirical {:.5} vs {:.5}",
                row.empirical, row.theoretical
            )
        })?;
        worst = worst.max(row.abs_error);
    }
    ensure(elapsed < 30.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!(
        "max abs error {worst:.5} over m = 0..5, {elapsed:.1} s"
    ))
}

/// 2. Parallel coefficient, d = 2..10, 10 x N = 1e5 within 0.005 of theory;
/// RAN gives exactly 0.
fn parallel_coefficient() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 2..=10 {
        let mean: f64 = (0..10)
            .map(|seed| empirical_parallel_coefficient(&pran(d, 100_000, seed)).unwrap())
            .sum::<f64>()
            / 10.0;
        let theory = parallel_coefficient_theory(dim(d)).to_f64().unwrap();
        ensure((mean - theory).abs() < 0.005, || {
            format!("d = {d}: {mean:.5} vs {theory:.5}")
        })?;
        worst = worst.max((mean - theory).abs());
    }
    ensure(
        parallel_coefficient_theory(dim(2)) == num_rational::Ratio::new(7, 48),
        || "d = 2 target is not 7/48".into(),
    )?;
    for d in 2..=10 {
        for seed in 0..10 {
            let rho = empirical_parallel_coefficient(&ran(d, 100_000, seed)).unwrap();
            ensure(rho == 0.0, || {
                format!("RAN d = {d} seed {seed}: rho = {rho}")
            })?;
        }
    }
    Ok(format!(
        "max |rho - theory| = {worst:.5} over d = 2..10; RAN rho = 0"
    ))
}

fn arb_spec() -> impl Strategy<Value = GrowthConfig> {
    prop_oneof![
        (1usize..9, 10usize..5000, any::<u64>())
            .prop_map(|(d, n, s)| { GrowthConfig::pran(d, n.max(d + 2), s) }),
        (1usize..9, 10usize..5000, any::<u64>())
            .prop_map(|(d, n, s)| { GrowthConfig::ran(d, n.max(d + 2), s) }),
        (1usize..5, 1usize..4, 1usize..3, any::<bool>()).prop_map(|(d, t, m, all)| {
            let policy = if all {
                PdanPolicy::All
            } else {
                PdanPolicy::Frontier
            };
            GrowthConfig::pdan(d, t, m, policy)
        }),
    ]
}

/// 3. Exact per-vertex clustering law on 100 random specs; network averages
/// 0.813 (P-RAN) and 0.768 (RAN) within 0.01 at d = 2, 10 x N = 1e5.
fn clustering_law() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        failure_persistence: None,
        ..Config::default()
    });
    let vertices_checked = std::cell::Cell::new(0usize);
    runner
        .run(&arb_spec(), |cfg| {
            let g = generate(&cfg).unwrap();
            prop_assume!(g.vertex_count() <= 5000);
            let d = g.dimension();
            for v in 0..g.vertex_count() {
                let v = VertexId(v as u32);
                let k = g.degree(v).unwrap() as u64;
                prop_assert_eq!(
                    local_clustering(&g, v).unwrap(),
                    local_clustering_theory(d, k).unwrap(),
                    "{:?} vertex {}",
                    cfg,
                    v
                );
            }
            vertices_checked.set(vertices_checked.get() + g.vertex_count());
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let avg = |f: fn(usize, usize, u64) -> Graph| {
        (0..10)
            .map(|s| average_clustering(&f(2, 100_000, s)).unwrap())
            .sum::<f64>()
            / 10.0
    };
    let c_pran = avg(pran);
    let c_ran = avg(ran);
    ensure((c_pran - 0.813).abs() <= 0.01, || {
        format!("P-RAN C = {c_pran:.4}")
    })?;
    ensure((c_ran - 0.768).abs() <= 0.01, || {
        format!("RAN C = {c_ran:.4}")
    })?;
    Ok(format!(
        "{} vertices exact; C(P-RAN) = {c_pran:.4}, C(RAN) = {c_ran:.4}",
        vertices_checked.get()
    ))
}

/// 4. Fraction of degree-(d+1) vertices is 0.5 +- 0.01 at N = 1e5.
fn min_degree_fraction() -> Outcome {
    let mut parts = Vec::new();
    for d in [1, 2, 3, 6] {
        let h = degree_histogram(&pran(d, 100_000, 0));
        let f = h.probability(d as u64 + 1);
        ensure((f - 0.5).abs() <= 0.01, || format!("d = {d}: {f:.4}"))?;
        parts.push(format!("d={d}:{f:.4}"));
    }
    Ok(parts.join(" "))
}

/// 5. d = 1 recursion vs 12/((k+2)(k+1)k) to 1e-12 relative for k <= 1000;
/// empirical pmf within 4 binomial std errors for k <= 20 at N = 1e5.
fn d1_closed_form() -> Outcome {
    let pmf = degree_pmf_theory(dim(1), 1000).unwrap();
    let mut worst_rel: f64 = 0.0;
    for (k, p) in pmf.iter() {
        let kf = k as f64;
        let closed = 12.0 / ((kf + 2.0) * (kf + 1.0) * kf);
        worst_rel = worst_rel.max(((p - closed) / closed).abs());
    }
    ensure(worst_rel < 1e-12, || {
        format!("relative error {worst_rel:e}")
    })?;
    let n = 100_000;
    let h = degree_histogram(&pran(1, n, 0));
    let mut worst_z: f64 = 0.0;
    for k in 2..=20u64 {
        let p = pmf.get(k);
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let z = (h.probability(k) - p).abs() / se;
        ensure(z <= 4.0, || {
            format!("k = {k}: {:.5} vs {p:.5} ({z:.2} se)", h.probability(k))
        })?;
        worst_z = worst_z.max(z);
    }
    Ok(format!(
        "max rel error {worst_rel:.1e}; max deviation {worst_z:.2} se for k <= 20"
    ))
}

/// 6. gamma MLE at d = 2, N = 2e5, one run: in [2.35, 2.65] for
/// k_min in {30, 100, 300}, under 20 s.
fn degree_exponent() -> Outcome {
    let start = Instant::now();
    let g = pran(2, 200_000, apollonet::experiment::DEFAULT_SEED);
    let ks: Vec<u64> = g.degrees().map(|k| k as u64).collect();
    let mut parts = Vec::new();
    for k_min in [30, 100, 300] {
        let gamma = gamma_mle(&ks, k_min).map_err(|e| e.to_string())?;
        ensure((2.35..=2.65).contains(&gamma), || {
            format!("k_min = {k_min}: {gamma:.3}")
        })?;
        parts.push(format!("k_min={k_min}:{gamma:.3}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 20.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!("{} ({elapsed:.1} s)", parts.join(" ")))
}

/// 7. Sampled APL (1e5 pairs, 5 seeds): P-RAN < RAN at every (d, N), and
/// L(1e4) - L(1e3) <= ln(10) + 0.5.
fn apl_comparison() -> Outcome {
    let mean_apl = |model: Model, d: usize, n: usize| -> f64 {
        (0..5u64)
            .map(|seed| {
                let g = generate(&GrowthConfig::new(model, d, Target::Vertices(n), seed)).unwrap();
                apl_sampled(&g, 100_000, &mut RngStream::new(1000 + seed))
                    .unwrap()
                    .mean_distance
            })
            .sum::<f64>()
            / 5.0
    };
    let mut parts = Vec::new();
    for d in [2, 4, 6] {
        let mut by_n = Vec::new();
        for n in [1_000, 10_000] {
            let lp = mean_apl(Model::Pran, d, n);
            let lr = mean_apl(Model::Ran, d, n);
            ensure(lp < lr, || {
                format!("d = {d}, N = {n}: P-RAN {lp:.3} >= RAN {lr:.3}")
            })?;
            parts.push(format!("d={d},N={n}:{lp:.3}<{lr:.3}"));
            by_n.push((lp, lr));
        }
        let bound = 10f64.ln() + 0.5;
        for (label, growth) in [
            ("P-RAN", by_n[1].0 - by_n[0].0),
            ("RAN", by_n[1].1 - by_n[0].1),
        ] {
            ensure(growth <= bound, || {
                format!("{label} d = {d}: growth {growth:.3} > {bound:.3}")
            })?;
        }
    }
    Ok(parts.join(" "))
}

fn check_structure(g: &Graph) -> Result<(), String> {
    let d = g.dimension().get();
    let t = g.step_count();
    let nc = g.clique_count().unwrap();
    ensure(nc == d + 2 + t * (d + 1), || {
        format!("Nc = {nc}, t = {t}, d = {d}")
    })?;
    let counts = g.clique_membership_counts().unwrap();
    for (v, (&c, k)) in counts.iter().zip(g.degrees()).enumerate() {
        ensure(c + d * d == d * k + 1, || {
            format!("vertex {v}: {c} cliques at degree {k}")
        })?;
    }
    Ok(())
}

/// 8. Nc = d+2+t(d+1) and membership = dk - d^2 + 1, exhaustively at
/// N <= 1e4 and on sampled vertices at N = 1e5.
fn structural_exactness() -> Outcome {
    let mut graphs = 0;
    for d in 1..=6 {
        for seed in 0..3 {
            for g in [pran(d, 10_000, seed), ran(d, 10_000, seed)] {
                check_structure(&g)?;
                graphs += 1;
            }
        }
    }
    // large graphs: Nc exactly, membership on 500 sampled vertices by a
    // direct registry scan
    let mut rng = RngStream::new(5);
    for d in [2, 5] {
        let g = pran(d, 100_000, 1);
        let t = g.step_count();
        ensure(g.clique_count() == Some(d + 2 + t * (d + 1)), || {
            format!("Nc at d = {d}")
        })?;
        let registry = g.registry().unwrap();
        let sample: Vec<VertexId> = (0..500)
            .map(|_| VertexId(rng.below(g.vertex_count()) as u32))
            .collect();
        let mut counts = vec![0usize; sample.len()];
        for c in registry.iter() {
            for (i, v) in sample.iter().enumerate() {
                if c.members.contains(v) {
                    counts[i] += 1;
                }
            }
        }
        for (v, c) in sample.iter().zip(counts) {
            let k = g.degree(*v).unwrap();
            ensure(c + d * d == d * k + 1, || {
                format!("d = {d} vertex {v}: {c} vs degree {k}")
            })?;
        }
        graphs += 1;
    }
    Ok(format!("{graphs} graphs checked"))
}

/// 9. Shortest paths never need later vertices: 20 P-RANs, N = 500.
fn ordering_property() -> Outcome {
    for i in 0..20u64 {
        let d = 1 + (i % 3) as usize;
        let g = pran(d, 500, 100 + i);
        ensure(ordering_shortest_path_check(&g), || {
            format!("graph {i} (d = {d}) violates")
        })?;
    }
    Ok("20/20 graphs, d in {1,2,3}".into())
}

/// 10. Same spec and seed give byte-identical edge lists and reports.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut spec = ExperimentSpec::new(GrowthConfig::pran(2, 5_000, 7), 3, Analysis::ALL.to_vec());
    spec.exact_apl_max = 1000;
    spec.apl_pairs = 2000;
    let mut files = 0;
    for model in [Model::Pran, Model::Ran] {
        spec.growth.model = model;
        let a = generate_to_dir(&spec, &dir.path().join("a")).map_err(|e| e.to_string())?;
        let b = generate_to_dir(&spec, &dir.path().join("b")).map_err(|e| e.to_string())?;
        for (x, y) in a.iter().zip(&b) {
            ensure(fs::read(x).unwrap() == fs::read(y).unwrap(), || {
                format!("{x:?} differs")
            })?;
            files += 1;
        }
        for sub in ["ra", "rb"] {
            let (report, timings) = run_experiment(&spec).map_err(|e| e.to_string())?;
            write_report(
                &report,
                &timings,
                &dir.path().join(sub).join(model.as_str()),
            )
            .map_err(|e| e.to_string())?;
        }
        for file in ["report.json", "parallel.csv", "degree.csv", "summary.csv"] {
            let x = fs::read(dir.path().join("ra").join(model.as_str()).join(file)).unwrap();
            let y = fs::read(dir.path().join("rb").join(model.as_str()).join(file)).unwrap();
            ensure(x == y, || format!("{model} {file} differs"))?;
            files += 1;
        }
    }
    Ok(format!("{files} file pairs identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("parallel-degree law", parallel_degree_law),
        ("parallel coefficient", parallel_coefficient),
        ("exact clustering law", clustering_law),
        ("degree-(d+1) fraction", min_degree_fraction),
        ("d=1 closed form", d1_closed_form),
        ("degree exponent MLE", degree_exponent),
        ("APL comparison", apl_comparison),
        ("structural exactness", structural_exactness),
        ("shortest-path ordering", ordering_property),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
