//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its own pass/fail line; exits nonzero if any fails.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use nbhdcx::asymptotics::{
    cor4_alpha_window, theorem1_bound_exact, theorem1_log10, theorem2_bound_exact, theorem2_log10,
};
use nbhdcx::certificates::{analyze_clique, bound_comparison, find_sphere_certificates};
use nbhdcx::complex::{closed_set_poset, neighborliness, poset_height};
use nbhdcx::experiments::{betti_sweep, records_to_jsonl, run_survey, ExperimentConfig, Features, HomologyMode};
use nbhdcx::graph::{
    contains_complete_bipartite, density, gnp_sample, is_strictly_balanced, make_named_graph,
    maximal_cliques, validate_witness, Family, GnpParams, Graph,
};
use nbhdcx::homology::{graph_homology, graph_homology_auto, Coefficients, HomologyResult, HomologyRoute};
use nbhdcx::Caps;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct CorpusEntry {
    graph: Graph,
    homology: HomologyResult,
}

fn full_dim(g: &Graph) -> usize {
    g.vertex_count().saturating_sub(1)
}

fn corpus() -> Vec<CorpusEntry> {
    common::corpus()
        .into_iter()
        .map(|graph| {
            let homology = graph_homology(
                &graph,
                HomologyRoute::Direct,
                full_dim(&graph),
                Coefficients::Both,
                &Caps::default(),
            )
            .expect("corpus homology");
            CorpusEntry { graph, homology }
        })
        .collect()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn sphere_ladder() -> Outcome {
    let start = Instant::now();
    for n in 3..=8usize {
        let g = make_named_graph(Family::Complete, &[n]).map_err(|e| e.to_string())?;
        let h = graph_homology_auto(&g, None, Coefficients::Both, &Caps::default())
            .map_err(|e| e.to_string())?
            .result;
        let mut want = vec![0u64; n - 1];
        want[n - 2] = 1;
        ensure!(h.betti == want, "K_{n}: integral Betti {:?}", h.betti);
        ensure!(h.field2.as_ref() == Some(&want), "K_{n}: mod 2 Betti {:?}", h.field2);
        ensure!(!h.has_torsion(), "K_{n}: torsion {:?}", h.torsion);
    }
    within(start, Duration::from_secs(10), "sphere ladder")?;
    Ok(format!("K_3..K_8 are homology spheres S^1..S^6 ({:?})", start.elapsed()))
}

fn retract_equivalence(corpus: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    ensure!(corpus.len() >= 200, "corpus has only {} graphs", corpus.len());
    for (i, e) in corpus.iter().enumerate() {
        let r = graph_homology(
            &e.graph,
            HomologyRoute::Retract,
            full_dim(&e.graph),
            Coefficients::Both,
            &Caps::default(),
        )
        .map_err(|err| format!("graph {i}: {err}"))?;
        ensure!(
            r.betti == e.homology.betti && r.torsion == e.homology.torsion && r.field2 == e.homology.field2,
            "graph {i}: retract {:?} vs complex {:?}",
            r,
            e.homology
        );
    }
    within(start, Duration::from_secs(300), "retract equivalence")?;
    Ok(format!("{} graphs agree in every dimension", corpus.len()))
}

fn dimension_bound(corpus: &[CorpusEntry]) -> Outcome {
    let caps = Caps::default();
    let mut checks = 0;
    for (i, e) in corpus.iter().enumerate() {
        let height = poset_height(&closed_set_poset(&e.graph, &caps).map_err(|err| err.to_string())?);
        for a in 1..=6usize {
            for b in 1..=(7 - a) {
                let free = contains_complete_bipartite(&e.graph, a, b, &caps)
                    .map_err(|err| err.to_string())?
                    .is_none();
                if free {
                    checks += 1;
                    ensure!(
                        height <= (a + b) as i64 - 3,
                        "graph {i}: no K_({a},{b}) but poset height {height}"
                    );
                }
            }
        }
    }
    Ok(format!("{checks} bipartite-free (a, b) pairs respect the height bound"))
}

fn neighborly_connectivity(corpus: &[CorpusEntry]) -> Outcome {
    let mut nontrivial = 0;
    for (i, e) in corpus.iter().enumerate() {
        let k = neighborliness(&e.graph, &Caps::default()).map_err(|err| err.to_string())?;
        if k >= 2 {
            nontrivial += 1;
        }
        for d in 0..k.saturating_sub(1) {
            ensure!(
                !e.homology.nonzero_in(d),
                "graph {i}: {k}-neighborly but H_{d} is nonzero ({:?})",
                e.homology
            );
        }
    }
    Ok(format!("{nontrivial} graphs with neighborliness >= 2, all vanish as required"))
}

fn certificate_soundness() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let (mut graphs, mut certs, mut rebuilt) = (0, 0, 0);
    for n in 7..=12usize {
        for (pi, &p) in [0.3, 0.5, 0.7].iter().enumerate() {
            for t in 0..6u64 {
                let seed = 0xC0FFEE ^ (n as u64) << 20 ^ (pi as u64) << 10 ^ t;
                let g = gnp_sample(&GnpParams::new(n, p, seed).unwrap()).unwrap();
                graphs += 1;
                let h = graph_homology_auto(&g, None, Coefficients::Z, &caps)
                    .map_err(|e| e.to_string())?
                    .result;
                for c in find_sphere_certificates(&g, &caps).map_err(|e| e.to_string())? {
                    certs += 1;
                    ensure!(c.validated, "unvalidated certificate {c:?}");
                    ensure!(
                        h.betti.get(c.sphere_dim).is_some_and(|&b| b >= 1),
                        "certificate {c:?} but Betti {:?}",
                        h.betti
                    );
                }
                for clique in maximal_cliques(&g, &caps).map_err(|e| e.to_string())? {
                    if clique.len() < 2 {
                        continue;
                    }
                    let a = analyze_clique(&g, &clique).map_err(|e| e.to_string())?;
                    if let Some(w) = &a.reconstructed_x_n {
                        rebuilt += 1;
                        ensure!(validate_witness(&g, w), "reconstruction {w:?} does not embed");
                    }
                }
            }
        }
    }
    ensure!(graphs >= 100, "only {graphs} graphs");
    within(start, Duration::from_secs(600), "certificate soundness")?;
    Ok(format!(
        "{graphs} graphs, {certs} certificates backed by homology, {rebuilt} X_n reconstructions valid"
    ))
}

fn brute_force_oracle(corpus: &[CorpusEntry]) -> Outcome {
    let mut checked = 0;
    for (i, e) in corpus.iter().enumerate().filter(|(_, e)| e.graph.vertex_count() <= 7) {
        common::check_against_oracle(&e.graph, &e.homology.betti, &e.homology.torsion)
            .map_err(|err| format!("graph {i}: {err}"))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs on <= 7 vertices match the all-subsets computation"))
}

fn connectivity_statistics() -> Outcome {
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new(50, vec![0.5], 100, 20240607, 0);
    cfg.features = Features {
        homology: true,
        neighborliness: false,
        certificates: false,
        clique_stats: false,
    };
    ensure!(cfg.homology_mode() == HomologyMode::Skeleton, "unexpected mode");
    let records = run_survey(&cfg, None).map_err(|e| e.to_string())?;
    let connected = records.iter().filter(|r| r.betti.first() == Some(&0)).count();
    let frac = connected as f64 / records.len() as f64;
    ensure!(frac >= 0.95, "only {connected}/100 connected");
    within(start, Duration::from_secs(120), "connectivity survey")?;
    Ok(format!("{connected}/100 trials have connected N[G]"))
}

fn cor4_identity() -> Outcome {
    let caps = Caps {
        balance_vertices: 14,
        ..Caps::default()
    };
    for k in 1..=6u64 {
        let m = k as usize + 2;
        let w = cor4_alpha_window(k).map_err(|e| e.to_string())?;
        let kk = make_named_graph(Family::Complete, &[m]).unwrap();
        let xx = make_named_graph(Family::XN, &[m]).unwrap();
        let from_k = -Ratio::from_integer(1) / density(&kk).unwrap();
        let from_x = -Ratio::from_integer(1) / density(&xx).unwrap();
        let closed_lo = Ratio::new(-2, k as i64 + 1);
        let closed_hi = Ratio::new(-4, 3 * (k as i64 + 1));
        ensure!(from_k == closed_lo && from_x == closed_hi, "k = {k}: densities give {from_k}, {from_x}");
        let as_text = |r: Ratio<i64>| r.to_string();
        ensure!(
            w.exact_lower.as_deref() == Some(as_text(closed_lo).as_str())
                && w.exact_upper.as_deref() == Some(as_text(closed_hi).as_str()),
            "k = {k}: window {:?}..{:?}",
            w.exact_lower,
            w.exact_upper
        );
        // X_8 has 16 vertices, past the exhaustive balance check
        if m <= 7 {
            ensure!(is_strictly_balanced(&kk, &caps).map_err(|e| e.to_string())?, "K_{m} not balanced");
            ensure!(is_strictly_balanced(&xx, &caps).map_err(|e| e.to_string())?, "X_{m} not balanced");
        }
    }
    Ok("k = 1..6 windows match both densities; K_m, X_m strictly balanced for m <= 7".into())
}

fn formula_trend() -> Outcome {
    let start = Instant::now();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let milli = BigRational::new(BigInt::from(1), BigInt::from(1000));
    let mut report = String::new();

    let logs: Vec<f64> = (10..=20u32)
        .map(|t| theorem1_log10(1 << t, (9 * t / 10) as u64, 0.5).unwrap())
        .collect();
    let _ = write!(report, "theorem1 log10 t=10..20: {:.2}..{:.2}; ", logs[0], logs[10]);
    // exact comparison where the rationals stay small
    for t in 10..14u32 {
        let a = theorem1_bound_exact(1 << t, (9 * t / 10) as u64, &half).unwrap();
        let b = theorem1_bound_exact(1 << (t + 1), (9 * (t + 1) / 10) as u64, &half).unwrap();
        let f_says = logs[(t - 10) as usize + 1] < logs[(t - 10) as usize];
        ensure!((b < a) == f_says, "exact and log comparison disagree at t = {t}");
    }
    let decreasing = logs.windows(2).all(|w| w[1] < w[0]);
    let small = logs[10] < -3.0;

    let j = |t: u32| (2.05 * t as f64).ceil() as u64;
    let t2_exact = theorem2_bound_exact(1 << 20, j(20), j(20), &half).unwrap();
    let t2_small = t2_exact < milli;
    let t2_log = theorem2_log10(1 << 20, j(20), j(20), 0.5).unwrap();
    let _ = write!(report, "theorem2 log10 at t=20: {t2_log:.2}");
    ensure!(t2_small, "theorem2 bound at t = 20 not below 1e-3: {report}");
    ensure!(
        decreasing && small,
        "theorem1 bound is not decreasing to below 1e-3 (decreasing: {decreasing}, below: {small}): {report}"
    );
    within(start, Duration::from_secs(1), "formula trend")?;
    Ok(report)
}

fn bound_comparison_table() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let mut csv = String::from("sample,vertices,edges,chromatic_number,clique_number,neighborliness_bound\n");
    let (mut omegas, mut bounds) = (Vec::new(), Vec::new());
    for s in 0..30u64 {
        let g = gnp_sample(&GnpParams::new(11, 0.5, 4_000 + s).unwrap()).unwrap();
        let r = bound_comparison(&g, &caps).map_err(|e| format!("sample {s}: {e}"))?;
        let (Some(chi), Some(omega), Some(nb)) = (r.chromatic_number, r.clique_number, r.neighborliness_bound) else {
            return Err(format!("sample {s}: incomplete {:?}", r.missing));
        };
        ensure!(chi >= omega && chi >= nb, "sample {s}: chi {chi}, omega {omega}, bound {nb}");
        let _ = writeln!(csv, "{s},{},{},{chi},{omega},{nb}", r.vertices, r.edges);
        omegas.push(omega);
        bounds.push(nb);
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("bound_comparison.csv");
    std::fs::write(&path, csv).map_err(|e| e.to_string())?;
    let median = |v: &mut Vec<usize>| {
        v.sort_unstable();
        (v[14] + v[15]) as f64 / 2.0
    };
    let (mo, mb) = (median(&mut omegas), median(&mut bounds));
    within(start, Duration::from_secs(300), "bound comparison")?;
    Ok(format!(
        "chi >= omega and chi >= bound on 30 samples; median bound {mb} {} median omega {mo}; csv at {}",
        if mb <= mo { "<=" } else { ">" },
        path.display()
    ))
}

fn reproducibility() -> Outcome {
    let cfg = ExperimentConfig::new(9, vec![0.3, 0.5, 0.7], 12, 77, 4);
    let run = |jobs| {
        run_survey(&cfg, Some(jobs))
            .and_then(|r| records_to_jsonl(&r))
            .map_err(|e| e.to_string())
    };
    let a = run(1)?;
    let b = run(1)?;
    let c = run(8)?;
    ensure!(a == b, "two single-threaded runs differ");
    ensure!(a == c, "jobs 1 and jobs 8 differ");
    Ok(format!("{} bytes identical across reruns and job counts", a.len()))
}

fn unimodality_sweep() -> Outcome {
    let start = Instant::now();
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let cfg = ExperimentConfig::new(8, grid, 50, 2024, 6);
    let (_, summary) = betti_sweep(&cfg, None).map_err(|e| e.to_string())?;
    let first = &summary.points[0];
    let last = &summary.points[10];
    for k in 0..6 {
        ensure!(
            first.betti_mean[k] == Some(0.0) && last.betti_mean[k] == Some(0.0),
            "E[b_{k}] at the endpoints: {:?}, {:?}",
            first.betti_mean[k],
            last.betti_mean[k]
        );
    }
    let maxima = summary.local_maxima.clone().unwrap_or_default();
    ensure!(maxima.len() == first.betti_mean.len(), "diagnostic covers {} dims", maxima.len());
    within(start, Duration::from_secs(600), "sweep")?;
    Ok(format!("local maxima per dimension {maxima:?}"))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("sphere ladder", Box::new(sphere_ladder)),
        ("retract equivalence", Box::new(|| retract_equivalence(&corpus))),
        ("retract dimension bound", Box::new(|| dimension_bound(&corpus))),
        ("neighborliness connectivity", Box::new(|| neighborly_connectivity(&corpus))),
        ("sphere certificate soundness", Box::new(certificate_soundness)),
        ("brute-force homology oracle", Box::new(|| brute_force_oracle(&corpus))),
        ("desk-scale connectivity", Box::new(connectivity_statistics)),
        ("cor4 density identity", Box::new(cor4_identity)),
        ("formula trend", Box::new(formula_trend)),
        ("bound comparison", Box::new(bound_comparison_table)),
        ("reproducibility", Box::new(reproducibility)),
        ("unimodality sweep", Box::new(unimodality_sweep)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:?})",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
