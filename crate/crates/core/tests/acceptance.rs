//! Acceptance suite: one test per criterion, exact comparisons throughout,
//! each printing a PASS line with its elapsed time (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kcore::allocation::Permutation;
use kcore::games::{self, GameClass};
use kcore::polyhedra::{
    compare, dd, fm, DdConfig, FmConfig, HPolyhedron, LinearConstraint, Relation,
};
use kcore::set_functions::SetFunction;
use kcore::verify::{
    self, run_suite, Suite, SuiteOptions, Verdict, VerifyConfig,
};
use kcore::{Rat, Scalar};

fn fm_cfg() -> FmConfig {
    FmConfig::default()
}

fn assert_within(elapsed: Duration, limit_secs: u64, what: &str) {
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "{what} took {elapsed:?}, limit {limit_secs}s"
    );
}

fn assert_all_hold(result: &kcore::verify::SuiteResult, what: &str) {
    let fails: Vec<String> = result
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fails)
        .map(|r| format!("{} [{}]: {:?}", r.theorem, r.instance, r.witness))
        .collect();
    assert!(fails.is_empty(), "{what}: witnessed failures\n{}", fails.join("\n"));
}

#[test]
fn a1_mobius_round_trip() {
    let timer = Instant::now();
    for seed in 0..200u64 {
        let n = 1 + (seed as usize % 6);
        let v = games::random_game::<Rat>(n, seed, GameClass::General);
        let mobius = v.mobius_transform();
        assert_eq!(mobius.zeta_transform(), v, "seed {seed}");
        assert_eq!(v.zeta_transform().mobius_transform(), v, "seed {seed}");
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 5, "200 Möbius round trips");
    println!("PASS 1: Möbius round trip on 200 games, n in 1..=6 ({elapsed:?})");
}

/// Deterministic random H-polytope: a centered box plus a few extra
/// halfspaces (possibly emptying it).
fn random_polytope(seed: u64, dim: usize) -> HPolyhedron<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<String> = (0..dim).map(|i| format!("y[{i}]")).collect();
    let mut p = HPolyhedron::universe(vars);
    for i in 0..dim {
        let mut lo = vec![Rat::from_int(0); dim];
        lo[i] = Rat::from_int(1);
        p.push(LinearConstraint::new(lo, Relation::Ge, Rat::from_int(-3)))
            .unwrap();
        let mut hi = vec![Rat::from_int(0); dim];
        hi[i] = Rat::from_int(-1);
        p.push(LinearConstraint::new(hi, Relation::Ge, Rat::from_int(-3)))
            .unwrap();
    }
    let extras = rng.gen_range(1..=dim + 2);
    for _ in 0..extras {
        let coeffs: Vec<Rat> = (0..dim)
            .map(|_| Rat::from_int(rng.gen_range(-3i64..=3)))
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let rhs = Rat::from_int(rng.gen_range(-6i64..=2));
        p.push(LinearConstraint::new(coeffs, Relation::Ge, rhs)).unwrap();
    }
    p
}

#[test]
fn a2_fm_projection_matches_vertex_oracle() {
    let timer = Instant::now();
    let dd_cfg = DdConfig::default();
    for seed in 0..50u64 {
        let dim = 3 + (seed as usize % 3);
        let p = random_polytope(seed, dim);
        let drop_count = 1 + (seed as usize % 2);
        let dropped: Vec<String> = p.vars()[..drop_count].to_vec();
        let kept: Vec<usize> = (drop_count..dim).collect();

        let projected = fm::eliminate_all(&p, &dropped, &fm_cfg()).unwrap();

        // oracle: project the generators, then rebuild the hull
        let gens = dd::enumerate_generators(&p, &dd_cfg).unwrap();
        let shadow = gens.project_onto(&kept);
        let hull = dd::hrep_from_vrep(&shadow, projected.vars(), &dd_cfg).unwrap();

        assert!(
            compare::equal(&projected, &hull, &fm_cfg()).unwrap(),
            "seed {seed}: elimination disagrees with the vertex-projection oracle"
        );
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 30, "50 projection oracle comparisons");
    println!("PASS 2: elimination matches the vertex-projection oracle on 50 polytopes ({elapsed:?})");
}

#[test]
fn a3_positive_sharing_images() {
    let timer = Instant::now();
    for (n, ks) in [(3usize, vec![2usize, 3]), (4, vec![2])] {
        let mut opts = SuiteOptions::new(n);
        opts.ks = ks.clone();
        opts.random_games = 20;
        let result = run_suite::<Rat>(Suite::Th1, &opts).unwrap();
        assert_all_hold(&result, "positive sharing image");
        assert_eq!(result.summary.skipped, 0);
        for report in &result.reports {
            assert_within(
                report.elapsed,
                300,
                &format!("instance {}", report.instance),
            );
            // the image is the efficiency hyperplane and nothing else
            assert_eq!(report.stats["image_rows"], 1, "{}", report.instance);
        }
    }
    let elapsed = timer.elapsed();
    println!("PASS 3: strictly positive sharing images fill the preimputation hyperplane for (n,k) in (3,2),(3,3),(4,2) ({elapsed:?})");
}

#[test]
fn a4_marginal_images() {
    let timer = Instant::now();
    let mut opts = SuiteOptions::new(3);
    opts.ks = vec![2, 3];
    opts.random_games = 10;
    let result = run_suite::<Rat>(Suite::Th2, &opts).unwrap();
    assert_all_hold(&result, "marginal images");
    assert_eq!(result.summary.skipped, 0);
    // every instance checked the generator structure, not just set equality
    for report in &result.reports {
        assert_eq!(report.stats["image_vertices"], 1, "{}", report.instance);
        assert_eq!(report.stats["image_rays"], 2, "{}", report.instance);
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 60, "marginal-image suite");
    println!(
        "PASS 4: marginal images equal the prefix-chain systems with the predicted vertex and rays, all 6 permutations, k in 2..3 ({elapsed:?})"
    );
}

#[test]
fn a5_selector_images() {
    let timer = Instant::now();
    let mut opts = SuiteOptions::new(3);
    opts.ks = vec![2];
    opts.random_games = 5;
    let result = run_suite::<Rat>(Suite::Th3, &opts).unwrap();
    assert_all_hold(&result, "selector images");
    // 24 selectors per game, and every report states whether the two
    // blocked-collection bounds coincide
    assert!(result.reports.len() >= 24 * 5);
    for report in &result.reports {
        assert!(
            report
                .notes
                .iter()
                .any(|n| n.contains("blocked collections")),
            "missing bound note on {}",
            report.instance
        );
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 300, "selector-image sweep");
    println!("PASS 5: selector images match the unblocked rationality systems for all 24 selectors ({elapsed:?})");
}

#[test]
fn a6_image_intersections() {
    let timer = Instant::now();
    let cfg = VerifyConfig::default();

    let pair = games::pair_game::<Rat>();
    let report = verify::verify_image_intersection(&pair, 2, "pair k=2", &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Holds, "{report:?}");
    assert!(report.notes.iter().any(|n| n.contains("empty")));

    let square = games::square_game::<Rat>(3);
    let report = verify::verify_image_intersection(&square, 2, "square k=2", &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Holds, "{report:?}");

    for seed in 0..5u64 {
        let v = games::random_game::<Rat>(3, 100 + seed, GameClass::General);
        let report = verify::verify_image_intersection(&v, 2, "random", &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "seed {seed}: {report:?}");
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 300, "image intersections");
    println!("PASS 6: selector- and permutation-image intersections recover the classical core ({elapsed:?})");
}

/// Criterion 7 as stated: on the first ten seeded monotone 2-balanced
/// games, every last-element selector image of the monotone order-2 core
/// must equal PI ∩ R^n_+ ∩ chain. This identity is falsifiable and the
/// seeded corpus contains a counterexample (see
/// `verify::tests::monotone_selector_image_counterexample_is_witnessed` for
/// the frozen instance and an independent infeasibility proof), so this
/// criterion fails honestly with the witness below rather than being
/// weakened to pass.
#[test]
fn a7_monotone_selector_images() {
    let timer = Instant::now();
    let cfg = VerifyConfig::default();
    let mut games_found: Vec<(u64, SetFunction<Rat>)> = Vec::new();
    let mut seed = 42u64;
    while games_found.len() < 10 {
        let v = games::random_game::<Rat>(3, seed, GameClass::Monotone);
        if kcore::cores::is_k_balanced_monotone(&v, 2, &fm_cfg()).unwrap() {
            games_found.push((seed, v));
        }
        seed += 1;
    }

    let mut failures = Vec::new();
    for (seed, v) in &games_found {
        for sigma in Permutation::all(3) {
            let alpha = sigma.last_member_selector();
            let instance = format!("seed={seed} sigma={}", sigma.describe());
            let report =
                verify::verify_monotone_selector_image(v, 2, &alpha, &instance, &cfg).unwrap();
            assert_ne!(report.verdict, Verdict::Skipped, "{instance}");
            if report.verdict == Verdict::Fails {
                failures.push(format!("{instance}: {:?}", report.witness));
            }
        }
    }
    let elapsed = timer.elapsed();
    assert_within(elapsed, 300, "monotone selector images");
    assert!(
        failures.is_empty(),
        "monotone-image identity falsified on {} of 60 instances:\n{}",
        failures.len(),
        failures.join("\n")
    );
    println!("PASS 7: monotone-core images equal the nonnegative chain systems ({elapsed:?})");
}

#[test]
fn a8_propositions_and_nonemptiness() {
    let timer = Instant::now();
    let cfg = VerifyConfig::default();

    // bounded-image vertex inclusion and hull equality on five monotone
    // 2-balanced games with the uniform sharing rule
    let q = kcore::allocation::SharingFunction::uniform(3);
    let mut checked = 0;
    let mut seed = 42u64;
    while checked < 5 {
        let v = games::random_game::<Rat>(3, seed, GameClass::Monotone);
        seed += 1;
        if !kcore::cores::is_k_balanced_monotone(&v, 2, &fm_cfg()).unwrap() {
            continue;
        }
        let report =
            verify::verify_bounded_image_extremes(&v, 2, &q, &format!("seed={seed}"), &cfg)
                .unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "{report:?}");
        assert!(report.stats["image_vertices"] <= report.stats["source_vertices"]);
        checked += 1;
    }

    // core inclusion on five nonempty-core (convex) games
    for seed in 0..5u64 {
        let v = games::random_game::<Rat>(3, 200 + seed, GameClass::Convex);
        let report =
            verify::verify_core_inclusion(&v, 2, &q, &format!("seed={seed}"), &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "seed {seed}: {report:?}");
    }

    // order-1 monotone core equals positive core on ten random games
    for seed in 0..10u64 {
        let v = games::random_game::<Rat>(3, 300 + seed, GameClass::General);
        let report =
            verify::verify_monotone_equals_positive(&v, &format!("seed={seed}"), &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "seed {seed}: {report:?}");
    }

    // order-2 core nonempty on 50 games including the empty-core pair game
    let pair = games::pair_game::<Rat>();
    let report = verify::verify_order2_nonempty(&pair, "pair", &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Holds, "{report:?}");
    for seed in 0..49u64 {
        let v = games::random_game::<Rat>(3, 400 + seed, GameClass::General);
        let report =
            verify::verify_order2_nonempty(&v, &format!("seed={seed}"), &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "seed {seed}: {report:?}");
    }

    let elapsed = timer.elapsed();
    assert_within(elapsed, 300, "proposition bundle");
    println!("PASS 8: bounded-image extremes, core inclusions, monotone/positive identity, and order-2 nonemptiness ({elapsed:?})");
}

#[test]
fn a9_structured_report_determinism() {
    let timer = Instant::now();
    let mut opts = SuiteOptions::new(3);
    opts.random_games = 2;
    opts.seed = 7;
    let a = run_suite::<Rat>(Suite::All, &opts).unwrap();
    let b = run_suite::<Rat>(Suite::All, &opts).unwrap();
    assert_eq!(a.to_json().into_bytes(), b.to_json().into_bytes());
    let elapsed = timer.elapsed();
    println!("PASS 9: the full suite is byte-reproducible under a fixed seed ({elapsed:?})");
}
