//! Acceptance suite: every release criterion as one test, each printing a
//! pass/fail line. Tolerances are pinned here, not configurable.
//!
//! Run with `cargo test -p gossip-core --test acceptance -- --nocapture`
//! to see the per-criterion report.

use gossip_core::analytic::{self, CartesianFactor, ClockMode};
use gossip_core::gossip::{
    build_operator, lambda2_of, laplacian_from_weights, spectrum, ProbabilityAssignment,
};
use gossip_core::oracle;
use gossip_core::quantum;
use gossip_core::rng::SplitMix64;
use gossip_core::simulator::{self, SimConfig};
use gossip_core::tables::{self, CellStatus, Family};
use gossip_core::topology::{self, Topology};
use gossip_core::Assignment;
use std::collections::BTreeMap;
use std::time::Instant;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

/// 1. The four-vertex catalog reproduces its reference spectra exactly.
#[test]
fn criterion_01_four_vertex_catalog() {
    let clock = Instant::now();
    let rows = tables::catalog();
    let mut worst: f64 = 0.0;
    for row in &rows {
        let (topo, assignment) = (row.build)();
        let got = lambda2_of(&topo, &assignment).unwrap();
        worst = worst.max((got - row.lambda2).abs());
    }
    let elapsed = clock.elapsed();
    report(
        "1 (four-vertex catalog)",
        worst <= 1e-9 && elapsed.as_secs_f64() < 1.0,
        &format!(
            "6 rows, worst deviation {worst:.2e}, {:.0} ms",
            elapsed.as_secs_f64() * 1e3
        ),
    );
}

fn grid_sweep(
    family: Family,
) -> (usize, usize, usize, f64, Vec<String>) {
    let report = tables::verify_all().unwrap();
    let mut matched = 0;
    let mut documented = 0;
    let mut unexplained = 0;
    let mut worst_matched: f64 = 0.0;
    let mut notes = Vec::new();
    for cell in report.grid.iter().filter(|c| c.family == family) {
        match cell.status {
            CellStatus::Match => {
                matched += 1;
                worst_matched = worst_matched.max((cell.got_s - cell.table_s).abs());
                assert_eq!(cell.got_m, cell.table_m, "m at ({}, {})", cell.n, cell.k);
            }
            CellStatus::Documented => {
                documented += 1;
                // the published number must be reproduced by the truncation
                // that generated it, so the difference is fully explained
                let model =
                    tables::discrepancy_model_value(family, cell.n, cell.k).unwrap();
                assert!(
                    (model - cell.table_s).abs() <= 1e-6,
                    "({}, {}): truncation model {model} vs table {}",
                    cell.n,
                    cell.k,
                    cell.table_s
                );
                notes.push(format!(
                    "({},{}) documented: solver {:.8} vs published {:.8}",
                    cell.n, cell.k, cell.got_s, cell.table_s
                ));
            }
            CellStatus::Mismatch => unexplained += 1,
        }
    }
    (matched, documented, unexplained, worst_matched, notes)
}

/// 2. Symmetric-star sweep against the published boundary indices and
///    optima; the boundary index agrees on all 54 cells, and the optimum
///    exceptions are exactly the documented truncation artifacts.
#[test]
fn criterion_02_symstar_sweep() {
    let clock = Instant::now();
    let (matched, documented, unexplained, worst, notes) = grid_sweep(Family::Symstar);
    let elapsed = clock.elapsed().as_secs_f64();
    for n in notes {
        println!("  {n}");
    }
    // the boundary index matches the published grid everywhere, including
    // the cells whose optimum is a documented truncation artifact
    let full = tables::verify_all().unwrap();
    let m_exact = full
        .grid
        .iter()
        .filter(|c| c.family == Family::Symstar)
        .all(|c| c.got_m == c.table_m);
    report(
        "2 (symmetric star sweep)",
        m_exact
            && matched == 45
            && documented == 9
            && unexplained == 0
            && worst <= 1e-5
            && elapsed < 30.0,
        &format!(
            "54/54 boundary indices, {matched} optima matched (worst {worst:.2e}), \
             {documented} documented, {unexplained} unexplained, {elapsed:.1} s"
        ),
    );
}

/// 3. Cored-star sweep, same contract; the only boundary-index deviations
///    are the documented k=2 cells, where the feasible interior point the
///    published grid missed is strictly better.
#[test]
fn criterion_03_ccs_sweep() {
    let (matched, documented, unexplained, worst, notes) = grid_sweep(Family::Ccs);
    for n in notes {
        println!("  {n}");
    }
    let full = tables::verify_all().unwrap();
    let m_accounted = full.grid.iter().filter(|c| c.family == Family::Ccs).all(|c| {
        if c.k == 2 {
            c.got_m == 1 && c.table_m == 0 && c.got_s < c.table_s
        } else {
            c.got_m == c.table_m
        }
    });
    report(
        "3 (cored star sweep)",
        m_accounted && matched == 48 && documented == 6 && unexplained == 0 && worst <= 1e-5,
        &format!(
            "48/48 boundary indices beyond k=2, {matched} optima matched (worst {worst:.2e}), \
             {documented} documented, {unexplained} unexplained"
        ),
    );
}

fn analytic_instances() -> Vec<(&'static str, Topology, gossip_core::OptResult)> {
    let mut out: Vec<(&'static str, Topology, gossip_core::OptResult)> = vec![(
        "complete(4)",
        topology::complete(4),
        analytic::solve_complete_uniform(4).unwrap(),
    )];
    out.push((
        "cycle(4)",
        topology::cycle(4).unwrap(),
        analytic::solve_cycle_uniform(4).unwrap(),
    ));
    out.push((
        "wheel(5) uniform",
        topology::wheel(5).unwrap(),
        analytic::solve_wheel(5, ClockMode::UniformClock).unwrap(),
    ));
    out.push((
        "wheel(6) uniform",
        topology::wheel(6).unwrap(),
        analytic::solve_wheel(6, ClockMode::UniformClock).unwrap(),
    ));
    out.push((
        "wheel(6) weighted",
        topology::wheel(6).unwrap(),
        analytic::solve_wheel(6, ClockMode::NonuniformClock).unwrap(),
    ));
    let prism = [
        CartesianFactor::from_topology(topology::complete(2)).unwrap(),
        CartesianFactor::from_topology(topology::complete(3)).unwrap(),
    ];
    out.push((
        "prism",
        topology::cartesian_product(&[topology::complete(2), topology::complete(3)]).unwrap(),
        analytic::solve_cartesian_uniform(&prism).unwrap(),
    ));
    out.push((
        "path(4) uniform",
        topology::path(4),
        analytic::solve_path_uniform(4).unwrap(),
    ));
    out.push((
        "path(7) uniform",
        topology::path(7),
        analytic::solve_path_uniform(7).unwrap(),
    ));
    out.push((
        "path(5) weighted",
        topology::path(5),
        analytic::solve_path_nonuniform(5).unwrap(),
    ));
    out.push((
        "symstar(3,2) uniform",
        topology::symstar(3, 2),
        analytic::solve_symstar_uniform(3, 2).unwrap(),
    ));
    out.push((
        "symstar(5,2) uniform",
        topology::symstar(5, 2),
        analytic::solve_symstar_uniform(5, 2).unwrap(),
    ));
    out.push((
        "symstar(2,3) uniform",
        topology::symstar(2, 3),
        analytic::solve_symstar_uniform(2, 3).unwrap(),
    ));
    out.push((
        "symstar(3,2) weighted",
        topology::symstar(3, 2),
        analytic::solve_symstar_nonuniform(3, 2, 0.0).unwrap(),
    ));
    out.push((
        "ccs(3,2) uniform",
        topology::ccs(3, 2),
        analytic::solve_ccs_uniform(3, 2).unwrap(),
    ));
    out.push((
        "ccs(3,4) uniform",
        topology::ccs(3, 4),
        analytic::solve_ccs_uniform(3, 4).unwrap(),
    ));
    out.push((
        "ccs(3,1 tail) weighted",
        topology::ccs(3, 2),
        analytic::solve_ccs_nonuniform(3, 1).unwrap(),
    ));
    out.push((
        "ccs(3,2 tails) weighted",
        topology::ccs(3, 3),
        analytic::solve_ccs_nonuniform(3, 2).unwrap(),
    ));
    out.push((
        "ccs2(3,2,1) weighted",
        topology::ccs2(3, 2, 1),
        analytic::solve_ccs2_nonuniform(3, 2, 1).unwrap(),
    ));
    out.push((
        "palm(4,2) weighted",
        topology::palm(4, 2),
        analytic::solve_palm_nonuniform(4, 2).unwrap(),
    ));
    out.push((
        "palm(1,2) weighted",
        topology::palm(1, 2),
        analytic::solve_palm_nonuniform(1, 2).unwrap(),
    ));
    out.push((
        "lollipop(4,2) weighted",
        topology::lollipop(4, 2),
        analytic::solve_lollipop_nonuniform(4, 2).unwrap(),
    ));
    out.push((
        "lollipop(2,5) weighted",
        topology::lollipop(2, 5),
        analytic::solve_lollipop_nonuniform(2, 5).unwrap(),
    ));
    out.push((
        "two-coupled(2,1,2)",
        topology::two_coupled(2, 1, 2),
        analytic::solve_two_coupled_uniform(2, 1, 2).unwrap(),
    ));
    out.push((
        "two-coupled(1,3,1)",
        topology::two_coupled(1, 3, 1),
        analytic::solve_two_coupled_uniform(1, 3, 1).unwrap(),
    ));
    out
}

/// 4. Spectral certificate: rebuilding the operator reproduces the returned
///    optimum everywhere; closed forms disagree only where documented (the
///    wheel from n = 7 up), and there the eigensolver value is authoritative.
#[test]
fn criterion_04_spectral_certificate() {
    let mut worst: f64 = 0.0;
    for (name, topo, result) in analytic_instances() {
        let measured = lambda2_of(&topo, &result.assignment).unwrap();
        worst = worst.max((measured - result.lambda2).abs());
        assert!(
            !result.diagnostics.formula_mismatch,
            "{name} unexpectedly flagged"
        );
    }
    // documented: the published uniform-clock wheel value stops matching its
    // printed construction at n = 7; the solver must flag it and return the
    // spectral value
    let wheel7 = analytic::solve_wheel::<f64>(7, ClockMode::UniformClock).unwrap();
    let wheel7_measured =
        lambda2_of(&topology::wheel(7).unwrap(), &wheel7.assignment).unwrap();
    let flagged_ok = wheel7.diagnostics.formula_mismatch
        && (wheel7.lambda2 - wheel7_measured).abs() <= 1e-12
        && (wheel7.diagnostics.formula_lambda2.unwrap() - 13.0 / 14.0).abs() <= 1e-12;

    // documented: the prism prose value 5/14 contradicts the product
    // equation; the equation value is what the construction certifies
    let prism = analytic::solve_cartesian_uniform(&[
        CartesianFactor::from_topology(topology::complete(2)).unwrap(),
        CartesianFactor::from_topology(topology::complete(3)).unwrap(),
    ])
    .unwrap();
    let prism_ok = (prism.lambda2 - 6.0 / 7.0).abs() <= 1e-12
        && (prism.lambda2 - 5.0 / 14.0).abs() > 0.4
        && tables::discrepancies()
            .iter()
            .any(|d| d.family == Family::Prism);

    report(
        "4 (spectral certificate)",
        worst <= 1e-9 && flagged_ok && prism_ok,
        &format!(
            "24 instances re-verified, worst |eigensolver - returned| = {worst:.2e}; \
             wheel(7) uniform flagged: formula 13/14 vs spectral {wheel7_measured:.9}; \
             prism certified at 6/7 with the 5/14 prose value documented"
        ),
    );
}

/// 5. Weighted clocks never lose to uniform clocks over both grids, with the
///    published margin at the (5,2) star.
#[test]
fn criterion_05_mode_ordering() {
    let mut worst_violation: f64 = f64::NEG_INFINITY;
    for k in 2..=10usize {
        for n in 3..=8usize {
            let u = analytic::solve_symstar_uniform::<f64>(n, k).unwrap();
            let v = analytic::solve_symstar_nonuniform::<f64>(n, k, 0.0).unwrap();
            worst_violation = worst_violation.max(v.lambda2 - u.lambda2);
            let cu = analytic::solve_ccs_uniform::<f64>(n, k).unwrap();
            let cv = analytic::solve_ccs_nonuniform::<f64>(n, k - 1).unwrap();
            worst_violation = worst_violation.max(cv.lambda2 - cu.lambda2);
        }
    }
    let ordering_ok = worst_violation <= 1e-12;

    // strict improvement at the (5,2) star against the published uniform
    // optimum 0.98295454 (see tables::discrepancies for why the certified
    // uniform value is smaller)
    let nonuniform = analytic::solve_symstar_nonuniform::<f64>(5, 2, 0.0).unwrap();
    let published = tables::SYMSTAR_S[0][2];
    let improvement_vs_published = published - nonuniform.lambda2;
    let certified_uniform = analytic::solve_symstar_uniform::<f64>(5, 2).unwrap();
    let strictly_better = nonuniform.lambda2 < certified_uniform.lambda2;
    report(
        "5 (uniform vs weighted ordering)",
        ordering_ok && improvement_vs_published >= 0.0029 && strictly_better,
        &format!(
            "worst ordering violation {worst_violation:.2e}; (5,2): 0.98 vs published \
             {published} (margin {improvement_vs_published:.5}) and vs certified \
             {:.8}",
            certified_uniform.lambda2
        ),
    );
}

/// 6. The detailed-balance construction: balance holds to 1e-12 and the
///    operator's second eigenvalue complements the weight Laplacian's.
#[test]
fn criterion_06_detailed_balance() {
    let topologies = [topology::path(5), topology::star(5), topology::ccs(3, 2)];
    let mut worst_balance: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    for (t_idx, topo) in topologies.iter().enumerate() {
        let mut rng = SplitMix64::stream(606, t_idx as u64);
        for _ in 0..50 {
            let raw: Vec<f64> = (0..topo.n_edges()).map(|_| rng.next_f64() + 1e-3).collect();
            let total: f64 = raw.iter().sum();
            let weights: BTreeMap<(usize, usize), f64> = topo
                .edges
                .iter()
                .zip(raw.iter())
                .map(|(&e, w)| (e, 0.5 * w / total))
                .collect();
            let a = analytic::detailed_balance_from_weights(topo, &weights).unwrap();
            for &(i, j) in &topo.edges {
                let fwd = a.clock[i] * a.p(i, j);
                let bwd = a.clock[j] * a.p(j, i);
                worst_balance = worst_balance.max((fwd - bwd).abs());
            }
            let op = build_operator(topo, &a).unwrap();
            let s = spectrum(&op).unwrap();
            let l = laplacian_from_weights(topo.n_vertices, &weights);
            let eigs = l.symmetric_eigenvalues(1e-9).unwrap();
            let l_lambda2 = eigs[eigs.len() - 2];
            worst_identity = worst_identity.max((s.lambda2 - (1.0 - l_lambda2)).abs());
        }
    }
    report(
        "6 (detailed balance)",
        worst_balance <= 1e-12 && worst_identity <= 1e-10,
        &format!(
            "150 weight draws: max imbalance {worst_balance:.2e}, \
             max spectral-identity deviation {worst_identity:.2e}"
        ),
    );
}

/// 7. The numeric oracle cannot improve any certified analytic optimum, and
///    grid scans agree with the closed forms. The wheel entries from n = 7 up
///    are the documented exception: there the oracle is the referee and finds
///    the better point the published comparison implies.
#[test]
fn criterion_07_oracle_non_improvability() {
    let mut worst_gain: f64 = 0.0;
    let mut count = 0;
    for (name, topo, result) in analytic_instances() {
        if topo.n_vertices > 15 {
            continue;
        }
        let better = oracle::local_search(&topo, result.mode, &result.assignment, 50_000).unwrap();
        let gain = result.lambda2 - better.lambda2;
        assert!(
            gain < 1e-6,
            "{name}: oracle improved {:.12} -> {:.12}",
            result.lambda2,
            better.lambda2
        );
        worst_gain = worst_gain.max(gain);
        count += 1;
    }

    // grid agreement at the published resolution
    let grid_cases = [
        ("cycle(4)", topology::cycle(4).unwrap(), 0.75),
        ("complete(4)", topology::complete(4), 2.0 / 3.0),
        ("wheel(6)", topology::wheel(6).unwrap(), 11.0 / 12.0),
    ];
    let mut worst_grid: f64 = 0.0;
    for (name, topo, expected) in grid_cases {
        let r = oracle::exhaustive_grid(&topo, ClockMode::UniformClock, 1e-3).unwrap();
        let dev = (r.lambda2 - expected).abs();
        assert!(dev <= 1e-3, "{name}: grid {} vs analytic {expected}", r.lambda2);
        worst_grid = worst_grid.max(dev);
    }

    // the open wheel question, resolved by the oracle: the rim-heavy
    // construction is beatable for n >= 7, and the winner reaches the
    // advertised uniform-clock value
    let wheel7 = analytic::solve_wheel::<f64>(7, ClockMode::UniformClock).unwrap();
    let t7 = topology::wheel(7).unwrap();
    let resolved =
        oracle::local_search(&t7, ClockMode::UniformClock, &wheel7.assignment, 50_000).unwrap();
    println!(
        "  wheel(7) uniform resolution: construction {:.9}, oracle {:.9}, formula {:.9}",
        wheel7.lambda2,
        resolved.lambda2,
        13.0 / 14.0
    );
    let wheel_resolved = (resolved.lambda2 - 13.0 / 14.0).abs() <= 1e-6;

    report(
        "7 (oracle non-improvability)",
        worst_gain < 1e-6 && worst_grid <= 1e-3 && wheel_resolved,
        &format!(
            "{count} certified optima unimproved (max gain {worst_gain:.2e}); \
             grids within {worst_grid:.2e}; wheel(7) resolved to 13/14"
        ),
    );
}

fn random_assignment(topo: &Topology, rng: &mut SplitMix64) -> Assignment {
    let n = topo.n_vertices;
    let mut clock: Vec<f64> = (0..n).map(|_| rng.next_f64() + 0.05).collect();
    let total: f64 = clock.iter().sum();
    for c in clock.iter_mut() {
        *c /= total;
    }
    let mut transition = BTreeMap::new();
    for v in 0..n {
        let nbrs = topo.neighbors(v);
        let raw: Vec<f64> = nbrs.iter().map(|_| rng.next_f64() + 0.05).collect();
        let row_total: f64 = raw.iter().sum();
        for (w, r) in nbrs.into_iter().zip(raw) {
            transition.insert((v, w), r / row_total);
        }
    }
    ProbabilityAssignment::new(clock, transition)
}

/// 8. Quantum collapse: the coefficient-space operator reproduces the
///    classical second eigenvalue for the analytic optimum and for twenty
///    seeded random assignments, at qudit dimensions two and three, and the
///    coefficient swap equals Hilbert-space conjugation.
#[test]
fn criterion_08_quantum_collapse() {
    let mut worst: f64 = 0.0;
    for d in [2usize, 3] {
        // path on three vertices, analytic weighted-clock optimum
        let path3 = topology::path(3);
        let analytic_path = analytic::solve_path_nonuniform::<f64>(3).unwrap();
        let rep = quantum::verify_spectral_collapse(&path3, &analytic_path.assignment, d, 1e-9)
            .unwrap();
        assert!(rep.ok, "path(3) d={d}: {rep:?}");
        worst = worst.max(rep.max_deviation);

        // complete graph on three vertices, analytic optimum
        let k3 = topology::complete(3);
        let analytic_k3 = analytic::solve_complete_uniform::<f64>(3).unwrap();
        let rep =
            quantum::verify_spectral_collapse(&k3, &analytic_k3.assignment, d, 1e-9).unwrap();
        assert!(rep.ok, "complete(3) d={d}: {rep:?}");
        assert!((rep.lambda2_classical - 0.5).abs() < 1e-12);
        worst = worst.max(rep.max_deviation);

        for (t_idx, topo) in [path3, k3].iter().enumerate() {
            let mut rng = SplitMix64::stream(808, (d * 10 + t_idx) as u64);
            for _ in 0..20 {
                let a = random_assignment(topo, &mut rng);
                let rep = quantum::verify_spectral_collapse(topo, &a, d, 1e-9).unwrap();
                assert!(rep.ok, "random assignment d={d}: deviation {}", rep.max_deviation);
                worst = worst.max(rep.max_deviation);
            }
        }
    }

    // coefficient swap against Hilbert-space conjugation at d = 2, N = 2, 3
    let mut worst_swap: f64 = 0.0;
    for n in [2usize, 3] {
        let basis = quantum::gellmann_basis::<f64>(2).unwrap();
        let mut rng = SplitMix64::stream(909, n as u64);
        for _ in 0..5 {
            let rho = quantum::random_density(2, n, &mut rng);
            let u = quantum::swap_unitary::<f64>(2, n, 0, n - 1);
            let conjugated = u.matmul(&rho).matmul(&u.adjoint());
            let direct = quantum::expand_density(&conjugated, &basis, n).unwrap();
            let via = quantum::swap_coefficients(
                &quantum::expand_density(&rho, &basis, n).unwrap(),
                0,
                n - 1,
            )
            .unwrap();
            for (x, y) in direct.coeffs.iter().zip(via.coeffs.iter()) {
                worst_swap = worst_swap.max((x - y).abs());
            }
        }
    }
    report(
        "8 (quantum collapse)",
        worst <= 1e-9 && worst_swap <= 1e-10,
        &format!(
            "84 collapse checks, worst deviation {worst:.2e}; \
             swap oracle worst deviation {worst_swap:.2e}"
        ),
    );
}

/// 9. Simulator consistency: empirical decay factors are spectrally
///    consistent, traces are bit-identical under one seed, and the state sum is
///    conserved over 1e5 ticks.
#[test]
fn criterion_09_simulator() {
    let cases: Vec<(&str, Topology, Assignment, f64)> = vec![
        (
            "complete(4)",
            topology::complete(4),
            analytic::solve_complete_uniform(4).unwrap().assignment,
            2.0 / 3.0,
        ),
        (
            "cycle(4)",
            topology::cycle(4).unwrap(),
            analytic::solve_cycle_uniform(4).unwrap().assignment,
            0.75,
        ),
        (
            "path(4)",
            topology::path(4),
            analytic::solve_path_uniform(4).unwrap().assignment,
            0.9,
        ),
    ];
    let mut details = Vec::new();
    for (name, topo, assignment, lambda2) in &cases {
        let factor =
            simulator::estimate_decay_rate(topo, assignment, 200, 100, 42).unwrap();
        // never statistically faster than the spectral bound, never stalled
        assert!(
            factor >= lambda2 * lambda2 * 0.9 && factor < 1.0,
            "{name}: factor {factor} vs lambda2 {lambda2}"
        );
        details.push(format!("{name} factor {factor:.4} (lambda2 {lambda2:.4})"));
    }
    // complete graph contracts the mean square error by exactly lambda2
    let complete_factor = simulator::estimate_decay_rate(
        &cases[0].1,
        &cases[0].2,
        200,
        100,
        42,
    )
    .unwrap();
    let complete_tight = (complete_factor - 2.0 / 3.0).abs() <= 0.05 * (2.0 / 3.0);

    // determinism
    let config = SimConfig {
        seed: 7,
        rates: simulator::rates_from_clock(&cases[1].2.clock),
        max_ticks: 5000,
        initial_state: vec![1.0, 0.0, 0.0, -1.0],
        record_states: false,
    };
    let t1 = simulator::run(&cases[1].1, &cases[1].2, &config).unwrap();
    let t2 = simulator::run(&cases[1].1, &cases[1].2, &config).unwrap();
    let deterministic = t1.to_csv() == t2.to_csv();

    // conservation over 1e5 ticks
    let mut worst_drift: f64 = 0.0;
    for (_, topo, assignment, _) in &cases {
        let config = SimConfig {
            seed: 11,
            rates: simulator::rates_from_clock(&assignment.clock),
            max_ticks: 100_000,
            initial_state: (0..topo.n_vertices).map(|i| 1.0 + i as f64).collect(),
            record_states: false,
        };
        let trace = simulator::run(topo, assignment, &config).unwrap();
        let start: f64 = config.initial_state.iter().sum();
        let end: f64 = trace.final_state.iter().sum();
        worst_drift = worst_drift.max(((end - start) / start).abs());
    }
    report(
        "9 (simulator consistency)",
        complete_tight && deterministic && worst_drift <= 1e-12,
        &format!(
            "{}; deterministic traces; relative sum drift {worst_drift:.2e}",
            details.join("; ")
        ),
    );
}

/// 10. Every reference value is either reproduced or on the documented
///     discrepancy list; nothing is out of reach at desk scale.
#[test]
fn criterion_10_full_accounting() {
    let rep = tables::verify_all().unwrap();
    let (matched, documented, unexplained) = rep.counts();
    report(
        "10 (full accounting)",
        unexplained == 0 && matched + documented == 114,
        &format!("{matched} matched, {documented} documented, {unexplained} unexplained"),
    );
}
