//! End-to-end acceptance suite. Each test is one contract-level guarantee
//! and prints its own pass/fail line via the harness.

mod common;

use common::{random_micro_instance, t1};
use evacshare::exact::{solve_exact, ExactConfig, SolveStatus};
use evacshare::experiment::{
    export_csv, generate_instance, run_sweep, GenConfig, Method,
};
use evacshare::heuristic::{greedy_construct, solve_local_search, LocalSearchConfig};
use evacshare::instance::LocationKind;
use evacshare::mip::{build_model, export_lp, parse_lp, MipMode};
use evacshare::oracle::{solve_brute_force, OracleLimits};
use evacshare::plan::{check_feasibility, evacuation_percentage, PlanViolationCode};
use std::time::Instant;

/// The branch-and-bound solver must agree with the exhaustive reference
/// solver — objective and canonical plan — on a broad seeded micro corpus,
/// fast enough for routine CI.
#[test]
fn exact_matches_the_reference_solver_on_200_micro_instances() {
    let started = Instant::now();
    let mut binding = 0;
    for seed in 0..200u64 {
        let inst = random_micro_instance(seed, 3, 4, 2);
        if inst.t_max < 13.0 {
            binding += 1;
        }
        let reference =
            solve_brute_force(&inst, &OracleLimits::default()).expect("within reference limits");
        let outcome = solve_exact(&inst, &ExactConfig::default());
        assert_eq!(outcome.status, SolveStatus::Optimal, "seed {seed}");
        assert_eq!(
            outcome.plan.evacuated_total, reference.evacuated_total,
            "objective diverged on seed {seed}"
        );
        assert_eq!(outcome.plan, reference, "canonical plans diverged on seed {seed}");
    }
    assert!(
        (60..=140).contains(&binding),
        "deadline mix drifted: {binding}/200 tight deadlines"
    );
    assert!(
        started.elapsed().as_secs() < 120,
        "corpus exceeded its two-minute budget"
    );
}

/// On the reference scenario, shrinking the deadline steps the optimum
/// from 6 (full pickup) to 5 (partial pickup) to 0 (nobody reaches a
/// gathering place), and the greedy construction matches the optimizers on
/// every rung.
#[test]
fn deadline_ladder_is_identical_for_oracle_exact_and_greedy() {
    for (t_max, expected) in [(8.0, 6), (6.0, 5), (2.0, 0)] {
        let mut inst = t1();
        inst.t_max = t_max;
        let oracle = solve_brute_force(&inst, &OracleLimits::default()).unwrap();
        let exact = solve_exact(&inst, &ExactConfig::default());
        let greedy = greedy_construct(&inst);
        assert_eq!(oracle.evacuated_total, expected, "oracle at t_max {t_max}");
        assert_eq!(exact.plan.evacuated_total, expected, "exact at t_max {t_max}");
        assert_eq!(greedy.evacuated_total, expected, "greedy at t_max {t_max}");
        for plan in [&oracle, &exact.plan, &greedy] {
            assert!(check_feasibility(&inst, plan).is_feasible(), "t_max {t_max}");
        }
    }
}

/// Four surgical corruptions — seat capacity, household demand, deadline,
/// stored timestamp — must each trigger exactly its own violation code,
/// and the untouched plan must stay clean.
#[test]
fn checker_pinpoints_each_mutation_class_without_false_positives() {
    let inst = t1();
    let plan = solve_exact(&inst, &ExactConfig::default()).plan;

    let clean = check_feasibility(&inst, &plan);
    assert!(
        clean.is_feasible() && clean.violations.is_empty(),
        "false positive on the untouched plan: {clean:?}"
    );

    // Vehicle shrinks below its onboard load.
    let mut capacity_cut = inst.clone();
    capacity_cut.locations[0].capacity = Some(5);
    expect_single(&check_feasibility(&capacity_cut, &plan).violations, PlanViolationCode::CapacityExceeded);

    // Fewer people live at the pickup than the route boards.
    let mut demand_cut = inst.clone();
    demand_cut.locations[1].demand = 2;
    expect_single(&check_feasibility(&demand_cut, &plan).violations, PlanViolationCode::DemandExceeded);

    // Deadline moves below the arrival time.
    let mut deadline_cut = inst.clone();
    deadline_cut.t_max = 6.5;
    expect_single(&check_feasibility(&deadline_cut, &plan).violations, PlanViolationCode::DeadlineViolated);

    // A stored departure drifts past the tolerance.
    let mut stamped = plan.clone();
    stamped.routes[0].stops[0].depart_time += 1e-3;
    expect_single(&check_feasibility(&inst, &stamped).violations, PlanViolationCode::TimestampMismatch);
}

fn expect_single(violations: &[evacshare::plan::PlanViolation], code: PlanViolationCode) {
    assert_eq!(violations.len(), 1, "expected exactly one {code:?}, got {violations:?}");
    assert_eq!(violations[0].code, code, "wrong code: {violations:?}");
}

/// The strengthened model on the reference scenario must have exactly the
/// variable and constraint counts that an independent index expansion
/// predicts, and the LP text must reparse to the same counts.
#[test]
fn strengthened_model_counts_match_an_independent_expansion() {
    let inst = t1();
    let n = inst.len();
    let kind = |i: usize| inst.locations[i].kind;
    let owners: Vec<usize> = (0..n).filter(|&i| kind(i) == LocationKind::VehicleOwner).collect();
    let carless: Vec<usize> = (0..n).filter(|&i| kind(i) == LocationKind::Carless).collect();
    let settlements: Vec<usize> = (0..n).filter(|&i| kind(i) != LocationKind::Gathering).collect();

    // Arc survival under the strengthened fixings: no self-loops, owner
    // locations only start their own vehicle's route, nothing departs a
    // gathering place, nothing arrives back at an owner location.
    let arc = |k: usize, i: usize, j: usize| {
        i != j
            && (kind(i) != LocationKind::VehicleOwner || i == k)
            && kind(i) != LocationKind::Gathering
            && kind(j) != LocationKind::VehicleOwner
    };
    let arcs: Vec<(usize, usize, usize)> = owners
        .iter()
        .flat_map(|&k| {
            (0..n).flat_map(move |i| (0..n).map(move |j| (k, i, j)))
        })
        .filter(|&(k, i, j)| arc(k, i, j))
        .collect();

    // Variables: arcs, service flags and shared clocks per settlement,
    // pickup counters and loads per (settlement, vehicle).
    let expected_vars =
        arcs.len() + settlements.len() * 2 + settlements.len() * owners.len() * 2;

    // Constraint families, counting only rows that keep at least one term
    // after the fixings.
    let departures = owners.len();
    let flow: usize = owners
        .iter()
        .flat_map(|&k| settlements.iter().map(move |&j| (k, j)))
        .filter(|&(k, j)| j != k)
        .filter(|&(k, j)| {
            (0..n).any(|i| arc(k, i, j)) || (0..n).any(|l| arc(k, j, l))
        })
        .count();
    let gather_total = 1;
    let gather_per_vehicle = owners.len();
    let own_household = owners.len();
    let service_bounds = carless.len() * 2;
    let pickup_links = carless.len() * owners.len();
    let start_loads = owners.len();
    let load_links = carless.len() * owners.len();
    let load_props = arcs.iter().filter(|&&(_, _, j)| kind(j) == LocationKind::Carless).count();
    let time_props = load_props;
    let deadlines = arcs.iter().filter(|&&(_, _, j)| kind(j) == LocationKind::Gathering).count();
    let load_caps = settlements.len() * owners.len();
    let expected_rows = departures
        + flow
        + gather_total
        + gather_per_vehicle
        + own_household
        + service_bounds
        + pickup_links
        + start_loads
        + load_links
        + load_props
        + time_props
        + deadlines
        + load_caps;

    assert_eq!(arcs.len(), 3, "surviving route arcs");
    assert_eq!((expected_vars, expected_rows), (11, 16));

    let model = build_model(&inst, MipMode::Strengthened);
    assert_eq!(model.count_by_prefix("x_"), arcs.len());
    assert_eq!(model.variables.len(), expected_vars);
    assert_eq!(model.constraints.len(), expected_rows);

    let parsed = parse_lp(&export_lp(&model)).expect("exported LP text reparses");
    assert_eq!(parsed.variable_count(), model.variables.len());
    assert_eq!(parsed.constraint_count(), model.constraints.len());
}

/// Across the default ratio × deadline grid the exact solver must finish
/// every cell to optimality, and within every ratio column the evacuation
/// percentage must never drop as the deadline grows. The ratio axis is
/// reported, not asserted: geometry changes with the ratio.
#[test]
fn exact_sweep_is_optimal_everywhere_and_monotone_in_the_deadline() {
    let ratios = [0.3, 0.4, 0.5, 0.6, 0.7];
    let t_maxes = [5.0, 7.0, 9.0, 11.0, 13.0, 15.0];
    let report = run_sweep(
        &GenConfig::default(),
        &ratios,
        &t_maxes,
        &[Method::Exact],
        &ExactConfig::default(),
    );
    assert_eq!(report.rows.len(), ratios.len() * t_maxes.len());
    for row in &report.rows {
        assert_eq!(
            row.status, "optimal",
            "cell (r={}, t_max={}) did not close", row.r_ratio, row.t_max
        );
    }
    for ratio in ratios {
        let eps: Vec<f64> = report
            .rows
            .iter()
            .filter(|r| r.r_ratio == ratio)
            .map(|r| r.ep.expect("optimal cells carry a percentage"))
            .collect();
        assert_eq!(eps.len(), t_maxes.len());
        assert!(
            eps.windows(2).all(|w| w[0] <= w[1]),
            "EP fell as the deadline grew in ratio column {ratio}: {eps:?}"
        );
    }
    // For the record (shown under --nocapture): the ratio-axis trend.
    let widest: Vec<f64> = report
        .rows
        .iter()
        .filter(|r| r.t_max == 15.0)
        .map(|r| r.ep.unwrap())
        .collect();
    println!("EP at t_max=15 across ratios {ratios:?}: {widest:?}");
}

/// Whenever the fleet has seats for everyone and the deadline dwarfs any
/// two-leg trip plus boarding, the optimizer must evacuate 100%.
#[test]
fn everyone_evacuates_when_seats_and_deadline_suffice() {
    for (seed, ratio) in [(0u64, 0.6), (1, 0.6), (2, 0.7), (3, 0.7)] {
        let config = GenConfig {
            n_households: 8,
            n_gathering: 3,
            r_ratio: ratio,
            seed,
            ..GenConfig::default()
        };
        let mut inst = generate_instance(&config).unwrap();
        let fleet: i64 = inst.owners().iter().map(|&i| inst.capacity_of(i)).sum();
        assert!(
            fleet >= inst.total_demand(),
            "seed {seed} ratio {ratio}: fleet {fleet} cannot cover {}",
            inst.total_demand()
        );
        let longest_leg = inst
            .travel_time
            .iter()
            .flatten()
            .fold(0.0f64, |a, &b| a.max(b));
        inst.t_max = 2.0 * longest_leg + inst.t_p * inst.total_demand() as f64 + 1.0;

        let outcome = solve_exact(&inst, &ExactConfig::default());
        assert_eq!(outcome.status, SolveStatus::Optimal);
        let ep = evacuation_percentage(&inst, &outcome.plan).unwrap();
        assert_eq!(ep, 1.0, "seed {seed} ratio {ratio} stranded someone");
    }
}

/// Heuristics are bounded by the optimum, always produce checker-clean
/// plans, and handle the default-size scenario in well under a second.
#[test]
fn heuristics_never_beat_exact_and_always_pass_the_checker() {
    for seed in 0..200u64 {
        let inst = random_micro_instance(seed, 3, 4, 2);
        let best = solve_exact(&inst, &ExactConfig::default());
        let greedy = greedy_construct(&inst);
        let improved = solve_local_search(&inst, &LocalSearchConfig::default());
        for (name, plan) in [("greedy", &greedy), ("local-search", &improved)] {
            assert!(
                plan.evacuated_total <= best.plan.evacuated_total,
                "{name} beat the optimum on seed {seed}"
            );
            let report = check_feasibility(&inst, plan);
            assert!(report.is_feasible(), "{name} infeasible on seed {seed}: {report:?}");
        }
    }

    let inst = generate_instance(&GenConfig::default()).unwrap();
    let started = Instant::now();
    let plan = solve_local_search(&inst, &LocalSearchConfig::default());
    let elapsed = started.elapsed();
    assert!(check_feasibility(&inst, &plan).is_feasible());
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "default-size local search took {elapsed:?}"
    );
}

/// Same seeds in, same bytes out: the generator and every solver must be
/// reproducible run to run, and sweep results must not depend on the
/// worker count (timings excluded).
#[test]
fn outputs_are_byte_identical_across_runs_and_worker_counts() {
    let config = GenConfig::default();
    assert_eq!(
        generate_instance(&config).unwrap().to_json(),
        generate_instance(&config).unwrap().to_json()
    );

    let inst = generate_instance(&GenConfig { t_max: 9.0, ..GenConfig::default() }).unwrap();
    let first = solve_exact(&inst, &ExactConfig::default());
    let second = solve_exact(&inst, &ExactConfig::default());
    assert_eq!(first, second, "exact runs diverged");
    assert_eq!(first.plan.to_json(), second.plan.to_json());
    assert_eq!(greedy_construct(&inst).to_json(), greedy_construct(&inst).to_json());
    let ls = LocalSearchConfig::default();
    assert_eq!(
        solve_local_search(&inst, &ls).to_json(),
        solve_local_search(&inst, &ls).to_json()
    );
    let micro = random_micro_instance(11, 3, 4, 2);
    let limits = OracleLimits::default();
    assert_eq!(
        solve_brute_force(&micro, &limits).unwrap().to_json(),
        solve_brute_force(&micro, &limits).unwrap().to_json()
    );

    let base = GenConfig { n_households: 8, n_gathering: 4, ..GenConfig::default() };
    let grid = (
        [0.4, 0.6],
        [7.0, 11.0],
        [Method::Exact, Method::Greedy],
    );
    let sweep_with = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("worker pool")
            .install(|| run_sweep(&base, &grid.0, &grid.1, &grid.2, &ExactConfig::default()))
    };
    let mut narrow = sweep_with(1);
    let mut wide = sweep_with(4);
    // Wall-clock readings are the one legitimately nondeterministic column.
    for row in narrow.rows.iter_mut().chain(wide.rows.iter_mut()) {
        row.seconds = 0.0;
    }
    assert_eq!(narrow, wide, "sweep results depend on the worker count");
    assert_eq!(export_csv(&narrow).unwrap(), export_csv(&wide).unwrap());
}
