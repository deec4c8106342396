//! Acceptance suite: one test per criterion, each printing a PASS line once
//! its checks hold (run with `--nocapture` to see them). Expected values
//! come from independent oracles implemented in this file: linear scans,
//! brute-force cost evaluation, and a brute-force sensor-FOV check.

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use ccpp::chaos::{rk4_step, sensitivity_probe, ArnoldParams, AugmentedState, DsIndex, ARNOLD_IC};
use ccpp::commands::{cmd_run, cmd_runway};
use ccpp::config::RunConfig;
use ccpp::coverage::{
    coverage_tick, simulate_scan, CoverageState, SensorConfig, SensorScan, Transform2D,
};
use ccpp::export::write_map_files;
use ccpp::gridmap::{CellCoord, MapPoint, OccupancyGrid};
use ccpp::maps::{corridor, walled_room, walled_square_with_wall};
use ccpp::mission::{run_mission, MissionSetup};
use ccpp::planner::{shift, PlannerConfig};
use ccpp::sim::Navigator;
use ccpp::spatial::Quadtree;
use ccpp::zoning::make_zones;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn pass(n: u32, what: &str) {
    println!("acceptance {n:02} PASS — {what}");
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ccpp-acceptance-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn random_grid(rng: &mut ChaCha8Rng, w: usize, h: usize, density: f64) -> OccupancyGrid {
    let pda = (0..w * h)
        .map(|_| {
            if rng.random::<f64>() < density {
                if rng.random::<f64>() < 0.2 {
                    -1
                } else {
                    100
                }
            } else {
                0
            }
        })
        .collect();
    OccupancyGrid::new(w, h, 0.05, MapPoint::new(0.0, 0.0), pda).unwrap()
}

fn sorted(mut v: Vec<CellCoord>) -> Vec<CellCoord> {
    v.sort_by_key(|c| (c.cy, c.cx));
    v
}

// ---------------------------------------------------------------------------
// 1. Quadtree oracle: radius queries equal a linear scan, exactly.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_01_quadtree_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
    for _ in 0..50 {
        let w = rng.random_range(1..=64);
        let h = rng.random_range(1..=64);
        let density = rng.random_range(0.0..=0.6);
        let grid = random_grid(&mut rng, w, h, density);
        let qt = Quadtree::build(&grid);
        assert_eq!(qt.len(), grid.free_cell_count());
        for _ in 0..20 {
            let center = CellCoord::new(
                rng.random_range(-8..w as i64 + 8),
                rng.random_range(-8..h as i64 + 8),
            );
            let radius = rng.random_range(0.0..=19.0);
            let got = sorted(qt.query_radius(center, radius));
            let want = sorted(
                grid.free_cells()
                    .filter(|c| c.distance_sq(center) <= radius * radius)
                    .collect(),
            );
            assert_eq!(got, want, "query mismatch at {center:?} r={radius}");
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < 5.0,
        "oracle sweep took {elapsed:.2} s (budget 5 s)"
    );
    pass(1, "1000 radius queries equal the linear scan exactly");
}

// ---------------------------------------------------------------------------
// 2. Quadtree performance: radius-19 queries on a ~1e5-free-cell map finish
//    under 2 ms median.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_02_quadtree_performance() {
    let grid = walled_room(18.0, 18.0, 0.05); // 129_600 free cells
    assert!(grid.free_cell_count() > 100_000);
    let qt = Quadtree::build(&grid);
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE02);
    let mut durations = Vec::new();
    let mut total_hits = 0usize;
    for _ in 0..101 {
        let center = CellCoord::new(rng.random_range(0..362), rng.random_range(0..362));
        let t0 = Instant::now();
        let hits = qt.query_radius(center, 19.0);
        durations.push(t0.elapsed());
        total_hits += hits.len();
    }
    durations.sort();
    let median = durations[durations.len() / 2];
    assert!(
        median.as_secs_f64() < 0.002,
        "median radius-19 query took {median:?} (budget 2 ms)"
    );
    assert!(total_hits > 0);
    pass(2, "median radius-19 query under 2 ms on a 1.3e5-point tree");
}

// ---------------------------------------------------------------------------
// 3. RK4 order: halving dt cuts the error vs. a fine reference ~16x.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_03_rk4_order() {
    let base = ArnoldParams::default(); // A=0.5, B=0.25, C=0.25
    let start = AugmentedState::new(ARNOLD_IC, MapPoint::new(0.0, 0.0));
    let integrate = |dt: f64| {
        let steps = (10.0 / dt).round() as usize;
        let params = ArnoldParams { dt, ..base };
        let mut s = start;
        for _ in 0..steps {
            s = rk4_step(&s, &params, DsIndex::X);
        }
        s
    };
    let reference = integrate(1e-4);
    let max_err = |s: &AugmentedState| {
        [
            s.x - reference.x,
            s.y - reference.y,
            s.z - reference.z,
            s.pos.x - reference.pos.x,
            s.pos.y - reference.pos.y,
        ]
        .iter()
        .map(|e| e.abs())
        .fold(0.0f64, f64::max)
    };
    let e_coarse = max_err(&integrate(0.1));
    let e_fine = max_err(&integrate(0.05));
    let ratio = e_coarse / e_fine;
    assert!(
        (8.0..=32.0).contains(&ratio),
        "error ratio {ratio:.2} outside [8, 32] (coarse {e_coarse:.3e}, fine {e_fine:.3e})"
    );
    pass(3, "halving dt from 0.1 to 0.05 shrinks the error ~16x");
}

// ---------------------------------------------------------------------------
// 4. Chaos sensitivity: a 1e-8 nudge diverges past 1e-2 at the recorded
//    horizon. The crossing step 128 was recorded from the oracle run of
//    `sensitivity_probe` with the default parameters; the assertion allows
//    +-20% for cross-platform floating-point wiggle.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_04_chaos_sensitivity() {
    const RECORDED_CROSSING_STEP: f64 = 128.0;
    let params = ArnoldParams::default();
    let a = AugmentedState::new(ARNOLD_IC, MapPoint::new(0.0, 0.0));
    let mut b = a;
    b.x += 1e-8;
    let sep = sensitivity_probe(&a, &b, &params, DsIndex::X, 10_000);
    let crossing = sep
        .iter()
        .position(|&d| d > 1e-2)
        .expect("orbits must diverge within 10^4 steps") as f64;
    let window = RECORDED_CROSSING_STEP * 0.8..=RECORDED_CROSSING_STEP * 1.2;
    assert!(
        window.contains(&crossing),
        "crossing step {crossing} outside 128 +- 20%"
    );
    pass(
        4,
        "1e-8 perturbation exceeds 1e-2 separation at step 128 (+-20%)",
    );
}

// ---------------------------------------------------------------------------
// 5. Worker oracle: the covered set equals a brute-force FOV check over
//    every free cell, with the same angle discretization and strict
//    dist < range test.
// ---------------------------------------------------------------------------
fn fov_oracle(grid: &OccupancyGrid, tf: &Transform2D, scan: &SensorScan) -> HashSet<usize> {
    let mut out = HashSet::new();
    for cell in grid.free_cells() {
        let p = tf.apply(grid.cell_to_map(cell));
        let alpha = ((p.y.atan2(p.x).to_degrees()).floor() as i64).rem_euclid(360) as u16;
        if let Some(range) = scan.range_at(alpha) {
            if (p.x * p.x + p.y * p.y).sqrt() < range {
                out.insert(grid.index_of(cell).unwrap());
            }
        }
    }
    out
}

#[test]
fn acceptance_05_worker_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE05);
    let mut trials = 0;
    while trials < 100 {
        let w = rng.random_range(8..=32);
        let h = rng.random_range(8..=32);
        let density = rng.random_range(0.0..0.4);
        let grid = random_grid(&mut rng, w, h, density);
        let free: Vec<CellCoord> = grid.free_cells().collect();
        if free.len() < 4 {
            continue;
        }
        let qt = Quadtree::build(&grid);
        let (zt, ct) = make_zones(&grid, 2, rng.random()).unwrap();
        let mut state = CoverageState::new(zt, ct);

        let cell = free[rng.random_range(0..free.len())];
        let corner = grid.cell_to_map(cell);
        let pose = MapPoint::new(
            corner.x + rng.random_range(0.005..0.045),
            corner.y + rng.random_range(0.005..0.045),
        );
        let heading = rng.random_range(-3.2..3.2);
        let sensor = SensorConfig {
            max_range: rng.random_range(0.2..1.5),
            fov: match rng.random_range(0..3) {
                0 => (0.0, std::f64::consts::TAU),
                1 => (-1.047, 1.047),
                _ => (-1.57, 1.57),
            },
        };

        let (scan, tf) = simulate_scan(pose, heading, &grid, &sensor, 0.0).unwrap();
        let expected = fov_oracle(&grid, &tf, &scan);
        coverage_tick(
            pose, heading, 0.0, &mut state, &qt, &grid, &sensor, 1, 101.0,
        )
        .unwrap();
        let got: HashSet<usize> = (0..grid.pda().len())
            .filter(|&i| state.cells.is_covered(i))
            .collect();
        assert_eq!(got, expected, "trial {trials} mismatch");
        trials += 1;
    }
    pass(
        5,
        "100 random scenes: covered set equals the brute-force FOV oracle",
    );
}

// ---------------------------------------------------------------------------
// 6. Coverage bookkeeping: tc monotone; zone counters conserve the flag
//    count; recomputing tc from raw flags matches within 1e-9 relative.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_06_coverage_bookkeeping() {
    // Scripted tick sequence with per-tick invariant checks.
    let grid = {
        let mut b = ccpp::maps::MapBuilder::new(160, 120, 0.05, MapPoint::new(0.0, 0.0));
        b.border(1, 100)
            .fill_rect(60, 40, 70, 80, 100)
            .fill_rect(100, 20, 120, 40, -1);
        b.build().unwrap()
    };
    let qt = Quadtree::build(&grid);
    let (zt, ct) = make_zones(&grid, 6, 13).unwrap();
    let mut state = CoverageState::new(zt, ct);
    let sensor = SensorConfig {
        max_range: 1.5,
        fov: (0.0, std::f64::consts::TAU),
    };
    let mut last_tc = 0.0;
    for i in 0..120 {
        let t = i as f64 * 0.2;
        let pose = MapPoint::new(
            0.6 + 0.05 * (i % 120) as f64,
            3.0 + 1.5 * (i as f64 * 0.21).sin(),
        );
        if !grid.is_free(grid.map_to_cell(pose)) {
            continue;
        }
        let tick =
            coverage_tick(pose, 0.3 * t, t, &mut state, &qt, &grid, &sensor, 1, 100.0).unwrap();
        assert!(tick.tc >= last_tc, "tc decreased at tick {i}");
        last_tc = tick.tc;
        let flags = state.cells.covered_count();
        let counters: usize = state.zones.rows().iter().map(|r| r.n_covered).sum();
        assert_eq!(counters, flags, "zone counters diverged from flags");
        let recomputed = flags as f64 / state.total_free() as f64 * 100.0;
        let tol = 1e-9 * recomputed.max(1.0);
        assert!((recomputed - tick.tc).abs() <= tol, "tc drifted from flags");
    }
    assert!(last_tc > 0.0);

    // The same invariants over a real mission's recorded metrics.
    let grid = walled_room(8.0, 8.0, 0.05);
    let qt = Quadtree::build(&grid);
    let (zt, ct) = make_zones(&grid, 8, 4).unwrap();
    let nav = Navigator::new(&grid, MapPoint::new(4.025, 4.025), 0.22, 0.2, 0.2, 0.2).unwrap();
    let out = run_mission(MissionSetup {
        grid: &grid,
        qt: &qt,
        coverage: CoverageState::new(zt, ct),
        nav,
        params: ArnoldParams::default(),
        planner: PlannerConfig {
            dc: 80.0,
            ..PlannerConfig::default()
        },
        sensor: SensorConfig {
            max_range: 2.0,
            fov: (0.0, std::f64::consts::TAU),
        },
        partitions: 1,
        max_sim_seconds: f64::INFINITY,
    })
    .unwrap();
    let mut last = 0.0;
    for &(_, tc) in &out.metrics {
        assert!(tc >= last, "mission tc series not monotone");
        last = tc;
    }
    let flags = out.coverage.cells.covered_count();
    let counters: usize = out.coverage.zones.rows().iter().map(|r| r.n_covered).sum();
    assert_eq!(counters, flags);
    let recomputed = flags as f64 / out.coverage.total_free() as f64 * 100.0;
    assert!((recomputed - out.report.tc_percent).abs() <= 1e-9 * recomputed);
    pass(
        6,
        "tc monotone, counters conserved, Eq-from-flags matches at every tick",
    );
}

// ---------------------------------------------------------------------------
// 7. Shift argmin audit: returned cost is minimal over the query (first
//    candidate wins ties) and the empty query returns Cost::Max unchanged.
// ---------------------------------------------------------------------------
fn brute_cost(grid: &OccupancyGrid, cell: CellCoord, l: f64, prev: Option<MapPoint>) -> f64 {
    let reach = l.ceil() as i64 + 1;
    let mut sum = 0.0;
    let mut n = 0;
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            if ((dx * dx + dy * dy) as f64).sqrt() > l {
                continue;
            }
            n += 1;
            sum += match grid.value(CellCoord::new(cell.cx + dx, cell.cy + dy)) {
                Some(v) => v.abs() as f64,
                None => 500.0,
            };
        }
    }
    let g = sum / n as f64;
    match prev {
        Some(p) => g + grid.cell_to_map(cell).distance(p),
        None => g,
    }
}

#[test]
fn acceptance_07_shift_argmin_audit() {
    // The r=2, l=1 walkthrough fixture: the one free cell with an entirely
    // free neighborhood must win.
    let mut pda = vec![100i8; 49];
    for (cx, cy) in [(1usize, 2usize), (1, 3), (1, 4), (0, 3), (2, 3)] {
        pda[cy * 7 + cx] = 0;
    }
    let grid = OccupancyGrid::new(7, 7, 0.05, MapPoint::new(0.0, 0.0), pda).unwrap();
    let qt = Quadtree::build(&grid);
    let tp = grid.cell_to_map(CellCoord::new(3, 3));
    let out = shift(tp, tp, true, &qt, &grid, 2.0, 1.0);
    assert_eq!(out.tp, grid.cell_to_map(CellCoord::new(1, 3)));
    assert_eq!(brute_cost(&grid, CellCoord::new(1, 3), 1.0, None), 0.0);

    // 50 random fixtures.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE07);
    let mut empties = 0;
    for _ in 0..50 {
        let w = rng.random_range(6..40);
        let h = rng.random_range(6..40);
        let density = rng.random_range(0.2..0.7);
        let grid = random_grid(&mut rng, w, h, density);
        let qt = Quadtree::build(&grid);
        let r = rng.random_range(1.0..8.0);
        let l = rng.random_range(1.0..5.0);
        let span_x = w as f64 * 0.05;
        let span_y = h as f64 * 0.05;
        let tp = MapPoint::new(
            rng.random_range(-0.1..span_x + 0.1),
            rng.random_range(-0.1..span_y + 0.1),
        );
        let prev = MapPoint::new(rng.random_range(0.0..span_x), rng.random_range(0.0..span_y));
        let out = shift(tp, prev, true, &qt, &grid, r, l);
        let query = qt.query_radius(grid.map_to_cell(tp), r);
        if query.is_empty() {
            assert!(out.cost.is_max(), "empty query must return Cost::Max");
            assert_eq!(out.tp, tp, "empty query must leave tp unchanged");
            empties += 1;
            continue;
        }
        let got = out.cost.finite().unwrap();
        let mut best = f64::INFINITY;
        let mut first_argmin = None;
        for &cell in &query {
            let cost = brute_cost(&grid, cell, l, Some(prev));
            assert!(
                got <= cost + 1e-9,
                "returned cost {got} above queried cell cost {cost}"
            );
            if cost < best {
                best = cost;
                first_argmin = Some(cell);
            }
        }
        assert_eq!(out.tp, grid.cell_to_map(first_argmin.unwrap()));
        assert!((got - best).abs() <= 1e-9);
    }
    assert!(empties > 0, "fixture sweep never exercised the empty query");
    pass(
        7,
        "shift is the first argmin over every query; empty query is Cost::Max",
    );
}

// ---------------------------------------------------------------------------
// 8. End-to-end desk mission: 20 m x 20 m empty room, SR 3.5 m, v 0.22 m/s,
//    dc 90%, 20 zones, n_iter = ns = 20. Terminates with tc >= 90 under
//    60 s wall-clock and 120 simulated minutes; identical seeds give
//    byte-identical artifacts.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_08_desk_mission() {
    let dir = temp_dir("desk");
    let grid = walled_room(20.0, 20.0, 0.05);
    write_map_files(&grid, &dir, "room").unwrap();
    let config_path = dir.join("mission.cfg");
    fs::write(
        &config_path,
        "map = room.yaml\nseed = 7\nv = 0.22\ndc = 90\nsr = 3.5\nzones = 20\nn_iter = 20\nns = 20\n",
    )
    .unwrap();

    let started = Instant::now();
    let cfg_a =
        RunConfig::load_with_overrides(&config_path, None, Some(dir.join("out-a"))).unwrap();
    let a = cmd_run(&cfg_a).unwrap();
    let wall = started.elapsed().as_secs_f64();

    assert!(a.report.reached_dc, "mission missed dc");
    assert!(a.report.tc_percent >= 90.0);
    assert!(
        a.report.ct_minutes < 120.0,
        "simulated CT {:.1} min exceeds 120",
        a.report.ct_minutes
    );
    assert!(wall < 60.0, "wall-clock {wall:.1} s exceeds 60");

    let cfg_b =
        RunConfig::load_with_overrides(&config_path, None, Some(dir.join("out-b"))).unwrap();
    let b = cmd_run(&cfg_b).unwrap();
    for name in [
        "report.txt",
        "trajectory.csv",
        "metrics.csv",
        "coverage.ppm",
        "zones.ppm",
    ] {
        let bytes_a = fs::read(a.out_dir.join(name)).unwrap();
        let bytes_b = fs::read(b.out_dir.join(name)).unwrap();
        assert_eq!(bytes_a, bytes_b, "{name} differs between identical runs");
    }
    println!(
        "  desk mission: tc {:.2}% in CT {:.2} min, {:.1} s wall",
        a.report.tc_percent, a.report.ct_minutes, wall
    );
    pass(8, "desk mission reaches 90% and reruns byte-identically");
}

// ---------------------------------------------------------------------------
// 9. Scaled square-hall reproduction: 32 m x 32 m with one interior wall,
//    SR 3.5, 40 zones, n_iter = ns = 20, dc 97%. Pass = termination with
//    the bookkeeping and shift-argmin invariants holding throughout (the
//    shift audit runs inside the planner for every replacement); the
//    simulated CT is informational.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_09_square_hall_reproduction() {
    let grid = walled_square_with_wall(32.0, 0.05);
    let qt = Quadtree::build(&grid);
    let (zt, ct) = make_zones(&grid, 40, 21).unwrap();
    let nav = Navigator::new(&grid, MapPoint::new(8.025, 8.025), 0.22, 0.2, 0.2, 0.2).unwrap();
    let out = run_mission(MissionSetup {
        grid: &grid,
        qt: &qt,
        coverage: CoverageState::new(zt, ct),
        nav,
        params: ArnoldParams::default(),
        planner: PlannerConfig {
            n_iter: 20,
            ns: 20,
            dc: 97.0,
            audit_shift: true, // argmin audit on every replacement
            ..PlannerConfig::default()
        },
        sensor: SensorConfig {
            max_range: 3.5,
            fov: (0.0, std::f64::consts::TAU),
        },
        partitions: 1,
        max_sim_seconds: f64::INFINITY,
    })
    .unwrap();

    assert!(out.report.reached_dc, "mission missed dc = 97%");
    let mut last = 0.0;
    for &(_, tc) in &out.metrics {
        assert!(tc >= last, "tc series not monotone");
        last = tc;
    }
    let flags = out.coverage.cells.covered_count();
    let counters: usize = out.coverage.zones.rows().iter().map(|r| r.n_covered).sum();
    assert_eq!(counters, flags);
    println!(
        "  square hall: tc {:.2}% in CT {:.2} simulated min ({} hops, {} goals); \
         reference implementation reported 39.28 min on this layout (informational)",
        out.report.tc_percent, out.report.ct_minutes, out.report.hops, out.report.goals_dispatched
    );
    pass(
        9,
        "scaled square-hall mission terminates with invariants intact",
    );
}

// ---------------------------------------------------------------------------
// 10. Runway diagnostic: average inter-update distance below SR at 5 m/s
//     with SR 5 m, and at 3 m/s with SR 7.5 m.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_10_runway_diagnostic() {
    let dir = temp_dir("runway");
    let grid = corridor(100.0, 4.0, 0.05);
    write_map_files(&grid, &dir, "runway").unwrap();
    for (v, sr) in [(5.0_f64, 5.0_f64), (3.0, 7.5)] {
        let config_path = dir.join(format!("runway-{v}-{sr}.cfg"));
        fs::write(
            &config_path,
            format!(
                "map = runway.yaml\nseed = 1\nv = {v}\nsr = {sr}\nzones = 4\nstart_x = 1.0\nstart_y = 2.0\nout_dir = out-{v}-{sr}\n"
            ),
        )
        .unwrap();
        let cfg = RunConfig::load(&config_path).unwrap();
        let stats = cmd_runway(&cfg).unwrap();
        assert!(
            stats.average_m < sr,
            "average inter-update distance {:.2} m not below SR {sr} m at v={v}",
            stats.average_m
        );
        assert!(!stats.coverage_gap);
        println!(
            "  runway v={v} SR={sr}: avg {:.3} m, max {:.3} m, min {:.3} m over {} updates",
            stats.average_m, stats.max_m, stats.min_m, stats.updates
        );
    }
    pass(
        10,
        "coverage updates outpace the robot at 5 m/s (SR 5) and 3 m/s (SR 7.5)",
    );
}

// ---------------------------------------------------------------------------
// 11. Partition independence: the parallel worker at 2, 4, and 8 partitions
//     finishes in exactly the single-partition state on 20 random scenes.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_11_partition_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE11);
    let mut scenes = 0;
    while scenes < 20 {
        let w = rng.random_range(24..=64);
        let h = rng.random_range(24..=64);
        let density = rng.random_range(0.0..0.35);
        let grid = random_grid(&mut rng, w, h, density);
        let free: Vec<CellCoord> = grid.free_cells().collect();
        if free.len() < 16 {
            continue;
        }
        let qt = Quadtree::build(&grid);
        let k = rng.random_range(2..6);
        let (zt, ct) = make_zones(&grid, k, rng.random()).unwrap();
        let base = CoverageState::new(zt, ct);

        // A handful of ticks from random free poses.
        let mut poses = Vec::new();
        for _ in 0..6 {
            let cell = free[rng.random_range(0..free.len())];
            let corner = grid.cell_to_map(cell);
            poses.push((
                MapPoint::new(corner.x + 0.02, corner.y + 0.02),
                rng.random_range(-3.0..3.0),
            ));
        }
        let sensor = SensorConfig {
            max_range: rng.random_range(0.4..1.2),
            fov: (0.0, std::f64::consts::TAU),
        };

        let run = |partitions: usize| {
            let mut state = base.clone();
            for (i, &(pose, heading)) in poses.iter().enumerate() {
                coverage_tick(
                    pose,
                    heading,
                    i as f64 * 0.2,
                    &mut state,
                    &qt,
                    &grid,
                    &sensor,
                    partitions,
                    101.0,
                )
                .unwrap();
            }
            state
        };

        let serial = run(1);
        for partitions in [2usize, 4, 8] {
            let parallel = run(partitions);
            assert_eq!(
                serial.tc(),
                parallel.tc(),
                "tc differs at {partitions} partitions"
            );
            for ind in 0..grid.pda().len() {
                assert_eq!(
                    serial.cells.is_covered(ind),
                    parallel.cells.is_covered(ind),
                    "flag {ind} differs at {partitions} partitions"
                );
            }
            for (a, b) in serial.zones.rows().iter().zip(parallel.zones.rows()) {
                assert_eq!(a, b, "zone row differs at {partitions} partitions");
            }
        }
        scenes += 1;
    }
    pass(
        11,
        "2/4/8-partition workers equal the single-partition state exactly",
    );
}
