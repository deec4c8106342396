//! Mission orchestration: the deterministic event loop that ties the
//! chaotic planner, the navigator, and the coverage calculator together.
//!
//! One mission loops generate/execute over trajectory sets until total
//! coverage reaches `dc`. Every `n_iter` accumulated iterations (each set
//! counts `ns`), or after `bad_run_limit` consecutive low-yield sets, the
//! robot navigates straight to the adjusted centroid of the least-covered
//! zone and the chaotic evolution restarts there from the canonical initial
//! conditions. A set that ends by leaving the map boundary restarts the
//! evolution at a favorable point near the robot instead. Coverage ticks
//! fire at the scan cadence during all motion; simulated time advances only
//! while the robot moves.

use crate::chaos::{ArnoldParams, ARNOLD_IC};
use crate::coverage::{coverage_tick, CoverageState, SensorConfig};
use crate::error::{Error, Result};
use crate::gridmap::{MapPoint, OccupancyGrid};
use crate::planner::{
    cost_g, execute_set, generate_set, set_is_bad, shift, Cost, GoalDispatch, GoalSink, GoalStage,
    NavOutcome, PlannerConfig, SeedRecord, SetOutcome,
};
use crate::sim::{NavEvent, Navigator, PlanProgress};
use crate::spatial::Quadtree;
use crate::zoning::{adjust_centroid, zones_by_coverage};

/// One dispatched navigation goal, as written to the trajectory log.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRecord {
    /// Simulated time at dispatch, seconds.
    pub time: f64,
    pub goal: MapPoint,
    pub was_replaced: bool,
    pub stage: GoalStage,
    pub cost: Cost,
}

/// Mission summary.
#[derive(Debug, Clone)]
pub struct MissionReport {
    /// Simulated time to reach the final coverage, minutes.
    pub ct_minutes: f64,
    pub tc_percent: f64,
    pub dc_percent: f64,
    /// Final per-zone coverage rates, indexed by zone id.
    pub zone_coverage: Vec<f64>,
    pub hops: usize,
    pub sets_generated: usize,
    pub goals_dispatched: usize,
    pub stage1_replacements: usize,
    pub stage2_replacements: usize,
    pub boundary_breaks: usize,
    pub nav_failures: usize,
    pub reached_dc: bool,
}

/// Everything a mission produces in memory.
#[derive(Debug, Clone)]
pub struct MissionOutput {
    pub report: MissionReport,
    pub trajectory: Vec<TrajectoryRecord>,
    /// (stamp, tc) per coverage tick.
    pub metrics: Vec<(f64, f64)>,
    pub coverage: CoverageState,
}

/// Inputs to [`run_mission`]. Build the coverage state with
/// [`crate::zoning::make_zones`] and the navigator with
/// [`Navigator::new`].
pub struct MissionSetup<'a> {
    pub grid: &'a OccupancyGrid,
    pub qt: &'a Quadtree,
    pub coverage: CoverageState,
    pub nav: Navigator,
    pub params: ArnoldParams,
    pub planner: PlannerConfig,
    pub sensor: SensorConfig,
    /// Worker partitions per tick (1 = single-threaded).
    pub partitions: usize,
    /// Watchdog on simulated time, seconds; infinite when not set.
    pub max_sim_seconds: f64,
}

struct Core<'a> {
    grid: &'a OccupancyGrid,
    qt: &'a Quadtree,
    coverage: CoverageState,
    nav: Navigator,
    sensor: SensorConfig,
    dc: f64,
    partitions: usize,
    max_sim_seconds: f64,
    stop: bool,
    ct_at_stop: Option<f64>,
    trajectory: Vec<TrajectoryRecord>,
    metrics: Vec<(f64, f64)>,
}

impl Core<'_> {
    fn tick(&mut self, position: MapPoint, heading: f64, stamp: f64) -> Result<()> {
        let tick = coverage_tick(
            position,
            heading,
            stamp,
            &mut self.coverage,
            self.qt,
            self.grid,
            &self.sensor,
            self.partitions,
            self.dc,
        )?;
        self.metrics.push((stamp, tick.tc));
        if tick.stop && !self.stop {
            self.stop = true;
            self.ct_at_stop = Some(stamp);
        }
        Ok(())
    }
}

impl GoalSink for Core<'_> {
    fn robot_position(&self) -> MapPoint {
        self.nav.state().position
    }

    fn navigate_to(&mut self, goal: &GoalDispatch) -> Result<NavOutcome> {
        self.trajectory.push(TrajectoryRecord {
            time: self.nav.state().time,
            goal: goal.point,
            was_replaced: goal.was_replaced,
            stage: goal.stage,
            cost: goal.cost,
        });
        if self.stop {
            return Ok(NavOutcome::Stopped);
        }
        let plan = match self.nav.plan(self.grid, goal.point) {
            Ok(plan) => plan,
            Err(_) => return Ok(NavOutcome::Failed),
        };
        let mut progress = PlanProgress::new(plan);
        loop {
            let events = self.nav.advance(&mut progress, 1.0);
            let mut reached = false;
            for event in events {
                match event {
                    NavEvent::SensorDue {
                        position,
                        heading,
                        stamp,
                    } => {
                        self.tick(position, heading, stamp)?;
                        if self.stop {
                            return Ok(NavOutcome::Stopped);
                        }
                    }
                    NavEvent::GoalReached { .. } => reached = true,
                }
            }
            if reached {
                return Ok(NavOutcome::Reached);
            }
            if self.nav.state().time > self.max_sim_seconds {
                return Err(Error::Aborted(format!(
                    "simulated time exceeded the {:.0} s watchdog before reaching dc",
                    self.max_sim_seconds
                )));
            }
        }
    }
}

/// Runs a full mission to completion. Terminates when total coverage
/// reaches `dc`; errors when every zone becomes unusable as a hop target or
/// the simulated-time watchdog fires.
pub fn run_mission(setup: MissionSetup<'_>) -> Result<MissionOutput> {
    let MissionSetup {
        grid,
        qt,
        coverage,
        nav,
        params,
        planner: cfg,
        sensor,
        partitions,
        max_sim_seconds,
    } = setup;
    cfg.validate()?;

    let mut core = Core {
        grid,
        qt,
        coverage,
        nav,
        sensor,
        dc: cfg.dc,
        partitions: partitions.max(1),
        max_sim_seconds,
        stop: false,
        ct_at_stop: None,
        trajectory: Vec::new(),
        metrics: Vec::new(),
    };

    let mut hops = 0usize;
    let mut sets = 0usize;
    let mut goals = 0usize;
    let mut stage1_replacements = 0usize;
    let mut stage2_replacements = 0usize;
    let mut boundary_breaks = 0usize;
    let mut nav_failures = 0usize;

    // The sensor turns on before any motion: one tick at t = 0.
    let stamp = core.nav.scan_due().expect("first scan is due at t = 0");
    let (position, heading) = {
        let s = core.nav.state();
        (s.position, s.heading)
    };
    core.tick(position, heading, stamp)?;

    let mut seed = SeedRecord {
        ds: ARNOLD_IC,
        tp: core.nav.state().position,
    };
    let mut iters_since_hop = 0usize;
    let mut consecutive_bad = 0usize;
    let mut boundary_pending = false;
    let mut stalled_passes = 0usize;

    while !core.stop {
        let time_before = core.nav.state().time;
        let tc_before = core.coverage.tc();

        if iters_since_hop >= cfg.n_iter || consecutive_bad >= cfg.bad_run_limit {
            match zone_hop(&mut core, &cfg)? {
                Some(target) => {
                    hops += 1;
                    seed = SeedRecord {
                        ds: ARNOLD_IC,
                        tp: target,
                    };
                    iters_since_hop = 0;
                    consecutive_bad = 0;
                    boundary_pending = false;
                }
                None => break, // coverage reached dc while hopping
            }
        } else {
            if boundary_pending {
                // The previous evolution left the map: restart it at a
                // favorable point near the robot (no navigation, just a
                // new IC).
                let robot = core.nav.state().position;
                let reseed = shift(robot, robot, false, qt, grid, cfg.r, cfg.l);
                seed = SeedRecord {
                    ds: ARNOLD_IC,
                    tp: reseed.tp,
                };
                boundary_pending = false;
            }

            let set = generate_set(seed, &params, &cfg, grid, qt);
            sets += 1;
            // Each set charges `ns` toward the hop budget regardless of an
            // early boundary break.
            iters_since_hop += cfg.ns;
            seed = set.next_seed;
            stage1_replacements += set.replacements;
            if set.outcome == SetOutcome::BoundaryBreak {
                boundary_breaks += 1;
                boundary_pending = true;
            }

            let exec = execute_set(&set.points, &cfg, grid, qt, &mut core)?;
            goals += exec.dispatched;
            stage2_replacements += exec.stage2_replacements;
            nav_failures += exec.nav_failures;
            if exec.stopped {
                break;
            }
            if set_is_bad(set.points.len(), exec.failed_points) {
                consecutive_bad += 1;
            } else if !set.points.is_empty() {
                consecutive_bad = 0;
            }
        }

        // Deterministic livelock guard: a pass that neither moves the robot
        // nor covers a cell leaves the whole system state on a cycle (every
        // goal within the arrival threshold, every other goal unreachable).
        if core.nav.state().time == time_before && core.coverage.tc() == tc_before {
            stalled_passes += 1;
            if stalled_passes >= 64 {
                return Err(Error::Aborted(
                    "mission stalled: 64 consecutive planner passes without \
                     motion or coverage progress"
                        .into(),
                ));
            }
        } else {
            stalled_passes = 0;
        }
    }

    let tc = core.coverage.tc();
    let ct_seconds = core.ct_at_stop.unwrap_or(core.nav.state().time);
    let report = MissionReport {
        ct_minutes: ct_seconds / 60.0,
        tc_percent: tc,
        dc_percent: cfg.dc,
        zone_coverage: core.coverage.zones.rows().iter().map(|r| r.c_z).collect(),
        hops,
        sets_generated: sets,
        goals_dispatched: goals,
        stage1_replacements,
        stage2_replacements,
        boundary_breaks,
        nav_failures,
        reached_dc: tc >= cfg.dc,
    };
    Ok(MissionOutput {
        report,
        trajectory: core.trajectory,
        metrics: core.metrics,
        coverage: core.coverage,
    })
}

/// Navigates to the adjusted centroid of the least-covered zone, falling
/// back to the next-least-covered zones when a centroid is unusable or
/// unreachable. `None` means coverage reached `dc` during the drive.
fn zone_hop(core: &mut Core<'_>, cfg: &PlannerConfig) -> Result<Option<MapPoint>> {
    let robot = core.nav.state().position;
    let order = zones_by_coverage(&core.coverage.zones, robot);
    for zid in order {
        let centroid = core.coverage.zones.rows()[zid].centroid;
        let target = match adjust_centroid(centroid, core.qt, core.grid, cfg.r, cfg.l) {
            Ok(target) => target,
            Err(_) => continue,
        };
        let dispatch = GoalDispatch {
            point: target,
            cost: Cost::Finite(cost_g(core.grid.map_to_cell(target), core.grid, cfg.l)),
            stage: GoalStage::Hop,
            was_replaced: target != centroid,
        };
        match core.navigate_to(&dispatch)? {
            NavOutcome::Reached => return Ok(Some(target)),
            NavOutcome::Stopped => return Ok(None),
            NavOutcome::Failed => continue,
        }
    }
    Err(Error::Aborted(
        "no zone centroid is usable as a hop target".into(),
    ))
}
