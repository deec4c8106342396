//! Chaotic trajectory planner: candidate generation by RK4, obstacle
//! avoidance by cost-guided replacement, and the two-stage set workflow.
//!
//! Stage one integrates the Arnold system for `ns` iterations, building a
//! set of trajectory points and repairing non-viable candidates through
//! [`shift`] (with deterministic DS-index switching when the repair cost is
//! poor). Stage two scrutinizes each point against the tighter threshold
//! `Th2` right before it is dispatched as a navigation goal, replacing bad
//! points from a query around the robot's current position.

use crate::chaos::{rk4_step, ArnoldParams, AugmentedState, DsIndex};
use crate::error::Result;
use crate::gridmap::{CellCoord, MapPoint, OccupancyGrid};
use crate::spatial::Quadtree;

/// Planner tuning. `r` and `l` are in cell lengths.
#[derive(Debug, Clone)]
pub struct PlannerConfig {
    /// Iterations accumulated before a forced hop to the least-covered zone.
    pub n_iter: usize,
    /// Iterations per generation set.
    pub ns: usize,
    /// Stage-one replacement cost threshold.
    pub th1: f64,
    /// Stage-two dispatch cost threshold (smaller than `th1`).
    pub th2: f64,
    /// Quadtree query radius for replacements, cell lengths.
    pub r: f64,
    /// Cost-neighborhood radius, cell lengths.
    pub l: f64,
    /// Desired coverage, percent.
    pub dc: f64,
    /// Arnold coordinate that drives the heading by default.
    pub ds_primary: DsIndex,
    /// Consecutive low-yield sets tolerated before a forced zone hop.
    pub bad_run_limit: usize,
    /// Test instrumentation: re-derive every shift result by linear scan and
    /// panic on any argmin violation.
    pub audit_shift: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            n_iter: 20,
            ns: 20,
            th1: 50.0,
            th2: 25.0,
            r: 19.0,
            l: 6.0,
            dc: 90.0,
            ds_primary: DsIndex::X,
            bad_run_limit: 3,
            audit_shift: false,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        let err = |field: &str, msg: &str| Err(crate::error::Error::config(field, msg));
        if self.ns < 1 {
            return err("ns", "must be >= 1");
        }
        if self.n_iter < self.ns {
            return err("n_iter", "must be >= ns");
        }
        if !(self.th2 > 0.0 && self.th2 < self.th1) {
            return err("th2", "need 0 < th2 < th1");
        }
        if self.r < 1.0 {
            return err("r", "must be >= 1 cell length");
        }
        if self.l < 1.0 {
            return err("l", "must be >= 1 cell length");
        }
        // dc = 0 is legal: the mission succeeds on its first coverage tick.
        if !(self.dc >= 0.0 && self.dc <= 100.0) {
            return err("dc", "need 0 <= dc <= 100");
        }
        Ok(())
    }
}

/// Travel cost of a candidate point. `Max` is a distinguished sentinel that
/// orders above every finite cost; it marks candidates that could not be
/// replaced because no free cell lay within the query radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cost {
    Finite(f64),
    Max,
}

impl Cost {
    pub fn is_max(&self) -> bool {
        matches!(self, Cost::Max)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Cost::Finite(v) => Some(*v),
            Cost::Max => None,
        }
    }

    /// `self >= threshold`; `Max` exceeds every threshold.
    pub fn at_least(&self, threshold: f64) -> bool {
        match self {
            Cost::Finite(v) => *v >= threshold,
            Cost::Max => true,
        }
    }

    fn less_than(&self, other: &Cost) -> bool {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a < b,
            (Cost::Finite(_), Cost::Max) => true,
            (Cost::Max, _) => false,
        }
    }
}

/// A candidate trajectory point with its evaluated cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostedPoint {
    pub tp: MapPoint,
    pub cost: Cost,
}

/// The paired Arnold state and trajectory point that seeds the next set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedRecord {
    pub ds: (f64, f64, f64),
    pub tp: MapPoint,
}

/// Mean assigned value over every integer coordinate within Euclidean
/// distance `l` of `c` (center included): `|occupancy|` for in-bounds
/// coordinates (100 occupied, 1 unknown, 0 free) and 500 for out-of-bounds
/// coordinates. Zero means the whole neighborhood is free space.
pub fn cost_g(c: CellCoord, grid: &OccupancyGrid, l: f64) -> f64 {
    let reach = l.floor() as i64;
    let l_sq = l * l;
    let mut sum = 0.0;
    let mut n = 0u32;
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            if ((dx * dx + dy * dy) as f64) > l_sq {
                continue;
            }
            n += 1;
            sum += match grid.value(CellCoord::new(c.cx + dx, c.cy + dy)) {
                Some(v) => v.unsigned_abs() as f64,
                None => 500.0,
            };
        }
    }
    sum / n as f64
}

/// Replaces a trajectory point by the lowest-cost free cell within `r` cell
/// lengths of it. The cost of a candidate is `g + lambda * f`, with `f` the
/// map-frame distance from the candidate to `tp_prev` (suppressed when
/// `penalize_travel` is false). Ties go to the first candidate in query
/// order. An empty query returns `(Cost::Max, tp)` unchanged.
pub fn shift(
    tp: MapPoint,
    tp_prev: MapPoint,
    penalize_travel: bool,
    qt: &Quadtree,
    grid: &OccupancyGrid,
    r: f64,
    l: f64,
) -> CostedPoint {
    let query = qt.query_radius(grid.map_to_cell(tp), r);
    if query.is_empty() {
        return CostedPoint {
            tp,
            cost: Cost::Max,
        };
    }
    let mut best_cost = f64::INFINITY;
    let mut best = query[0];
    for &cell in &query {
        let mut cost = cost_g(cell, grid, l);
        if penalize_travel {
            cost += grid.cell_to_map(cell).distance(tp_prev);
        }
        if cost < best_cost {
            best_cost = cost;
            best = cell;
        }
    }
    CostedPoint {
        tp: grid.cell_to_map(best),
        cost: Cost::Finite(best_cost),
    }
}

/// `shift` with the optional argmin audit from [`PlannerConfig::audit_shift`].
fn shift_checked(
    tp: MapPoint,
    tp_prev: MapPoint,
    penalize_travel: bool,
    qt: &Quadtree,
    grid: &OccupancyGrid,
    cfg: &PlannerConfig,
) -> CostedPoint {
    let result = shift(tp, tp_prev, penalize_travel, qt, grid, cfg.r, cfg.l);
    if cfg.audit_shift {
        let query = qt.query_radius(grid.map_to_cell(tp), cfg.r);
        if query.is_empty() {
            assert!(result.cost.is_max(), "empty query must return Cost::Max");
            assert_eq!(result.tp, tp, "empty query must leave tp unchanged");
        } else {
            let cost_of = |cell: CellCoord| {
                let mut c = cost_g(cell, grid, cfg.l);
                if penalize_travel {
                    c += grid.cell_to_map(cell).distance(tp_prev);
                }
                c
            };
            let got = result
                .cost
                .finite()
                .expect("non-empty query gives finite cost");
            let first_argmin = query
                .iter()
                .copied()
                .min_by(|a, b| cost_of(*a).partial_cmp(&cost_of(*b)).unwrap())
                .unwrap();
            assert!(
                query.iter().all(|&c| got <= cost_of(c)),
                "shift cost {got} exceeds a queried cell's cost"
            );
            assert_eq!(
                result.tp,
                grid.cell_to_map(first_argmin),
                "shift did not pick the first argmin in query order"
            );
        }
    }
    result
}

/// One point of a generated set, ready for stage-two scrutiny.
#[derive(Debug, Clone, Copy)]
pub struct PlannedPoint {
    pub tp: MapPoint,
    pub cost: Cost,
    /// True when the point is not the raw primary-index RK4 candidate
    /// (shift replacement or DS-index switch).
    pub replaced: bool,
}

/// Why a generation set ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOutcome {
    Complete,
    /// A candidate landed outside the map; it was dropped and generation
    /// stopped early.
    BoundaryBreak,
}

#[derive(Debug, Clone)]
pub struct GeneratedSet {
    pub points: Vec<PlannedPoint>,
    /// Seed for the next set: the last appended (DS, tp) pair.
    pub next_seed: SeedRecord,
    pub outcome: SetOutcome,
    /// Points altered at stage one (shift replacement or DS switch).
    pub replacements: usize,
    /// Points appended with `Cost::Max` (no free cell within `r`).
    pub irreplaceable: usize,
}

/// Stage one: runs up to `ns` RK4 iterations from `seed`, repairing
/// non-viable candidates and stopping early if one leaves the map.
pub fn generate_set(
    seed: SeedRecord,
    params: &ArnoldParams,
    cfg: &PlannerConfig,
    grid: &OccupancyGrid,
    qt: &Quadtree,
) -> GeneratedSet {
    let mut state = AugmentedState::new(seed.ds, seed.tp);
    let mut prev_tp = seed.tp;
    let mut points = Vec::with_capacity(cfg.ns);
    let mut outcome = SetOutcome::Complete;
    let mut replacements = 0;
    let mut irreplaceable = 0;

    for _ in 0..cfg.ns {
        let stepped = rk4_step(&state, params, cfg.ds_primary);
        let tp = stepped.pos;
        let cell = grid.map_to_cell(tp);
        if !grid.in_bounds(cell) {
            outcome = SetOutcome::BoundaryBreak;
            break;
        }
        if grid.is_free(cell) {
            points.push(PlannedPoint {
                tp,
                cost: Cost::Finite(cost_g(cell, grid, cfg.l)),
                replaced: false,
            });
            state = stepped;
            prev_tp = tp;
            continue;
        }

        // Non-viable candidate: try to replace it, switching the DS index
        // when the replacement cost stays at or above Th1. The chosen pair
        // (DS coordinates, point) seeds the next iteration; the one after a
        // switch reverts to the primary index.
        let primary = shift_checked(tp, prev_tp, true, qt, grid, cfg);
        let mut chosen: Option<(CostedPoint, AugmentedState)> = None;
        let mut fallback: Vec<(CostedPoint, AugmentedState)> = Vec::new();
        if !primary.cost.at_least(cfg.th1) {
            chosen = Some((primary, stepped));
        } else {
            fallback.push((primary, stepped));
            for alt in cfg.ds_primary.alternates() {
                let alt_state = rk4_step(&state, params, alt);
                let alt_tp = alt_state.pos;
                let alt_cell = grid.map_to_cell(alt_tp);
                if grid.is_free(alt_cell) {
                    chosen = Some((
                        CostedPoint {
                            tp: alt_tp,
                            cost: Cost::Finite(cost_g(alt_cell, grid, cfg.l)),
                        },
                        alt_state,
                    ));
                    break;
                }
                let shifted = shift_checked(alt_tp, prev_tp, true, qt, grid, cfg);
                if !shifted.cost.at_least(cfg.th1) {
                    chosen = Some((shifted, alt_state));
                    break;
                }
                fallback.push((shifted, alt_state));
            }
        }
        let (point, ds_source) = chosen.unwrap_or_else(|| {
            // Switching exhausted: keep the lowest-cost candidate (first one
            // wins ties). It may still be irreplaceable; stage two retries.
            let mut best = 0;
            for i in 1..fallback.len() {
                if fallback[i].0.cost.less_than(&fallback[best].0.cost) {
                    best = i;
                }
            }
            fallback[best]
        });

        if point.cost.is_max() {
            irreplaceable += 1;
        }
        points.push(PlannedPoint {
            tp: point.tp,
            cost: point.cost,
            replaced: true,
        });
        replacements += 1;
        state = AugmentedState::new(ds_source.ds(), point.tp);
        prev_tp = point.tp;
    }

    GeneratedSet {
        next_seed: SeedRecord {
            ds: state.ds(),
            tp: state.pos,
        },
        points,
        outcome,
        replacements,
        irreplaceable,
    }
}

/// Where a dispatched goal came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoalStage {
    /// A stage-one trajectory point dispatched as generated.
    Stage1,
    /// Replaced during stage-two scrutiny.
    Stage2,
    /// Adjusted least-covered-zone centroid.
    Hop,
}

impl GoalStage {
    pub fn name(self) -> &'static str {
        match self {
            GoalStage::Stage1 => "stage1",
            GoalStage::Stage2 => "stage2",
            GoalStage::Hop => "hop",
        }
    }
}

/// A goal handed to the navigator.
#[derive(Debug, Clone, Copy)]
pub struct GoalDispatch {
    pub point: MapPoint,
    pub cost: Cost,
    pub stage: GoalStage,
    pub was_replaced: bool,
}

/// Outcome of navigating to one goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NavOutcome {
    Reached,
    /// Planning or navigation failed; the goal was skipped.
    Failed,
    /// Coverage reached `dc` while driving; the mission is over.
    Stopped,
}

/// The navigation surface stage two dispatches goals through.
pub trait GoalSink {
    fn robot_position(&self) -> MapPoint;
    fn navigate_to(&mut self, goal: &GoalDispatch) -> Result<NavOutcome>;
}

#[derive(Debug, Clone, Default)]
pub struct ExecReport {
    pub dispatched: usize,
    pub stage2_replacements: usize,
    pub nav_failures: usize,
    /// Points that were irreplaceable at stage one or failed navigation
    /// (each point counted once); feeds bad-run detection.
    pub failed_points: usize,
    /// Coverage reached `dc` mid-set.
    pub stopped: bool,
}

/// Stage two: scrutinizes each point right before dispatch, replacing any
/// non-viable point or any point whose cost is at least `Th2` from a query
/// around the robot's current position (travel cost suppressed).
pub fn execute_set(
    points: &[PlannedPoint],
    cfg: &PlannerConfig,
    grid: &OccupancyGrid,
    qt: &Quadtree,
    nav: &mut dyn GoalSink,
) -> Result<ExecReport> {
    let mut report = ExecReport::default();
    for point in points {
        let mut goal = point.tp;
        let mut cost = point.cost;
        let mut stage2_replaced = false;
        let viable = grid.is_free(grid.map_to_cell(goal));
        if !viable || cost.at_least(cfg.th2) {
            let robot = nav.robot_position();
            let repaired = shift_checked(robot, robot, false, qt, grid, cfg);
            if !repaired.cost.is_max() {
                goal = repaired.tp;
                cost = repaired.cost;
                stage2_replaced = true;
                report.stage2_replacements += 1;
            }
        }
        let dispatch = GoalDispatch {
            point: goal,
            cost,
            stage: if stage2_replaced {
                GoalStage::Stage2
            } else {
                GoalStage::Stage1
            },
            was_replaced: point.replaced || stage2_replaced,
        };
        let mut failed = point.cost.is_max();
        match nav.navigate_to(&dispatch)? {
            NavOutcome::Reached => {
                report.dispatched += 1;
            }
            NavOutcome::Failed => {
                report.dispatched += 1;
                report.nav_failures += 1;
                failed = true;
            }
            NavOutcome::Stopped => {
                report.dispatched += 1;
                report.stopped = true;
                if failed {
                    report.failed_points += 1;
                }
                return Ok(report);
            }
        }
        if failed {
            report.failed_points += 1;
        }
    }
    Ok(report)
}

/// A set is "bad" when more than half its points were irreplaceable at
/// stage one or failed navigation. Empty sets are not counted either way.
pub fn set_is_bad(points: usize, failed_points: usize) -> bool {
    points > 0 && failed_points * 2 > points
}
