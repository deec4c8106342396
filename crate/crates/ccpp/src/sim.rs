//! Deterministic robot simulation: obstacle inflation, a global grid path
//! planner, and a constant-speed polyline follower with a mission clock.
//!
//! Goals are reached by planning a shortest 8-connected path on the inflated
//! grid (diagonal cost sqrt(2), no corner cutting), simplifying it by line
//! of sight, and following it at constant speed `v` with instantaneous
//! rotation. Sensor ticks are due every `cadence` seconds of simulated time;
//! nothing depends on the wall clock.

use crate::error::{Error, Result};
use crate::gridmap::{CellClass, CellCoord, MapPoint, OccupancyGrid};

/// Grid cells blocked after inflating occupied and unknown space by the
/// robot radius.
#[derive(Debug, Clone)]
pub struct Inflation {
    blocked: Vec<bool>,
    width: usize,
    height: usize,
}

impl Inflation {
    pub fn new(grid: &OccupancyGrid, robot_radius: f64) -> Self {
        let width = grid.width();
        let height = grid.height();
        let mut blocked = vec![false; width * height];
        let radius_cells = robot_radius / grid.resolution();
        let reach = radius_cells.floor() as i64;
        let r_sq = radius_cells * radius_cells;
        let mut disc = Vec::new();
        for dy in -reach..=reach {
            for dx in -reach..=reach {
                if ((dx * dx + dy * dy) as f64) <= r_sq {
                    disc.push((dx, dy));
                }
            }
        }
        for cy in 0..height as i64 {
            for cx in 0..width as i64 {
                if grid.class(CellCoord::new(cx, cy)) == CellClass::Free {
                    continue;
                }
                for &(dx, dy) in &disc {
                    let (nx, ny) = (cx + dx, cy + dy);
                    if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
                        blocked[ny as usize * width + nx as usize] = true;
                    }
                }
            }
        }
        Inflation {
            blocked,
            width,
            height,
        }
    }

    pub fn passable(&self, c: CellCoord) -> bool {
        c.cx >= 0
            && c.cy >= 0
            && (c.cx as usize) < self.width
            && (c.cy as usize) < self.height
            && !self.blocked[c.cy as usize * self.width + c.cx as usize]
    }
}

/// Why planning failed. Routine mission events (a goal too close to a wall,
/// a walled-off pocket); the planner's bad-run accounting consumes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanError {
    StartBlocked,
    GoalBlocked,
    Unreachable,
}

impl std::fmt::Display for PlanError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlanError::StartBlocked => write!(f, "start is not in inflated-free space"),
            PlanError::GoalBlocked => write!(f, "goal is not in inflated-free space"),
            PlanError::Unreachable => write!(f, "goal is unreachable"),
        }
    }
}

/// A polyline from start to goal through inflated-free space.
#[derive(Debug, Clone, PartialEq)]
pub struct NavPlan {
    pub waypoints: Vec<MapPoint>,
    pub length: f64,
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Shortest 8-connected grid path on the inflated grid, line-of-sight
/// simplified. Diagonal moves cost sqrt(2) and may not cut corners.
pub fn plan_path(
    start: MapPoint,
    goal: MapPoint,
    grid: &OccupancyGrid,
    inflation: &Inflation,
) -> std::result::Result<NavPlan, PlanError> {
    let start_cell = grid.map_to_cell(start);
    let goal_cell = grid.map_to_cell(goal);
    if !inflation.passable(start_cell) {
        return Err(PlanError::StartBlocked);
    }
    if !inflation.passable(goal_cell) {
        return Err(PlanError::GoalBlocked);
    }
    if start_cell == goal_cell {
        return Ok(NavPlan {
            length: start.distance(goal),
            waypoints: vec![start, goal],
        });
    }

    let cells = astar(start_cell, goal_cell, grid, inflation).ok_or(PlanError::Unreachable)?;

    // Raw route: exact start, cell centers, exact goal.
    let half = grid.resolution() / 2.0;
    let mut route = Vec::with_capacity(cells.len() + 2);
    route.push(start);
    for &c in &cells[1..cells.len() - 1] {
        let p = grid.cell_to_map(c);
        route.push(MapPoint::new(p.x + half, p.y + half));
    }
    route.push(goal);

    let waypoints = simplify_by_los(&route, grid, inflation);
    let length = waypoints
        .windows(2)
        .map(|w| w[0].distance(w[1]))
        .sum::<f64>();
    Ok(NavPlan { waypoints, length })
}

#[derive(PartialEq)]
struct HeapEntry {
    f: f64,
    seq: u64,
    ind: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap pops the greatest entry; invert so the smallest f wins,
        // earliest insertion first on ties.
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

const NEIGHBORS: [(i64, i64, f64); 8] = [
    (1, 0, 1.0),
    (-1, 0, 1.0),
    (0, 1, 1.0),
    (0, -1, 1.0),
    (1, 1, SQRT2),
    (1, -1, SQRT2),
    (-1, 1, SQRT2),
    (-1, -1, SQRT2),
];

fn astar(
    start: CellCoord,
    goal: CellCoord,
    grid: &OccupancyGrid,
    inflation: &Inflation,
) -> Option<Vec<CellCoord>> {
    let w = grid.width();
    let n = w * grid.height();
    let ind = |c: CellCoord| c.cy as usize * w + c.cx as usize;
    let octile = |c: CellCoord| {
        let dx = (c.cx - goal.cx).abs() as f64;
        let dy = (c.cy - goal.cy).abs() as f64;
        dx.max(dy) + (SQRT2 - 1.0) * dx.min(dy)
    };

    let mut g_score = vec![f64::INFINITY; n];
    let mut came_from = vec![usize::MAX; n];
    let mut heap = std::collections::BinaryHeap::new();
    let mut seq = 0u64;
    g_score[ind(start)] = 0.0;
    heap.push(HeapEntry {
        f: octile(start),
        seq,
        ind: ind(start),
    });

    while let Some(entry) = heap.pop() {
        let current = CellCoord::new((entry.ind % w) as i64, (entry.ind / w) as i64);
        let g_here = g_score[entry.ind];
        if entry.f > g_here + octile(current) + 1e-12 {
            continue; // stale entry
        }
        if current == goal {
            let mut path = vec![current];
            let mut at = entry.ind;
            while came_from[at] != usize::MAX {
                at = came_from[at];
                path.push(CellCoord::new((at % w) as i64, (at / w) as i64));
            }
            path.reverse();
            return Some(path);
        }
        for &(dx, dy, cost) in &NEIGHBORS {
            let next = CellCoord::new(current.cx + dx, current.cy + dy);
            if !inflation.passable(next) {
                continue;
            }
            // No corner cutting: a diagonal requires both orthogonal
            // neighbors to be passable.
            if dx != 0
                && dy != 0
                && !(inflation.passable(CellCoord::new(current.cx + dx, current.cy))
                    && inflation.passable(CellCoord::new(current.cx, current.cy + dy)))
            {
                continue;
            }
            let tentative = g_here + cost;
            let ni = ind(next);
            if tentative < g_score[ni] {
                g_score[ni] = tentative;
                came_from[ni] = entry.ind;
                seq += 1;
                heap.push(HeapEntry {
                    f: tentative + octile(next),
                    seq,
                    ind: ni,
                });
            }
        }
    }
    None
}

/// Greedy string pulling: keep extending the current segment while the
/// straight line stays clear of inflated cells.
fn simplify_by_los(
    route: &[MapPoint],
    grid: &OccupancyGrid,
    inflation: &Inflation,
) -> Vec<MapPoint> {
    if route.len() <= 2 {
        return route.to_vec();
    }
    let mut out = vec![route[0]];
    let mut anchor = 0;
    for j in 2..route.len() {
        if segment_blocked(route[anchor], route[j], grid, inflation) {
            out.push(route[j - 1]);
            anchor = j - 1;
        }
    }
    out.push(*route.last().unwrap());
    out
}

/// Whether the straight segment between two map points touches any blocked
/// cell. Exact corner crossings check both side cells, so a diagonal squeeze
/// between two blocked cells counts as blocked.
fn segment_blocked(a: MapPoint, b: MapPoint, grid: &OccupancyGrid, inflation: &Inflation) -> bool {
    let res = grid.resolution();
    let ax = (a.x - grid.origin().x) / res;
    let ay = (a.y - grid.origin().y) / res;
    let bx = (b.x - grid.origin().x) / res;
    let by = (b.y - grid.origin().y) / res;
    let dx = bx - ax;
    let dy = by - ay;
    let len = (dx * dx + dy * dy).sqrt();

    let mut cell = grid.map_to_cell(a);
    if !inflation.passable(cell) {
        return true;
    }
    if len == 0.0 {
        return false;
    }
    let (ux, uy) = (dx / len, dy / len);
    let step_x: i64 = if ux > 0.0 { 1 } else { -1 };
    let step_y: i64 = if uy > 0.0 { 1 } else { -1 };
    let mut t_max_x = if ux == 0.0 {
        f64::INFINITY
    } else if ux > 0.0 {
        (cell.cx as f64 + 1.0 - ax) / ux
    } else {
        (ax - cell.cx as f64) / -ux
    };
    let mut t_max_y = if uy == 0.0 {
        f64::INFINITY
    } else if uy > 0.0 {
        (cell.cy as f64 + 1.0 - ay) / uy
    } else {
        (ay - cell.cy as f64) / -uy
    };
    let t_delta_x = if ux == 0.0 {
        f64::INFINITY
    } else {
        1.0 / ux.abs()
    };
    let t_delta_y = if uy == 0.0 {
        f64::INFINITY
    } else {
        1.0 / uy.abs()
    };

    loop {
        let t = t_max_x.min(t_max_y);
        if t >= len - 1e-12 {
            return false;
        }
        if (t_max_x - t_max_y).abs() < 1e-12 {
            if !inflation.passable(CellCoord::new(cell.cx + step_x, cell.cy))
                || !inflation.passable(CellCoord::new(cell.cx, cell.cy + step_y))
            {
                return true;
            }
            cell = CellCoord::new(cell.cx + step_x, cell.cy + step_y);
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if t_max_x < t_max_y {
            cell = CellCoord::new(cell.cx + step_x, cell.cy);
            t_max_x += t_delta_x;
        } else {
            cell = CellCoord::new(cell.cx, cell.cy + step_y);
            t_max_y += t_delta_y;
        }
        if !inflation.passable(cell) {
            return true;
        }
    }
}

/// Robot pose, simulated clock, and speed.
#[derive(Debug, Clone, Copy)]
pub struct RobotState {
    pub position: MapPoint,
    pub heading: f64,
    /// Simulated seconds since mission start.
    pub time: f64,
    pub v: f64,
}

/// Events emitted while following a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NavEvent {
    /// A coverage tick is due: the pose and stamp to feed the sensor.
    SensorDue {
        position: MapPoint,
        heading: f64,
        stamp: f64,
    },
    /// The robot came within the goal threshold of the plan's end.
    GoalReached { stamp: f64 },
}

/// Arc-length cursor over a plan.
#[derive(Debug, Clone)]
pub struct PlanProgress {
    plan: NavPlan,
    seg: usize,
    seg_offset: f64,
    pub finished: bool,
}

impl PlanProgress {
    pub fn new(plan: NavPlan) -> Self {
        PlanProgress {
            plan,
            seg: 0,
            seg_offset: 0.0,
            finished: false,
        }
    }

    pub fn plan(&self) -> &NavPlan {
        &self.plan
    }

    fn end(&self) -> MapPoint {
        *self.plan.waypoints.last().expect("plan has waypoints")
    }

    /// Moves up to `want` meters along the polyline, updating pose in place.
    /// Returns the distance actually moved and whether the plan ran out.
    fn move_along(&mut self, want: f64, position: &mut MapPoint, heading: &mut f64) -> (f64, bool) {
        let mut remaining = want;
        let mut moved = 0.0;
        while remaining > 0.0 {
            if self.seg + 1 >= self.plan.waypoints.len() {
                return (moved, true);
            }
            let a = self.plan.waypoints[self.seg];
            let b = self.plan.waypoints[self.seg + 1];
            let seg_len = a.distance(b);
            let left = seg_len - self.seg_offset;
            if left <= remaining {
                moved += left;
                remaining -= left;
                self.seg += 1;
                self.seg_offset = 0.0;
                *position = b;
                if seg_len > 0.0 {
                    *heading = (b.y - a.y).atan2(b.x - a.x);
                }
            } else {
                self.seg_offset += remaining;
                moved += remaining;
                let t = self.seg_offset / seg_len;
                *position = MapPoint::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
                *heading = (b.y - a.y).atan2(b.x - a.x);
                remaining = 0.0;
            }
        }
        (moved, false)
    }
}

/// Constant-speed follower with the mission clock and scan scheduler.
#[derive(Debug, Clone)]
pub struct Navigator {
    state: RobotState,
    inflation: Inflation,
    pub goal_threshold: f64,
    pub cadence: f64,
    next_scan: f64,
}

impl Navigator {
    pub fn new(
        grid: &OccupancyGrid,
        start: MapPoint,
        v: f64,
        robot_radius: f64,
        goal_threshold: f64,
        cadence: f64,
    ) -> Result<Self> {
        let inflation = Inflation::new(grid, robot_radius);
        if !inflation.passable(grid.map_to_cell(start)) {
            return Err(Error::Aborted(format!(
                "start position ({:.3}, {:.3}) is not in inflated-free space",
                start.x, start.y
            )));
        }
        Ok(Navigator {
            state: RobotState {
                position: start,
                heading: 0.0,
                time: 0.0,
                v,
            },
            inflation,
            goal_threshold,
            cadence,
            next_scan: 0.0,
        })
    }

    pub fn state(&self) -> &RobotState {
        &self.state
    }

    pub fn inflation(&self) -> &Inflation {
        &self.inflation
    }

    pub fn plan(
        &self,
        grid: &OccupancyGrid,
        goal: MapPoint,
    ) -> std::result::Result<NavPlan, PlanError> {
        plan_path(self.state.position, goal, grid, &self.inflation)
    }

    /// Consumes a scan due at the current instant, if any. Scans are due
    /// every `cadence` seconds starting at t = 0.
    pub fn scan_due(&mut self) -> Option<f64> {
        if self.state.time >= self.next_scan {
            let stamp = self.next_scan;
            self.next_scan += self.cadence;
            Some(stamp)
        } else {
            None
        }
    }

    /// Follows the plan for at most `dt` simulated seconds. Emits a
    /// `SensorDue` event at every scan boundary crossed and `GoalReached`
    /// (stopping early) once the robot is within the goal threshold of the
    /// plan's end.
    pub fn advance(&mut self, progress: &mut PlanProgress, dt: f64) -> Vec<NavEvent> {
        let mut events = Vec::new();
        if progress.finished {
            return events;
        }
        let mut budget = dt;
        loop {
            if self.state.position.distance(progress.end()) <= self.goal_threshold {
                progress.finished = true;
                events.push(NavEvent::GoalReached {
                    stamp: self.state.time,
                });
                return events;
            }
            if let Some(stamp) = self.scan_due() {
                events.push(NavEvent::SensorDue {
                    position: self.state.position,
                    heading: self.state.heading,
                    stamp,
                });
                continue;
            }
            if budget <= 0.0 {
                return events;
            }
            let t_scan = self.next_scan - self.state.time;
            let step = budget.min(t_scan);
            let want = self.state.v * step;
            let (moved, exhausted) =
                progress.move_along(want, &mut self.state.position, &mut self.state.heading);
            if exhausted {
                // Ran out of polyline mid-step; charge only the time spent.
                let used = moved / self.state.v;
                self.state.time += used;
                budget -= used;
                continue;
            }
            if step == t_scan {
                // Land exactly on the scan boundary so the next loop pass
                // fires the tick at its precise stamp.
                self.state.time = self.next_scan;
            } else {
                self.state.time += step;
            }
            budget -= step;
        }
    }
}

/// Center of the passable cell nearest to `target`; the default robot start.
pub fn nearest_passable_center(
    grid: &OccupancyGrid,
    inflation: &Inflation,
    target: MapPoint,
) -> Option<MapPoint> {
    let half = grid.resolution() / 2.0;
    let mut best: Option<(f64, MapPoint)> = None;
    for cy in 0..grid.height() as i64 {
        for cx in 0..grid.width() as i64 {
            let c = CellCoord::new(cx, cy);
            if !inflation.passable(c) {
                continue;
            }
            let corner = grid.cell_to_map(c);
            let center = MapPoint::new(corner.x + half, corner.y + half);
            let d = center.distance(target);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, center));
            }
        }
    }
    best.map(|(_, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn room_with_wall() -> OccupancyGrid {
        // 10 m x 10 m at 0.1 m/cell with a wall from (40,20) to (40,99):
        // passable only around the south end of the wall.
        let mut pda = vec![0i8; 100 * 100];
        for cy in 20..100 {
            pda[cy * 100 + 40] = 100;
        }
        OccupancyGrid::new(100, 100, 0.1, MapPoint::new(0.0, 0.0), pda).unwrap()
    }

    fn open_room(w: usize, h: usize, res: f64) -> OccupancyGrid {
        OccupancyGrid::new(w, h, res, MapPoint::new(0.0, 0.0), vec![0; w * h]).unwrap()
    }

    #[test]
    fn zero_length_plan_for_same_cell() {
        let grid = open_room(50, 50, 0.1);
        let inf = Inflation::new(&grid, 0.2);
        let p = MapPoint::new(2.0, 2.0);
        let plan = plan_path(p, p, &grid, &inf).unwrap();
        assert_eq!(plan.length, 0.0);
    }

    #[test]
    fn corner_to_corner_is_near_euclidean() {
        let grid = open_room(100, 100, 0.1);
        let inf = Inflation::new(&grid, 0.2);
        let start = MapPoint::new(0.55, 0.55);
        let goal = MapPoint::new(9.05, 6.35);
        let plan = plan_path(start, goal, &grid, &inf).unwrap();
        let euclid = start.distance(goal);
        assert!(
            plan.length <= euclid * 1.08 + 1e-9,
            "length {} vs euclid {}",
            plan.length,
            euclid
        );
        assert!(plan.length >= euclid - 1e-9);
    }

    #[test]
    fn plans_around_a_wall() {
        let grid = room_with_wall();
        let inf = Inflation::new(&grid, 0.2);
        let start = MapPoint::new(2.05, 8.05);
        let goal = MapPoint::new(6.05, 8.05);
        let plan = plan_path(start, goal, &grid, &inf).unwrap();
        // Must detour south of the wall: substantially longer than the
        // straight line, and every vertex passable.
        assert!(plan.length > start.distance(goal) * 2.0);
        for w in &plan.waypoints {
            assert!(inf.passable(grid.map_to_cell(*w)));
        }
        // No segment crosses blocked space.
        for pair in plan.waypoints.windows(2) {
            assert!(!segment_blocked(pair[0], pair[1], &grid, &inf));
        }
    }

    #[test]
    fn unreachable_pocket_errors() {
        // A 3x3 free pocket sealed inside occupied space.
        let mut pda = vec![0i8; 40 * 40];
        for cy in 10..20 {
            for cx in 10..20 {
                pda[cy * 40 + cx] = 100;
            }
        }
        for cy in 13..16 {
            for cx in 13..16 {
                pda[cy * 40 + cx] = 0;
            }
        }
        let grid = OccupancyGrid::new(40, 40, 0.1, MapPoint::new(0.0, 0.0), pda).unwrap();
        let inf = Inflation::new(&grid, 0.0);
        let start = MapPoint::new(0.55, 0.55);
        let pocket = MapPoint::new(1.45, 1.45);
        assert_eq!(
            plan_path(start, pocket, &grid, &inf),
            Err(PlanError::Unreachable)
        );
    }

    #[test]
    fn goal_in_inflated_space_errors() {
        let grid = room_with_wall();
        let inf = Inflation::new(&grid, 0.2);
        let start = MapPoint::new(2.05, 8.05);
        let hug_wall = MapPoint::new(3.95, 8.05); // 0.1 m from the wall
        assert_eq!(
            plan_path(start, hug_wall, &grid, &inf),
            Err(PlanError::GoalBlocked)
        );
    }

    fn navigator(grid: &OccupancyGrid, start: MapPoint, v: f64) -> Navigator {
        Navigator::new(grid, start, v, 0.2, 0.2, 0.2).unwrap()
    }

    #[test]
    fn advance_moves_exactly_v_dt() {
        let grid = open_room(100, 100, 0.1);
        let start = MapPoint::new(1.05, 1.05);
        let mut nav = navigator(&grid, start, 0.22);
        assert_eq!(nav.scan_due(), Some(0.0)); // consume the t=0 tick
        let plan = nav.plan(&grid, MapPoint::new(8.05, 1.05)).unwrap();
        let mut prog = PlanProgress::new(plan);
        let events = nav.advance(&mut prog, 1.0);
        let moved = nav.state().position.distance(start);
        assert!((moved - 0.22).abs() < 1e-12);
        assert!((nav.state().time - 1.0).abs() < 1e-12);
        // Scan boundaries at 0.2..1.0 fire inside the step.
        let scans = events
            .iter()
            .filter(|e| matches!(e, NavEvent::SensorDue { .. }))
            .count();
        assert_eq!(scans, 5);
    }

    #[test]
    fn goal_threshold_triggers_reached() {
        let grid = open_room(100, 100, 0.1);
        let start = MapPoint::new(1.05, 1.05);
        let mut nav = navigator(&grid, start, 0.22);
        nav.scan_due();
        let goal = MapPoint::new(1.20, 1.05); // 0.15 m away, threshold 0.2
        let plan = nav.plan(&grid, goal).unwrap();
        let mut prog = PlanProgress::new(plan);
        let events = nav.advance(&mut prog, 1.0);
        assert_eq!(
            events,
            vec![NavEvent::GoalReached { stamp: 0.0 }],
            "already within threshold: no motion"
        );
        assert_eq!(nav.state().position, start);
    }

    #[test]
    fn advance_follows_corners_by_arc_length() {
        let grid = open_room(100, 100, 0.1);
        let start = MapPoint::new(1.0, 1.0);
        let mut nav = navigator(&grid, start, 1.0);
        nav.scan_due();
        // Hand-built L-shaped plan: 0.5 m east then north.
        let plan = NavPlan {
            waypoints: vec![start, MapPoint::new(1.5, 1.0), MapPoint::new(1.5, 3.0)],
            length: 2.5,
        };
        let mut prog = PlanProgress::new(plan);
        nav.advance(&mut prog, 0.8); // 0.8 m: around the corner, 0.3 m north
        let pos = nav.state().position;
        assert!((pos.x - 1.5).abs() < 1e-12);
        assert!((pos.y - 1.3).abs() < 1e-12);
        assert!((nav.state().heading - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn travel_time_matches_distance() {
        let grid = open_room(100, 100, 0.1);
        let start = MapPoint::new(1.05, 1.05);
        let mut nav = navigator(&grid, start, 0.31);
        nav.scan_due();
        let goal = MapPoint::new(7.35, 4.25);
        let plan = nav.plan(&grid, goal).unwrap();
        let mut prog = PlanProgress::new(plan);
        let mut traveled = 0.0;
        let mut last = nav.state().position;
        for _ in 0..10_000 {
            let events = nav.advance(&mut prog, 0.37);
            traveled += nav.state().position.distance(last);
            last = nav.state().position;
            // Safety: the robot center stays in passable space.
            assert!(nav.inflation().passable(grid.map_to_cell(last)));
            if events
                .iter()
                .any(|e| matches!(e, NavEvent::GoalReached { .. }))
            {
                break;
            }
        }
        assert!(prog.finished, "goal never reached");
        let expected = nav.state().v * nav.state().time;
        assert!(
            (traveled - expected).abs() < 1e-6,
            "traveled {traveled}, v*t {expected}"
        );
    }

    #[test]
    fn deterministic_event_streams() {
        let grid = room_with_wall();
        let run = || {
            let mut nav = navigator(&grid, MapPoint::new(2.05, 8.05), 0.5);
            nav.scan_due();
            let plan = nav.plan(&grid, MapPoint::new(6.05, 8.05)).unwrap();
            let mut prog = PlanProgress::new(plan);
            let mut log = Vec::new();
            for _ in 0..100_000 {
                let events = nav.advance(&mut prog, 0.4);
                let done = events
                    .iter()
                    .any(|e| matches!(e, NavEvent::GoalReached { .. }));
                log.extend(events);
                if done {
                    break;
                }
            }
            log
        };
        assert_eq!(run(), run());
    }
}
