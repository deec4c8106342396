//! Real-time coverage calculation from simulated sensor scans.
//!
//! Each tick casts one ray per integer degree of the sensor FOV, queries the
//! quadtree for free cells within sensing range, and runs the worker: a cell
//! counts as covered when its sensor-frame orientation matches a scan angle
//! and its distance is strictly below the range at that angle. Covered flags
//! only ever transition 0 -> 1, so coverage is monotone.
//!
//! All data consumed by one tick (scan, transform, sensor pose) shares a
//! single timestamp.

use crate::error::{Error, Result};
use crate::gridmap::{CellClass, CellCoord, MapPoint, OccupancyGrid};
use crate::spatial::Quadtree;
use crate::zoning::{least_covered_zone, CellTable, ZoneTable};

/// Sensor parameters: maximum range `SR` in meters and angular field of view
/// `(min_rad, max_rad)` in the sensor frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorConfig {
    pub max_range: f64,
    pub fov: (f64, f64),
}

impl Default for SensorConfig {
    fn default() -> Self {
        SensorConfig {
            max_range: 3.5,
            fov: (0.0, std::f64::consts::TAU),
        }
    }
}

/// One simulated scan: integer-degree angles with one range per angle.
#[derive(Debug, Clone)]
pub struct SensorScan {
    angles: Vec<u16>,
    ranges: Vec<f64>,
    pub stamp: f64,
    pub max_range: f64,
    pub fov: (f64, f64),
    /// Angle -> index into `ranges`, or -1 when the angle is outside the FOV.
    lut: Vec<i16>,
}

impl SensorScan {
    pub fn angles(&self) -> &[u16] {
        &self.angles
    }

    pub fn ranges(&self) -> &[f64] {
        &self.ranges
    }

    /// Range at an integer-degree angle, `None` when outside the FOV.
    pub fn range_at(&self, angle: u16) -> Option<f64> {
        let idx = self.lut[angle as usize % 360];
        if idx < 0 {
            None
        } else {
            Some(self.ranges[idx as usize])
        }
    }
}

/// Rigid map-frame -> sensor-frame transform, time-stamped to the scan it
/// accompanies: `p_S = R(rotation) * p_M + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transform2D {
    pub rotation: f64,
    pub translation: (f64, f64),
    pub stamp: f64,
}

impl Transform2D {
    /// The inverse of the sensor pose `(position, heading)`.
    pub fn from_pose(position: MapPoint, heading: f64, stamp: f64) -> Self {
        let (sin, cos) = heading.sin_cos();
        // R(-heading) * (p - t): translation = -R(-heading) * t.
        Transform2D {
            rotation: -heading,
            translation: (
                -(cos * position.x + sin * position.y),
                -(-sin * position.x + cos * position.y),
            ),
            stamp,
        }
    }

    pub fn apply(&self, p: MapPoint) -> MapPoint {
        let (sin, cos) = self.rotation.sin_cos();
        MapPoint::new(
            cos * p.x - sin * p.y + self.translation.0,
            sin * p.x + cos * p.y + self.translation.1,
        )
    }
}

/// Integer-degree orientation of a sensor-frame point:
/// `floor(atan2(y, x) in degrees) mod 360`. `None` for the exact origin,
/// whose orientation is undefined.
pub fn cell_angle(p_sensor: MapPoint) -> Option<u16> {
    if p_sensor.x == 0.0 && p_sensor.y == 0.0 {
        None
    } else {
        Some(angle_deg(p_sensor.x, p_sensor.y))
    }
}

/// Total version of [`cell_angle`] used by the worker; IEEE atan2 maps the
/// origin to 0°.
fn angle_deg(x: f64, y: f64) -> u16 {
    (y.atan2(x).to_degrees().floor() as i64).rem_euclid(360) as u16
}

/// Integer degrees spanned by an FOV, rounded down at both ends and wrapped
/// into [0, 360).
pub fn rasterize_fov(fov: (f64, f64)) -> Vec<u16> {
    let lo = fov.0.to_degrees().floor() as i64;
    let hi = fov.1.to_degrees().floor() as i64;
    let mut seen = [false; 360];
    let mut angles = Vec::new();
    for a in lo..=hi {
        let wrapped = a.rem_euclid(360) as u16;
        if !seen[wrapped as usize] {
            seen[wrapped as usize] = true;
            angles.push(wrapped);
        }
    }
    angles
}

/// Casts a ray from `origin` at `angle` (map frame) and returns the distance
/// to the boundary of the first occupied or unknown cell, capped at
/// `max_range`. Space outside the map does not block.
pub fn cast_ray(grid: &OccupancyGrid, origin: MapPoint, angle: f64, max_range: f64) -> f64 {
    let res = grid.resolution();
    // Walk in cell units.
    let gx = (origin.x - grid.origin().x) / res;
    let gy = (origin.y - grid.origin().y) / res;
    let (dy, dx) = angle.sin_cos();
    let max_t = max_range / res;

    let mut cx = gx.floor() as i64;
    let mut cy = gy.floor() as i64;
    let step_x: i64 = if dx > 0.0 { 1 } else { -1 };
    let step_y: i64 = if dy > 0.0 { 1 } else { -1 };
    let mut t_max_x = if dx == 0.0 {
        f64::INFINITY
    } else if dx > 0.0 {
        (cx as f64 + 1.0 - gx) / dx
    } else {
        (gx - cx as f64) / -dx
    };
    let mut t_max_y = if dy == 0.0 {
        f64::INFINITY
    } else if dy > 0.0 {
        (cy as f64 + 1.0 - gy) / dy
    } else {
        (gy - cy as f64) / -dy
    };
    let t_delta_x = if dx == 0.0 {
        f64::INFINITY
    } else {
        1.0 / dx.abs()
    };
    let t_delta_y = if dy == 0.0 {
        f64::INFINITY
    } else {
        1.0 / dy.abs()
    };

    let blocking = |cx: i64, cy: i64| {
        matches!(
            grid.class(CellCoord::new(cx, cy)),
            CellClass::Occupied | CellClass::Unknown
        )
    };

    loop {
        let t = t_max_x.min(t_max_y);
        if t >= max_t {
            return max_range;
        }
        if (t_max_x - t_max_y).abs() < 1e-12 {
            // Corner crossing: the ray grazes both side cells; whichever
            // blocks stops it here.
            if blocking(cx + step_x, cy) || blocking(cx, cy + step_y) {
                return t * res;
            }
            cx += step_x;
            cy += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if t_max_x < t_max_y {
            cx += step_x;
            t_max_x += t_delta_x;
        } else {
            cy += step_y;
            t_max_y += t_delta_y;
        }
        if blocking(cx, cy) {
            return t * res;
        }
    }
}

/// Simulates one scan from a sensor at `position` with heading `heading`:
/// one ray per integer degree of the FOV, ranges capped at `SR`, plus the
/// time-synchronized map->sensor transform.
pub fn simulate_scan(
    position: MapPoint,
    heading: f64,
    grid: &OccupancyGrid,
    sensor: &SensorConfig,
    stamp: f64,
) -> Result<(SensorScan, Transform2D)> {
    if !grid.is_free(grid.map_to_cell(position)) {
        return Err(Error::SensorPose {
            x: position.x,
            y: position.y,
        });
    }
    let angles = rasterize_fov(sensor.fov);
    let mut lut = vec![-1i16; 360];
    let mut ranges = Vec::with_capacity(angles.len());
    for (i, &a) in angles.iter().enumerate() {
        lut[a as usize] = i as i16;
        let world = heading + (a as f64).to_radians();
        ranges.push(cast_ray(grid, position, world, sensor.max_range));
    }
    Ok((
        SensorScan {
            angles,
            ranges,
            stamp,
            max_range: sensor.max_range,
            fov: sensor.fov,
            lut,
        },
        Transform2D::from_pose(position, heading, stamp),
    ))
}

/// Coverage bookkeeping: the zone table `M_Z`, the cell table `M_C`, and the
/// total coverage rate `tc`.
#[derive(Debug, Clone)]
pub struct CoverageState {
    pub zones: ZoneTable,
    pub cells: CellTable,
    tc: f64,
    total_free: usize,
}

impl CoverageState {
    pub fn new(zones: ZoneTable, cells: CellTable) -> Self {
        let total_free = zones.rows().iter().map(|r| r.n_free).sum();
        CoverageState {
            zones,
            cells,
            tc: 0.0,
            total_free,
        }
    }

    /// Total coverage rate: covered free cells over all free cells, percent.
    pub fn tc(&self) -> f64 {
        self.tc
    }

    pub fn total_free(&self) -> usize {
        self.total_free
    }

    fn recompute_tc(&mut self) {
        let covered: usize = self.zones.rows().iter().map(|r| r.n_covered).sum();
        self.tc = covered as f64 / self.total_free as f64 * 100.0;
    }
}

/// Marks every queried cell that passes the two sensor-mapping criteria:
/// its orientation is a scan angle and its distance is strictly below the
/// range at that angle. Already covered cells are skipped; the rest are
/// dropped untouched. Returns the number of newly covered cells.
pub fn worker(
    tf: &Transform2D,
    cells: &[CellCoord],
    scan: &SensorScan,
    state: &mut CoverageState,
    grid: &OccupancyGrid,
) -> usize {
    let marks = worker_candidates(tf, cells, scan, &state.cells, grid);
    apply_marks(state, &marks)
}

/// The read-only half of the worker: indices of queried cells that pass the
/// criteria and are not yet covered.
fn worker_candidates(
    tf: &Transform2D,
    cells: &[CellCoord],
    scan: &SensorScan,
    table: &CellTable,
    grid: &OccupancyGrid,
) -> Vec<usize> {
    let mut marks = Vec::new();
    for &cell in cells {
        let ind = match grid.index_of(cell) {
            Some(ind) => ind,
            None => continue,
        };
        if table.is_covered(ind) {
            continue;
        }
        let p_s = tf.apply(grid.cell_to_map(cell));
        let alpha = angle_deg(p_s.x, p_s.y);
        if let Some(range) = scan.range_at(alpha) {
            let dist = (p_s.x * p_s.x + p_s.y * p_s.y).sqrt();
            if dist < range {
                marks.push(ind);
            }
        }
    }
    marks
}

fn apply_marks(state: &mut CoverageState, marks: &[usize]) -> usize {
    let mut newly = 0;
    for &ind in marks {
        if state.cells.is_covered(ind) {
            continue;
        }
        let zid = state
            .cells
            .zone_of(ind)
            .expect("queried cell is free and therefore zoned");
        state.cells.mark_covered(ind);
        state.zones.record_covered(zid as usize);
        newly += 1;
    }
    newly
}

/// Result of one coverage tick.
#[derive(Debug, Clone, Copy)]
pub struct CoverageTick {
    pub tc: f64,
    pub newly_covered: usize,
    /// Least-covered zone (ties broken by distance to the sensor, then id).
    pub least_covered: (usize, MapPoint),
    /// True once `tc` has reached the desired coverage.
    pub stop: bool,
}

/// One iteration of the coverage calculator: simulate a scan, query the
/// quadtree around the sensor, run the worker (optionally split across
/// `partitions` threads), and refresh `tc`.
#[allow(clippy::too_many_arguments)]
pub fn coverage_tick(
    position: MapPoint,
    heading: f64,
    stamp: f64,
    state: &mut CoverageState,
    qt: &Quadtree,
    grid: &OccupancyGrid,
    sensor: &SensorConfig,
    partitions: usize,
    dc: f64,
) -> Result<CoverageTick> {
    let (scan, tf) = simulate_scan(position, heading, grid, sensor, stamp)?;
    // The query is centered on the sensor's cell, not its exact position;
    // pad the radius by the sqrt(2)-cell quantization bound so no cell that
    // could pass the range test is missed.
    let radius = sensor.max_range / grid.resolution() + std::f64::consts::SQRT_2;
    let cells = qt.query_radius(grid.map_to_cell(position), radius);

    let newly = if partitions <= 1 || cells.len() < 2 {
        worker(&tf, &cells, &scan, state, grid)
    } else {
        let chunk = cells.len().div_ceil(partitions);
        let table = &state.cells;
        let marks: Vec<usize> = std::thread::scope(|scope| {
            let handles: Vec<_> = cells
                .chunks(chunk)
                .map(|part| {
                    let tf = &tf;
                    let scan = &scan;
                    scope.spawn(move || worker_candidates(tf, part, scan, table, grid))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker partition panicked"))
                .collect()
        });
        apply_marks(state, &marks)
    };

    state.recompute_tc();
    Ok(CoverageTick {
        tc: state.tc,
        newly_covered: newly,
        least_covered: least_covered_zone(&state.zones, position),
        stop: state.tc >= dc,
    })
}
