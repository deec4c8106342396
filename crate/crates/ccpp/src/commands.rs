//! The three mission commands behind the CLI: `run`, `runway`, and
//! `zones`. Each takes a validated [`RunConfig`], does its work, and writes
//! artifacts into the configured output directory.

use std::fs;
use std::path::PathBuf;

use crate::config::RunConfig;
use crate::coverage::{coverage_tick, CoverageState};
use crate::error::{Error, Result};
use crate::export;
use crate::gridmap::{CellCoord, MapPoint, OccupancyGrid};
use crate::mission::{run_mission, MissionReport, MissionSetup};
use crate::sim::{nearest_passable_center, NavEvent, Navigator, PlanProgress};
use crate::spatial::Quadtree;
use crate::zoning::make_zones;

fn load_map(cfg: &RunConfig) -> Result<OccupancyGrid> {
    match &cfg.map_image {
        Some(image) => OccupancyGrid::load(image, &cfg.map_yaml),
        None => OccupancyGrid::load_from_metadata(&cfg.map_yaml),
    }
}

fn out_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = cfg
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("ccpp-out"));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    Ok(dir)
}

/// The robot start: the configured position, or the passable cell nearest
/// the map center.
fn start_position(cfg: &RunConfig, grid: &OccupancyGrid) -> Result<MapPoint> {
    if let Some(start) = cfg.start {
        return Ok(start);
    }
    let inflation = crate::sim::Inflation::new(grid, cfg.robot_radius);
    let origin = grid.origin();
    let center = MapPoint::new(
        origin.x + grid.width() as f64 * grid.resolution() / 2.0,
        origin.y + grid.height() as f64 * grid.resolution() / 2.0,
    );
    nearest_passable_center(grid, &inflation, center)
        .ok_or_else(|| Error::Aborted("map has no passable cell for the default start".into()))
}

/// Artifact paths produced by [`cmd_run`].
#[derive(Debug, Clone)]
pub struct MissionArtifacts {
    pub report: MissionReport,
    pub out_dir: PathBuf,
    pub report_path: PathBuf,
    pub trajectory_path: PathBuf,
    pub metrics_path: PathBuf,
    pub coverage_image_path: PathBuf,
    pub zones_image_path: PathBuf,
}

/// Runs a full coverage mission: zoning, quadtree, mission loop, artifact
/// export. Identical (map, config, seed) produce byte-identical artifacts.
pub fn cmd_run(cfg: &RunConfig) -> Result<MissionArtifacts> {
    cfg.validate()?;
    let grid = load_map(cfg)?;
    let qt = Quadtree::with_capacity(&grid, cfg.quadtree_capacity);
    let (zt, ct) = make_zones(&grid, cfg.zones, cfg.seed)?;
    let coverage = CoverageState::new(zt, ct);
    let start = start_position(cfg, &grid)?;
    let nav = Navigator::new(
        &grid,
        start,
        cfg.v,
        cfg.robot_radius,
        cfg.goal_threshold,
        cfg.scan_cadence,
    )?;

    let output = run_mission(MissionSetup {
        grid: &grid,
        qt: &qt,
        coverage,
        nav,
        params: cfg.arnold(),
        planner: cfg.planner(),
        sensor: cfg.sensor(),
        partitions: cfg.worker_partitions,
        max_sim_seconds: cfg.max_sim_seconds(),
    })?;

    let dir = out_dir(cfg)?;
    let report_path = dir.join("report.txt");
    export::write_report(&report_path, &output.report, cfg.seed)?;
    let trajectory_path = dir.join("trajectory.csv");
    export::write_trajectory_csv(&trajectory_path, &output.trajectory)?;
    let metrics_path = dir.join("metrics.csv");
    export::write_metrics_csv(&metrics_path, &output.metrics)?;
    let coverage_image_path = dir.join("coverage.ppm");
    let rgb = export::coverage_image(&grid, &output.coverage.cells);
    export::write_ppm(&coverage_image_path, grid.width(), grid.height(), &rgb)?;
    let zones_image_path = dir.join("zones.ppm");
    let rgb = export::zone_image(&grid, &output.coverage.cells, &output.coverage.zones);
    export::write_ppm(&zones_image_path, grid.width(), grid.height(), &rgb)?;

    Ok(MissionArtifacts {
        report: output.report,
        out_dir: dir,
        report_path,
        trajectory_path,
        metrics_path,
        coverage_image_path,
        zones_image_path,
    })
}

/// Inter-update distance statistics from a straight high-speed drive.
#[derive(Debug, Clone)]
pub struct RunwayStats {
    /// Worker invocations observed.
    pub updates: usize,
    pub average_m: f64,
    pub max_m: f64,
    pub min_m: f64,
    pub sr_m: f64,
    /// Average inter-update distance exceeds the sensor range: coverage
    /// updates cannot keep up with the robot.
    pub coverage_gap: bool,
    pub distance_driven_m: f64,
}

/// Drives the runway map straight east at constant speed, recording the
/// distance traveled between successive coverage-worker calls. The robot
/// runs at its target speed from the first recorded update.
pub fn cmd_runway(cfg: &RunConfig) -> Result<RunwayStats> {
    cfg.validate()?;
    let grid = load_map(cfg)?;
    let qt = Quadtree::with_capacity(&grid, cfg.quadtree_capacity);
    let (zt, ct) = make_zones(&grid, cfg.zones, cfg.seed)?;
    let mut state = CoverageState::new(zt, ct);
    let start = start_position(cfg, &grid)?;
    let mut nav = Navigator::new(
        &grid,
        start,
        cfg.v,
        cfg.robot_radius,
        cfg.goal_threshold,
        cfg.scan_cadence,
    )?;

    // The drive target: just short of the east end of the passable row.
    let start_cell = grid.map_to_cell(start);
    let mut east = start_cell;
    while nav
        .inflation()
        .passable(CellCoord::new(east.cx + 1, east.cy))
    {
        east = CellCoord::new(east.cx + 1, east.cy);
    }
    let half = grid.resolution() / 2.0;
    let corner = grid.cell_to_map(east);
    let goal = MapPoint::new(corner.x + half, start.y);
    let plan = nav
        .plan(&grid, goal)
        .map_err(|e| Error::Aborted(format!("runway drive plan failed: {e}")))?;
    let mut progress = PlanProgress::new(plan);

    let sensor = cfg.sensor();
    let mut positions: Vec<MapPoint> = Vec::new();
    let mut tick = |position: MapPoint, heading: f64, stamp: f64, state: &mut CoverageState| {
        // dc plays no role here: the run ends at the wall, not at coverage.
        coverage_tick(
            position,
            heading,
            stamp,
            state,
            &qt,
            &grid,
            &sensor,
            cfg.worker_partitions,
            101.0,
        )
        .map(|_| positions.push(position))
    };

    let stamp = nav.scan_due().expect("first scan due at t = 0");
    let (p0, h0) = (nav.state().position, nav.state().heading);
    tick(p0, h0, stamp, &mut state)?;
    'drive: loop {
        let events = nav.advance(&mut progress, 1.0);
        for event in events {
            match event {
                NavEvent::SensorDue {
                    position,
                    heading,
                    stamp,
                } => tick(position, heading, stamp, &mut state)?,
                NavEvent::GoalReached { .. } => break 'drive,
            }
        }
    }

    if positions.len() < 3 {
        return Err(Error::Aborted(format!(
            "runway too short: only {} coverage updates before the wall",
            positions.len()
        )));
    }
    let distances: Vec<f64> = positions.windows(2).map(|w| w[0].distance(w[1])).collect();
    let average = distances.iter().sum::<f64>() / distances.len() as f64;
    let max = distances.iter().cloned().fold(f64::MIN, f64::max);
    let min = distances.iter().cloned().fold(f64::MAX, f64::min);
    let stats = RunwayStats {
        updates: positions.len(),
        average_m: average,
        max_m: max,
        min_m: min,
        sr_m: cfg.sr,
        coverage_gap: average > cfg.sr,
        distance_driven_m: positions[0].distance(*positions.last().unwrap()),
    };

    let dir = out_dir(cfg)?;
    let path = dir.join("runway_report.txt");
    let text = format!(
        "updates = {}\naverage_m = {}\nmax_m = {}\nmin_m = {}\nsr_m = {}\ncoverage_gap = {}\ndistance_driven_m = {}\nseed = {}\n",
        stats.updates,
        stats.average_m,
        stats.max_m,
        stats.min_m,
        stats.sr_m,
        stats.coverage_gap,
        stats.distance_driven_m,
        cfg.seed
    );
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(stats)
}

/// Zones the map and writes the zone preview image; no mission runs.
pub fn cmd_zones(cfg: &RunConfig) -> Result<PathBuf> {
    cfg.validate()?;
    let grid = load_map(cfg)?;
    let (zt, ct) = make_zones(&grid, cfg.zones, cfg.seed)?;
    let dir = out_dir(cfg)?;
    let path = dir.join("zones.ppm");
    let rgb = export::zone_image(&grid, &ct, &zt);
    export::write_ppm(&path, grid.width(), grid.height(), &rgb)?;
    Ok(path)
}
