//! Artifact export: portable graymap/pixmap images, delimited-text logs,
//! and the key-value mission report. Everything written here is a pure
//! function of the mission output, so identical runs produce identical
//! bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gridmap::{CellClass, CellCoord, OccupancyGrid};
use crate::mission::{MissionReport, TrajectoryRecord};
use crate::planner::Cost;
use crate::zoning::{CellTable, ZoneTable};

pub fn write_pgm(path: &Path, width: usize, height: usize, gray: &[u8]) -> Result<()> {
    assert_eq!(gray.len(), width * height);
    let mut bytes = format!("P5\n{width} {height}\n255\n").into_bytes();
    bytes.extend_from_slice(gray);
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn write_ppm(path: &Path, width: usize, height: usize, rgb: &[u8]) -> Result<()> {
    assert_eq!(rgb.len(), width * height * 3);
    let mut bytes = format!("P6\n{width} {height}\n255\n").into_bytes();
    bytes.extend_from_slice(rgb);
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes the grid as a map-server-style image/metadata pair
/// (`<stem>.pgm` + `<stem>.yaml`) that [`OccupancyGrid::load`] reads back
/// verbatim: occupied 0, free 254, unknown 205.
pub fn write_map_files(grid: &OccupancyGrid, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (w, h) = (grid.width(), grid.height());
    let mut gray = vec![0u8; w * h];
    for row in 0..h {
        let cy = h - 1 - row;
        for cx in 0..w {
            gray[row * w + cx] = match grid.class(CellCoord::new(cx as i64, cy as i64)) {
                CellClass::Free => 254,
                CellClass::Unknown => 205,
                _ => 0,
            };
        }
    }
    let image = dir.join(format!("{stem}.pgm"));
    write_pgm(&image, w, h, &gray)?;
    let yaml = dir.join(format!("{stem}.yaml"));
    let origin = grid.origin();
    let text = format!(
        "image: {stem}.pgm\nresolution: {}\norigin: [{}, {}, 0.0]\nnegate: 0\noccupied_thresh: 0.65\nfree_thresh: 0.196\n",
        grid.resolution(),
        origin.x,
        origin.y
    );
    fs::write(&yaml, text).map_err(|e| Error::io(&yaml, e))?;
    Ok((image, yaml))
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let c = v * s;
    let hp = (h % 360.0) / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [
        ((r + m) * 255.0).round() as u8,
        ((g + m) * 255.0).round() as u8,
        ((b + m) * 255.0).round() as u8,
    ]
}

/// Deterministic distinct tint per zone id (golden-angle hue stepping).
pub fn zone_color(zid: usize) -> [u8; 3] {
    hsv_to_rgb(zid as f64 * 137.508, 0.62, 0.92)
}

const COLOR_OBSTACLE: [u8; 3] = [0, 0, 0];
const COLOR_UNKNOWN: [u8; 3] = [160, 160, 160];
const COLOR_FREE: [u8; 3] = [255, 255, 255];
const COLOR_COVERED: [u8; 3] = [70, 170, 90];
const COLOR_CENTROID: [u8; 3] = [0, 0, 0];

fn paint(rgb: &mut [u8], w: usize, h: usize, cx: i64, cy: i64, color: [u8; 3]) {
    if cx < 0 || cy < 0 || cx as usize >= w || cy as usize >= h {
        return;
    }
    // Image row 0 is the top of the map.
    let row = h - 1 - cy as usize;
    let at = (row * w + cx as usize) * 3;
    rgb[at..at + 3].copy_from_slice(&color);
}

/// Zone preview: each free cell tinted by its zone id, centroids marked
/// with filled discs.
pub fn zone_image(grid: &OccupancyGrid, cells: &CellTable, zones: &ZoneTable) -> Vec<u8> {
    let (w, h) = (grid.width(), grid.height());
    let mut rgb = vec![0u8; w * h * 3];
    for cy in 0..h as i64 {
        for cx in 0..w as i64 {
            let c = CellCoord::new(cx, cy);
            let ind = grid.index_of(c).expect("in bounds");
            let color = match cells.zone_of(ind) {
                Some(zid) => zone_color(zid as usize),
                None => match grid.class(c) {
                    CellClass::Unknown => COLOR_UNKNOWN,
                    _ => COLOR_OBSTACLE,
                },
            };
            paint(&mut rgb, w, h, cx, cy, color);
        }
    }
    let marker = (w.min(h) as i64 / 100).max(2);
    for row in zones.rows() {
        let center = grid.map_to_cell(row.centroid);
        for dy in -marker..=marker {
            for dx in -marker..=marker {
                if dx * dx + dy * dy <= marker * marker {
                    paint(
                        &mut rgb,
                        w,
                        h,
                        center.cx + dx,
                        center.cy + dy,
                        COLOR_CENTROID,
                    );
                }
            }
        }
    }
    rgb
}

/// Coverage snapshot: covered free cells, uncovered free cells, obstacles,
/// and unknown space in distinct colors.
pub fn coverage_image(grid: &OccupancyGrid, cells: &CellTable) -> Vec<u8> {
    let (w, h) = (grid.width(), grid.height());
    let mut rgb = vec![0u8; w * h * 3];
    for cy in 0..h as i64 {
        for cx in 0..w as i64 {
            let c = CellCoord::new(cx, cy);
            let ind = grid.index_of(c).expect("in bounds");
            let color = match grid.class(c) {
                CellClass::Free => {
                    if cells.is_covered(ind) {
                        COLOR_COVERED
                    } else {
                        COLOR_FREE
                    }
                }
                CellClass::Unknown => COLOR_UNKNOWN,
                _ => COLOR_OBSTACLE,
            };
            paint(&mut rgb, w, h, cx, cy, color);
        }
    }
    rgb
}

/// Classifies a coverage-image pixel back into its cell class; the inverse
/// of [`coverage_image`]'s palette.
pub fn classify_coverage_pixel(rgb: [u8; 3]) -> &'static str {
    match rgb {
        COLOR_COVERED => "covered",
        COLOR_FREE => "free",
        COLOR_UNKNOWN => "unknown",
        _ => "obstacle",
    }
}

/// Reads back a P6 pixmap written by [`write_ppm`].
pub fn read_ppm(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let header_err = |m: &str| Error::map_format(path, m);
    let text = String::from_utf8_lossy(&bytes[..bytes.len().min(64)]).to_string();
    let mut parts = text.split_ascii_whitespace();
    if parts.next() != Some("P6") {
        return Err(header_err("expected P6 magic"));
    }
    let w: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| header_err("bad width"))?;
    let h: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| header_err("bad height"))?;
    let payload = bytes.len() - w * h * 3;
    Ok((w, h, bytes[payload..].to_vec()))
}

fn cost_field(cost: Cost) -> String {
    match cost {
        Cost::Finite(v) => format!("{v}"),
        Cost::Max => "max".to_string(),
    }
}

/// Trajectory log: one row per dispatched goal.
pub fn write_trajectory_csv(path: &Path, records: &[TrajectoryRecord]) -> Result<()> {
    let mut out = String::from("time_s,goal_x,goal_y,was_replaced,stage,cost\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.time,
            r.goal.x,
            r.goal.y,
            r.was_replaced as u8,
            r.stage.name(),
            cost_field(r.cost)
        ));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Metrics stream: one (stamp, tc) row per coverage tick.
pub fn write_metrics_csv(path: &Path, metrics: &[(f64, f64)]) -> Result<()> {
    let mut out = String::from("time_s,tc_percent\n");
    for (stamp, tc) in metrics {
        out.push_str(&format!("{stamp},{tc}\n"));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Mission report as `key = value` text with fixed key names.
pub fn write_report(path: &Path, report: &MissionReport, seed: u64) -> Result<()> {
    let mut out = Vec::new();
    let mut kv = |k: &str, v: String| {
        writeln!(out, "{k} = {v}").expect("write to vec");
    };
    kv("ct_minutes", format!("{}", report.ct_minutes));
    kv("tc_percent", format!("{}", report.tc_percent));
    kv("dc_percent", format!("{}", report.dc_percent));
    kv("reached_dc", format!("{}", report.reached_dc));
    kv("hops", format!("{}", report.hops));
    kv("sets_generated", format!("{}", report.sets_generated));
    kv("goals_dispatched", format!("{}", report.goals_dispatched));
    kv(
        "stage1_replacements",
        format!("{}", report.stage1_replacements),
    );
    kv(
        "stage2_replacements",
        format!("{}", report.stage2_replacements),
    );
    kv("boundary_breaks", format!("{}", report.boundary_breaks));
    kv("nav_failures", format!("{}", report.nav_failures));
    kv("zones", format!("{}", report.zone_coverage.len()));
    kv("seed", format!("{seed}"));
    for (zid, cz) in report.zone_coverage.iter().enumerate() {
        kv(&format!("zone_{zid}_cz"), format!("{cz}"));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Parses a report back into a key -> value map (for tests and tooling).
pub fn parse_report(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|line| {
            line.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}
