//! Simulates one lidar scan, runs one coverage tick, and writes the
//! coverage snapshot image: covered cells green, free cells white,
//! obstacles black, unknown gray.
//!
//! ```bash
//! cargo run --example lidar_coverage
//! ```

use std::fs;
use std::path::PathBuf;

use ccpp::coverage::{coverage_tick, simulate_scan, CoverageState, SensorConfig};
use ccpp::export::{coverage_image, write_ppm};
use ccpp::gridmap::MapPoint;
use ccpp::maps::MapBuilder;
use ccpp::spatial::Quadtree;
use ccpp::zoning::make_zones;

fn main() -> ccpp::Result<()> {
    // A 12 m x 10 m room with a pillar and an unknown patch.
    let grid = MapBuilder::new(242, 202, 0.05, MapPoint::new(0.0, 0.0))
        .border(1, 100)
        .fill_rect(120, 80, 130, 120, 100)
        .fill_rect(30, 150, 60, 180, -1)
        .build()?;
    let qt = Quadtree::build(&grid);
    let (zones, cells) = make_zones(&grid, 8, 2)?;
    let mut state = CoverageState::new(zones, cells);

    let pose = MapPoint::new(4.0, 5.0);
    let heading = 0.3;
    let sensor = SensorConfig {
        max_range: 3.5,
        fov: (-1.047, 1.047), // ~120 degree camera
    };

    let (scan, _tf) = simulate_scan(pose, heading, &grid, &sensor, 0.0)?;
    let hits = scan
        .ranges()
        .iter()
        .filter(|&&r| r < sensor.max_range)
        .count();
    println!(
        "scan: {} beams, {} hit something within {} m",
        scan.ranges().len(),
        hits,
        sensor.max_range
    );

    let tick = coverage_tick(pose, heading, 0.0, &mut state, &qt, &grid, &sensor, 1, 90.0)?;
    println!(
        "tick: {} cells covered, tc = {:.2}% of {} free cells",
        tick.newly_covered,
        tick.tc,
        state.total_free()
    );
    println!(
        "least-covered zone: {} (centroid {:.2}, {:.2})",
        tick.least_covered.0, tick.least_covered.1.x, tick.least_covered.1.y
    );

    let out = PathBuf::from("target/example-out");
    fs::create_dir_all(&out).expect("create output directory");
    let path = out.join("coverage_snapshot.ppm");
    let rgb = coverage_image(&grid, &state.cells);
    write_ppm(&path, grid.width(), grid.height(), &rgb)?;
    println!("snapshot written to {}", path.display());
    Ok(())
}
