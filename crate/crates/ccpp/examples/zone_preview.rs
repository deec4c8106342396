//! Zones a multi-room map with k-means and writes the tinted preview image
//! with centroid markers.
//!
//! ```bash
//! cargo run --example zone_preview
//! ```

use std::fs;
use std::path::PathBuf;

use ccpp::export::{write_ppm, zone_image};
use ccpp::maps::bungalow;
use ccpp::zoning::make_zones;

fn main() -> ccpp::Result<()> {
    let grid = bungalow(19.0, 0.05);
    let k = 15;
    let seed = 11;
    let (zones, cells) = make_zones(&grid, k, seed)?;

    println!(
        "zoned {} free cells into {k} zones (seed {seed}):",
        grid.free_cell_count()
    );
    for (zid, row) in zones.rows().iter().enumerate() {
        println!(
            "  zone {zid:2}: {:6} cells, centroid ({:6.2}, {:6.2}) m",
            row.n_free, row.centroid.x, row.centroid.y
        );
    }

    let out: PathBuf = PathBuf::from("target/example-out");
    fs::create_dir_all(&out).expect("create output directory");
    let path = out.join("zone_preview.ppm");
    let rgb = zone_image(&grid, &cells, &zones);
    write_ppm(&path, grid.width(), grid.height(), &rgb)?;
    println!("preview written to {}", path.display());
    Ok(())
}
