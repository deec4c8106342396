//! Builds the free-cell quadtree for a large map and compares radius
//! queries against a brute-force linear scan, both for correctness and for
//! speed.
//!
//! ```bash
//! cargo run --release --example quadtree_queries
//! ```

use std::time::Instant;

use ccpp::gridmap::CellCoord;
use ccpp::maps::walled_square_with_wall;
use ccpp::spatial::Quadtree;

fn main() {
    // ~0.4M cells at 0.05 m/cell, like a 32 m x 32 m hall.
    let grid = walled_square_with_wall(32.0, 0.05);
    println!(
        "map: {}x{} cells, {} free",
        grid.width(),
        grid.height(),
        grid.free_cell_count()
    );

    let t0 = Instant::now();
    let qt = Quadtree::build(&grid);
    println!(
        "quadtree built in {:.1} ms ({} points)",
        t0.elapsed().as_secs_f64() * 1e3,
        qt.len()
    );

    let radius = 19.0;
    let centers = [
        CellCoord::new(100, 100),
        CellCoord::new(320, 320),
        CellCoord::new(630, 10),
        CellCoord::new(5, 630),
    ];

    for center in centers {
        let t0 = Instant::now();
        let hits = qt.query_radius(center, radius);
        let tree_us = t0.elapsed().as_secs_f64() * 1e6;

        let t0 = Instant::now();
        let scan: Vec<CellCoord> = grid
            .free_cells()
            .filter(|c| c.distance(center) <= radius)
            .collect();
        let scan_us = t0.elapsed().as_secs_f64() * 1e6;

        assert_eq!(sorted(hits.clone()), sorted(scan), "tree and scan disagree");
        println!(
            "query r={radius} at ({:3},{:3}): {:4} cells  tree {tree_us:8.1} us  linear scan {scan_us:9.1} us",
            center.cx,
            center.cy,
            hits.len()
        );
    }
    println!("all queries match the linear scan exactly");
}

fn sorted(mut v: Vec<CellCoord>) -> Vec<CellCoord> {
    v.sort_by_key(|c| (c.cy, c.cx));
    v
}
