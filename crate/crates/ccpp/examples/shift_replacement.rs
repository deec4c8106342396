//! Walks through one obstacle-avoidance replacement: a trajectory point
//! lands on an obstacle, the quadtree query collects the free cells within
//! r = 2 of it, and the cost function picks the only cell whose l = 1
//! neighborhood is entirely free.
//!
//! ```bash
//! cargo run --example shift_replacement
//! ```

use ccpp::gridmap::{CellCoord, MapPoint, OccupancyGrid};
use ccpp::planner::{cost_g, shift};
use ccpp::spatial::Quadtree;

fn main() {
    // 7x7 map: obstacles everywhere except a small free patch.
    let mut pda = vec![100i8; 49];
    for (cx, cy) in [(1i64, 2i64), (1, 3), (1, 4), (0, 3), (2, 3)] {
        pda[(cy * 7 + cx) as usize] = 0;
    }
    let grid = OccupancyGrid::new(7, 7, 0.05, MapPoint::new(0.0, 0.0), pda).unwrap();
    let qt = Quadtree::build(&grid);

    println!("map (o = obstacle, . = free, T = non-viable trajectory point):");
    for cy in (0..7).rev() {
        let row: String = (0..7)
            .map(|cx| {
                if (cx, cy) == (3, 3) {
                    'T'
                } else if grid.is_free(CellCoord::new(cx, cy)) {
                    '.'
                } else {
                    'o'
                }
            })
            .collect();
        println!("  {row}");
    }

    let (r, l) = (2.0, 1.0);
    let tp = grid.cell_to_map(CellCoord::new(3, 3));
    let query = qt.query_radius(grid.map_to_cell(tp), r);
    println!("\nfree cells within r = {r} of the bad point, with their costs (l = {l}):");
    for cell in &query {
        let g = cost_g(*cell, &grid, l);
        let f = grid.cell_to_map(*cell).distance(tp);
        println!(
            "  ({}, {})  g = {g:6.2}  travel f = {f:.3} m  cost = {:.3}",
            cell.cx,
            cell.cy,
            g + f
        );
    }

    let replacement = shift(tp, tp, true, &qt, &grid, r, l);
    let cell = grid.map_to_cell(replacement.tp);
    println!(
        "\nchosen replacement: cell ({}, {}) at ({:.3}, {:.3}) m, cost {:?}",
        cell.cx, cell.cy, replacement.tp.x, replacement.tp.y, replacement.cost
    );
    println!("its l-neighborhood is entirely free space, so g = 0 and only travel cost remains");
}
