//! Synthetic map builders for examples, tests, and benchmarks.

use crate::error::Result;
use crate::gridmap::{MapPoint, OccupancyGrid, FREE, OCCUPIED, UNKNOWN};

/// Incrementally paints occupancy values onto a grid before freezing it.
#[derive(Debug, Clone)]
pub struct MapBuilder {
    width: usize,
    height: usize,
    resolution: f64,
    origin: MapPoint,
    pda: Vec<i8>,
}

impl MapBuilder {
    /// All-free canvas of `width x height` cells.
    pub fn new(width: usize, height: usize, resolution: f64, origin: MapPoint) -> Self {
        MapBuilder {
            width,
            height,
            resolution,
            origin,
            pda: vec![FREE; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Paints the half-open cell rectangle `[x0, x1) x [y0, y1)`.
    pub fn fill_rect(
        &mut self,
        x0: usize,
        y0: usize,
        x1: usize,
        y1: usize,
        value: i8,
    ) -> &mut Self {
        for cy in y0..y1.min(self.height) {
            for cx in x0..x1.min(self.width) {
                self.pda[cy * self.width + cx] = value;
            }
        }
        self
    }

    /// Paints a border wall `thickness` cells deep along all four edges.
    pub fn border(&mut self, thickness: usize, value: i8) -> &mut Self {
        let t = thickness;
        self.fill_rect(0, 0, self.width, t, value);
        self.fill_rect(0, self.height - t, self.width, self.height, value);
        self.fill_rect(0, 0, t, self.height, value);
        self.fill_rect(self.width - t, 0, self.width, self.height, value);
        self
    }

    pub fn set(&mut self, cx: usize, cy: usize, value: i8) -> &mut Self {
        self.pda[cy * self.width + cx] = value;
        self
    }

    pub fn build(&self) -> Result<OccupancyGrid> {
        OccupancyGrid::new(
            self.width,
            self.height,
            self.resolution,
            self.origin,
            self.pda.clone(),
        )
    }
}

/// A walled rectangular room of the given interior size in meters.
/// The wall is one cell thick, so the grid spans the interior plus two cells
/// per axis.
pub fn walled_room(interior_w_m: f64, interior_h_m: f64, resolution: f64) -> OccupancyGrid {
    let w = (interior_w_m / resolution).round() as usize + 2;
    let h = (interior_h_m / resolution).round() as usize + 2;
    MapBuilder::new(w, h, resolution, MapPoint::new(0.0, 0.0))
        .border(1, OCCUPIED)
        .build()
        .expect("valid synthetic room")
}

/// A walled square with one interior wall jutting from the south side
/// (leaving a gap at the north end), after the Esquare test environment.
pub fn walled_square_with_wall(side_m: f64, resolution: f64) -> OccupancyGrid {
    let side = (side_m / resolution).round() as usize + 2;
    let wall_x = side / 2;
    let gap = side / 4;
    let mut b = MapBuilder::new(side, side, resolution, MapPoint::new(0.0, 0.0));
    b.border(1, OCCUPIED);
    b.fill_rect(wall_x, 0, wall_x + 2, side - gap, OCCUPIED);
    b.build().expect("valid synthetic square")
}

/// A walled east-west corridor (`length_m x width_m` interior).
pub fn corridor(length_m: f64, width_m: f64, resolution: f64) -> OccupancyGrid {
    walled_room(length_m, width_m, resolution)
}

/// A small multi-room "bungalow": four rooms joined by door gaps.
pub fn bungalow(side_m: f64, resolution: f64) -> OccupancyGrid {
    let side = (side_m / resolution).round() as usize + 2;
    let mid = side / 2;
    let door = ((1.0 / resolution).round() as usize).max(3);
    let mut b = MapBuilder::new(side, side, resolution, MapPoint::new(0.0, 0.0));
    b.border(1, OCCUPIED);
    // Interior cross walls with one door per arm.
    b.fill_rect(mid, 1, mid + 1, side - 1, OCCUPIED);
    b.fill_rect(1, mid, side - 1, mid + 1, OCCUPIED);
    let q1 = side / 4;
    let q3 = 3 * side / 4;
    b.fill_rect(mid, q1 - door / 2, mid + 1, q1 - door / 2 + door, FREE);
    b.fill_rect(mid, q3 - door / 2, mid + 1, q3 - door / 2 + door, FREE);
    b.fill_rect(q1 - door / 2, mid, q1 - door / 2 + door, mid + 1, FREE);
    b.fill_rect(q3 - door / 2, mid, q3 - door / 2 + door, mid + 1, FREE);
    // A patch of never-sensed space in one room corner.
    b.fill_rect(3, 3, 3 + door, 3 + door, UNKNOWN);
    b.build().expect("valid synthetic bungalow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridmap::CellCoord;

    #[test]
    fn walled_room_dimensions() {
        let g = walled_room(20.0, 20.0, 0.05);
        assert_eq!(g.width(), 402);
        assert_eq!(g.height(), 402);
        assert_eq!(g.free_cell_count(), 400 * 400);
        assert!(!g.is_free(CellCoord::new(0, 0)));
        assert!(g.is_free(CellCoord::new(1, 1)));
    }

    #[test]
    fn bungalow_is_connected_enough() {
        let g = bungalow(19.0, 0.05);
        assert!(g.free_cell_count() > 100_000);
    }
}
