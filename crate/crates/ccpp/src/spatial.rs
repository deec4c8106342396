//! Point-region quadtree over the free cells of an occupancy grid.
//!
//! The tree stores only `Cell_F` coordinates and answers Euclidean radius
//! queries. It is immutable after build; queries are read-only and safe to
//! run concurrently. Query results come back in a deterministic traversal
//! order (SW, SE, NW, NE; insertion order within a leaf), which downstream
//! tie-breaking relies on.

use crate::gridmap::{CellCoord, OccupancyGrid};

const DEFAULT_CAPACITY: usize = 8;

#[derive(Debug, Clone)]
enum Node {
    Leaf(Vec<CellCoord>),
    /// Children in fixed quadrant order: SW, SE, NW, NE.
    Internal([usize; 4]),
}

/// Square region in cell units: `[min_x, min_x + size) x [min_y, min_y + size)`.
#[derive(Debug, Clone, Copy)]
struct Square {
    min_x: i64,
    min_y: i64,
    size: i64,
}

impl Square {
    fn quadrant(&self, p: CellCoord) -> (usize, Square) {
        let half = self.size / 2;
        let east = p.cx >= self.min_x + half;
        let north = p.cy >= self.min_y + half;
        let idx = (north as usize) << 1 | east as usize;
        (idx, self.child(idx))
    }

    fn child(&self, idx: usize) -> Square {
        let half = self.size / 2;
        Square {
            min_x: self.min_x + if idx & 1 != 0 { half } else { 0 },
            min_y: self.min_y + if idx & 2 != 0 { half } else { 0 },
            size: half,
        }
    }

    /// Squared distance from `c` to the nearest integer point inside the region.
    fn min_dist_sq(&self, c: CellCoord) -> f64 {
        let dx = (self.min_x - c.cx)
            .max(0)
            .max(c.cx - (self.min_x + self.size - 1));
        let dy = (self.min_y - c.cy)
            .max(0)
            .max(c.cy - (self.min_y + self.size - 1));
        (dx * dx + dy * dy) as f64
    }

    /// Squared distance from `c` to the farthest integer point inside the region.
    fn max_dist_sq(&self, c: CellCoord) -> f64 {
        let dx = (c.cx - self.min_x)
            .abs()
            .max((self.min_x + self.size - 1 - c.cx).abs());
        let dy = (c.cy - self.min_y)
            .abs()
            .max((self.min_y + self.size - 1 - c.cy).abs());
        (dx * dx + dy * dy) as f64
    }
}

/// Quadtree of free-cell coordinates supporting radius queries.
#[derive(Debug, Clone)]
pub struct Quadtree {
    nodes: Vec<Node>,
    root_region: Square,
    capacity: usize,
    len: usize,
}

impl Quadtree {
    /// Builds the tree holding exactly the free cells of `grid`, with the
    /// default node capacity.
    pub fn build(grid: &OccupancyGrid) -> Self {
        Self::with_capacity(grid, DEFAULT_CAPACITY)
    }

    pub fn with_capacity(grid: &OccupancyGrid, capacity: usize) -> Self {
        let side = grid.width().max(grid.height()).next_power_of_two() as i64;
        let mut qt = Quadtree {
            nodes: vec![Node::Leaf(Vec::new())],
            root_region: Square {
                min_x: 0,
                min_y: 0,
                size: side,
            },
            capacity: capacity.max(1),
            len: 0,
        };
        for c in grid.free_cells() {
            qt.insert(c);
        }
        qt
    }

    /// Number of stored points (free cells).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn insert(&mut self, p: CellCoord) {
        let mut node = 0usize;
        let mut region = self.root_region;
        loop {
            match &mut self.nodes[node] {
                Node::Internal(children) => {
                    let (idx, child_region) = region.quadrant(p);
                    node = children[idx];
                    region = child_region;
                }
                Node::Leaf(points) => {
                    points.push(p);
                    self.len += 1;
                    // A unit region holds at most one integer point, so
                    // splitting stops before it could recurse forever.
                    if points.len() > self.capacity && region.size > 1 {
                        self.split(node, region);
                    }
                    return;
                }
            }
        }
    }

    fn split(&mut self, node: usize, region: Square) {
        let points = match std::mem::replace(&mut self.nodes[node], Node::Internal([0; 4])) {
            Node::Leaf(points) => points,
            Node::Internal(_) => unreachable!("split called on internal node"),
        };
        let base = self.nodes.len();
        for _ in 0..4 {
            self.nodes.push(Node::Leaf(Vec::new()));
        }
        self.nodes[node] = Node::Internal([base, base + 1, base + 2, base + 3]);
        for p in points {
            let (idx, _) = region.quadrant(p);
            match &mut self.nodes[base + idx] {
                Node::Leaf(v) => v.push(p),
                Node::Internal(_) => unreachable!(),
            }
        }
        // Re-split a child that is still over capacity (all points may have
        // landed in the same quadrant).
        for idx in 0..4 {
            let child_region = region.child(idx);
            let needs_split = match &self.nodes[base + idx] {
                Node::Leaf(v) => v.len() > self.capacity && child_region.size > 1,
                Node::Internal(_) => false,
            };
            if needs_split {
                self.split(base + idx, child_region);
            }
        }
    }

    /// Every stored cell within Euclidean distance `radius` (inclusive) of
    /// `center`, in deterministic traversal order. `center` may lie outside
    /// the map; distances are measured in cell lengths.
    pub fn query_radius(&self, center: CellCoord, radius: f64) -> Vec<CellCoord> {
        let mut out = Vec::new();
        self.query_radius_into(center, radius, &mut out);
        out
    }

    /// As [`query_radius`](Self::query_radius), appending into `out`.
    pub fn query_radius_into(&self, center: CellCoord, radius: f64, out: &mut Vec<CellCoord>) {
        if radius < 0.0 {
            return;
        }
        self.query_node(0, self.root_region, center, radius * radius, out);
    }

    fn query_node(
        &self,
        node: usize,
        region: Square,
        center: CellCoord,
        radius_sq: f64,
        out: &mut Vec<CellCoord>,
    ) {
        if region.min_dist_sq(center) > radius_sq {
            return;
        }
        match &self.nodes[node] {
            Node::Leaf(points) => {
                out.extend(points.iter().filter(|p| p.distance_sq(center) <= radius_sq));
            }
            Node::Internal(children) => {
                if region.max_dist_sq(center) <= radius_sq {
                    // Region fully inside the circle: take the whole subtree.
                    for &child in children {
                        self.collect_all(child, out);
                    }
                } else {
                    for (idx, &child) in children.iter().enumerate() {
                        self.query_node(child, region.child(idx), center, radius_sq, out);
                    }
                }
            }
        }
    }

    fn collect_all(&self, node: usize, out: &mut Vec<CellCoord>) {
        match &self.nodes[node] {
            Node::Leaf(points) => out.extend_from_slice(points),
            Node::Internal(children) => {
                for &child in children {
                    self.collect_all(child, out);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridmap::{MapPoint, OccupancyGrid};
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn grid_from_pda(w: usize, h: usize, pda: Vec<i8>) -> OccupancyGrid {
        OccupancyGrid::new(w, h, 0.05, MapPoint::new(0.0, 0.0), pda).unwrap()
    }

    fn random_grid(rng: &mut ChaCha8Rng, w: usize, h: usize, density: f64) -> OccupancyGrid {
        let pda = (0..w * h)
            .map(|_| {
                let roll: f64 = rng.random();
                if roll < density {
                    if rng.random::<f64>() < 0.2 {
                        -1
                    } else {
                        100
                    }
                } else {
                    0
                }
            })
            .collect();
        grid_from_pda(w, h, pda)
    }

    fn linear_scan(grid: &OccupancyGrid, center: CellCoord, radius: f64) -> Vec<CellCoord> {
        grid.free_cells()
            .filter(|c| c.distance_sq(center) <= radius * radius)
            .collect()
    }

    fn as_sorted(mut v: Vec<CellCoord>) -> Vec<CellCoord> {
        v.sort_by_key(|c| (c.cy, c.cx));
        v
    }

    #[test]
    fn all_occupied_yields_empty_tree() {
        let g = grid_from_pda(8, 8, vec![100; 64]);
        let qt = Quadtree::build(&g);
        assert!(qt.is_empty());
        assert!(qt.query_radius(CellCoord::new(4, 4), 10.0).is_empty());
    }

    #[test]
    fn holds_exactly_the_free_cells() {
        let mut pda = vec![100i8; 16];
        for &i in &[1usize, 4, 7, 10, 13] {
            pda[i] = 0;
        }
        let g = grid_from_pda(4, 4, pda);
        let qt = Quadtree::build(&g);
        assert_eq!(qt.len(), 5);
        let all = as_sorted(qt.query_radius(CellCoord::new(2, 2), 100.0));
        let expected = as_sorted(g.free_cells().collect());
        assert_eq!(all, expected);
    }

    #[test]
    fn zero_radius_hits_center_only() {
        let g = grid_from_pda(4, 4, vec![0; 16]);
        let qt = Quadtree::build(&g);
        assert_eq!(
            qt.query_radius(CellCoord::new(2, 1), 0.0),
            vec![CellCoord::new(2, 1)]
        );
    }

    #[test]
    fn matches_linear_scan_on_random_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = rng.random_range(1..=64);
            let h = rng.random_range(1..=64);
            let density = rng.random_range(0.0..0.6);
            let g = random_grid(&mut rng, w, h, density);
            let qt = Quadtree::build(&g);
            assert_eq!(qt.len(), g.free_cell_count());
            for _ in 0..10 {
                let center = CellCoord::new(
                    rng.random_range(-4..w as i64 + 4),
                    rng.random_range(-4..h as i64 + 4),
                );
                let radius = rng.random_range(0.0..20.0);
                let got = as_sorted(qt.query_radius(center, radius));
                let want = as_sorted(linear_scan(&g, center, radius));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn query_order_is_stable_across_rebuilds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_grid(&mut rng, 32, 32, 0.3);
        let a = Quadtree::build(&g);
        let b = Quadtree::build(&g);
        for _ in 0..20 {
            let center = CellCoord::new(rng.random_range(0..32), rng.random_range(0..32));
            let r = rng.random_range(0.0..12.0);
            assert_eq!(a.query_radius(center, r), b.query_radius(center, r));
        }
    }

    #[test]
    fn ties_at_exact_radius_are_included() {
        let g = grid_from_pda(8, 8, vec![0; 64]);
        let qt = Quadtree::build(&g);
        let hits = qt.query_radius(CellCoord::new(3, 3), 2.0);
        assert!(hits.contains(&CellCoord::new(5, 3)));
        assert!(hits.contains(&CellCoord::new(3, 1)));
    }

    proptest! {
        // Growing the radius never drops results.
        #[test]
        fn monotone_in_radius(seed in 0u64..500, r1 in 0.0f64..10.0, extra in 0.0f64..10.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_grid(&mut rng, 24, 24, 0.4);
            let qt = Quadtree::build(&g);
            let center = CellCoord::new(rng.random_range(0..24), rng.random_range(0..24));
            let small: std::collections::HashSet<_> =
                qt.query_radius(center, r1).into_iter().collect();
            let big: std::collections::HashSet<_> =
                qt.query_radius(center, r1 + extra).into_iter().collect();
            prop_assert!(small.is_subset(&big));
        }
    }
}
