//! Map zoning: k-means over free-cell map coordinates, plus the per-zone
//! (`M_Z`) and per-cell (`M_C`) bookkeeping tables.
//!
//! Zoning runs once before a mission. Each free cell belongs to exactly one
//! zone; occupied and unknown cells carry no zone id. The least-covered zone
//! attracts the periodic hops that disperse chaotic trajectories across the
//! map.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gridmap::{MapPoint, OccupancyGrid};
use crate::planner::cost_g;
use crate::planner::shift;
use crate::spatial::Quadtree;

const KMEANS_MAX_ITER: usize = 300;

/// One row of the zone table `M_Z`: centroid, free-cell count, covered
/// count, and coverage rate `c_z = 100 * n_covered / n_free`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneRow {
    pub centroid: MapPoint,
    pub n_free: usize,
    pub n_covered: usize,
    pub c_z: f64,
}

/// Per-zone centroids and coverage counters.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneTable {
    rows: Vec<ZoneRow>,
}

impl ZoneTable {
    pub fn rows(&self) -> &[ZoneRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Marks one more cell of `zid` covered and refreshes its rate.
    pub(crate) fn record_covered(&mut self, zid: usize) {
        let row = &mut self.rows[zid];
        row.n_covered += 1;
        row.c_z = 100.0 * row.n_covered as f64 / row.n_free as f64;
    }
}

/// Per-cell zone ids and covered flags, indexed by the flat cell index.
/// Covered flags only ever transition 0 -> 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CellTable {
    zid: Vec<Option<u32>>,
    covered: Vec<bool>,
}

impl CellTable {
    pub fn zone_of(&self, ind: usize) -> Option<u32> {
        self.zid[ind]
    }

    pub fn is_covered(&self, ind: usize) -> bool {
        self.covered[ind]
    }

    pub(crate) fn mark_covered(&mut self, ind: usize) {
        self.covered[ind] = true;
    }

    pub fn covered_count(&self) -> usize {
        self.covered.iter().filter(|&&c| c).count()
    }

    pub fn len(&self) -> usize {
        self.zid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zid.is_empty()
    }
}

/// Partitions the free cells into `k` zones by seeded k-means over their
/// map-frame coordinates (k-means++ initialization, assignment-stable
/// convergence). Every free cell lands in exactly one zone; `n_covered`
/// starts at zero.
pub fn make_zones(grid: &OccupancyGrid, k: usize, seed: u64) -> Result<(ZoneTable, CellTable)> {
    if k == 0 {
        return Err(Error::Zoning("need at least one zone".into()));
    }
    let free_inds: Vec<usize> = grid
        .pda()
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| if v == 0 { Some(i) } else { None })
        .collect();
    if free_inds.is_empty() {
        return Err(Error::Zoning("map has no free cells".into()));
    }
    if free_inds.len() < k {
        return Err(Error::Zoning(format!(
            "{} zones requested but the map has only {} free cells",
            k,
            free_inds.len()
        )));
    }

    let points: Vec<MapPoint> = free_inds
        .iter()
        .map(|&ind| grid.cell_to_map(grid.cell_of(ind).expect("free index in range")))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = kmeans_pp_init(&points, k, &mut rng);
    let mut assignment = vec![0usize; points.len()];

    for _ in 0..KMEANS_MAX_ITER {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let zid = nearest_centroid(*p, &centroids);
            if assignment[i] != zid {
                assignment[i] = zid;
                changed = true;
            }
        }
        update_centroids(&points, &assignment, &mut centroids);
        repair_empty_clusters(&points, &mut assignment, &mut centroids);
        if !changed {
            break;
        }
    }

    let mut rows: Vec<ZoneRow> = centroids
        .iter()
        .map(|&centroid| ZoneRow {
            centroid,
            n_free: 0,
            n_covered: 0,
            c_z: 0.0,
        })
        .collect();
    let mut zid = vec![None; grid.pda().len()];
    for (i, &ind) in free_inds.iter().enumerate() {
        rows[assignment[i]].n_free += 1;
        zid[ind] = Some(assignment[i] as u32);
    }
    debug_assert!(rows.iter().all(|r| r.n_free > 0));
    Ok((
        ZoneTable { rows },
        CellTable {
            covered: vec![false; zid.len()],
            zid,
        },
    ))
}

fn nearest_centroid(p: MapPoint, centroids: &[MapPoint]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centroids.iter().enumerate() {
        let d = (p.x - c.x).powi(2) + (p.y - c.y).powi(2);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

fn kmeans_pp_init(points: &[MapPoint], k: usize, rng: &mut ChaCha8Rng) -> Vec<MapPoint> {
    let mut centroids = Vec::with_capacity(k);
    centroids.push(points[rng.random_range(0..points.len())]);
    let mut dist_sq: Vec<f64> = points
        .iter()
        .map(|p| {
            let c = centroids[0];
            (p.x - c.x).powi(2) + (p.y - c.y).powi(2)
        })
        .collect();
    while centroids.len() < k {
        let total: f64 = dist_sq.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = points.len() - 1;
            for (i, &d) in dist_sq.iter().enumerate() {
                target -= d;
                if target <= 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        } else {
            // All remaining points coincide with a centroid.
            rng.random_range(0..points.len())
        };
        let c = points[next];
        centroids.push(c);
        for (i, p) in points.iter().enumerate() {
            let d = (p.x - c.x).powi(2) + (p.y - c.y).powi(2);
            if d < dist_sq[i] {
                dist_sq[i] = d;
            }
        }
    }
    centroids
}

fn update_centroids(points: &[MapPoint], assignment: &[usize], centroids: &mut [MapPoint]) {
    let k = centroids.len();
    let mut sums = vec![(0.0f64, 0.0f64, 0usize); k];
    for (i, p) in points.iter().enumerate() {
        let s = &mut sums[assignment[i]];
        s.0 += p.x;
        s.1 += p.y;
        s.2 += 1;
    }
    for (zid, s) in sums.iter().enumerate() {
        if s.2 > 0 {
            centroids[zid] = MapPoint::new(s.0 / s.2 as f64, s.1 / s.2 as f64);
        }
    }
}

/// Reseeds every empty cluster at the point farthest from its nearest
/// centroid, keeping exactly `k` non-empty zones.
fn repair_empty_clusters(
    points: &[MapPoint],
    assignment: &mut [usize],
    centroids: &mut [MapPoint],
) {
    loop {
        let mut counts = vec![0usize; centroids.len()];
        for &a in assignment.iter() {
            counts[a] += 1;
        }
        let empty = match counts.iter().position(|&c| c == 0) {
            Some(z) => z,
            None => return,
        };
        let farthest = points
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                let da = nearest_dist_sq(**a, centroids);
                let db = nearest_dist_sq(**b, centroids);
                da.partial_cmp(&db).unwrap()
            })
            .map(|(i, _)| i)
            .expect("points is non-empty");
        centroids[empty] = points[farthest];
        assignment[farthest] = empty;
    }
}

fn nearest_dist_sq(p: MapPoint, centroids: &[MapPoint]) -> f64 {
    centroids
        .iter()
        .map(|c| (p.x - c.x).powi(2) + (p.y - c.y).powi(2))
        .fold(f64::INFINITY, f64::min)
}

/// The zone with minimal coverage rate; ties break to the centroid nearest
/// the robot, then to the smallest zone id. Returns `(zid, centroid)`.
pub fn least_covered_zone(zt: &ZoneTable, robot: MapPoint) -> (usize, MapPoint) {
    let zid = zones_by_coverage(zt, robot)[0];
    (zid, zt.rows[zid].centroid)
}

/// All zone ids ordered by (coverage rate, distance to robot, zid); the
/// first entry is the hop target, the rest are fallbacks.
pub fn zones_by_coverage(zt: &ZoneTable, robot: MapPoint) -> Vec<usize> {
    assert!(!zt.is_empty(), "zone table is empty");
    let mut order: Vec<usize> = (0..zt.rows.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = &zt.rows[a];
        let rb = &zt.rows[b];
        ra.c_z
            .partial_cmp(&rb.c_z)
            .unwrap()
            .then_with(|| {
                let da = robot.distance(ra.centroid);
                let db = robot.distance(rb.centroid);
                da.partial_cmp(&db).unwrap()
            })
            .then_with(|| a.cmp(&b))
    });
    order
}

/// Adjusts a zone centroid away from obstacles: if the centroid's own cell
/// scores cost 0 it stands; otherwise the first cost-0 cell within `r` cell
/// lengths wins, and failing that the minimum-cost cell. Errors when no free
/// cell lies within `r` at all.
pub fn adjust_centroid(
    centroid: MapPoint,
    qt: &Quadtree,
    grid: &OccupancyGrid,
    r: f64,
    l: f64,
) -> Result<MapPoint> {
    if cost_g(grid.map_to_cell(centroid), grid, l) == 0.0 {
        return Ok(centroid);
    }
    let shifted = shift(centroid, centroid, false, qt, grid, r, l);
    if shifted.cost.is_max() {
        return Err(Error::UnusableCentroid {
            x: centroid.x,
            y: centroid.y,
            radius: r,
        });
    }
    Ok(shifted.tp)
}
