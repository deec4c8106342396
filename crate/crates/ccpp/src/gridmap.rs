//! 2D occupancy-grid maps: file ingestion and index/coordinate conversions.
//!
//! A map is a `W x H` array of occupancy values (`-1` unknown, `0` free,
//! `1..=100` occupied) plus a resolution (meters per cell) and a map-frame
//! origin. Cell `(0, 0)` is the bottom-left cell; `cy` counts upward, so
//! row 0 of a loaded image is the *top* of the map (the usual map-server
//! orientation).

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Cell coordinate (column `cx`, row `cy`). Signed so that out-of-bounds
/// coordinates are representable; use [`OccupancyGrid::in_bounds`] to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellCoord {
    pub cx: i64,
    pub cy: i64,
}

impl CellCoord {
    pub fn new(cx: i64, cy: i64) -> Self {
        CellCoord { cx, cy }
    }

    /// Euclidean distance to another cell, in cell lengths.
    pub fn distance(&self, other: CellCoord) -> f64 {
        self.distance_sq(other).sqrt()
    }

    /// Squared Euclidean distance in cell lengths (exact integer arithmetic).
    pub fn distance_sq(&self, other: CellCoord) -> f64 {
        let dx = self.cx - other.cx;
        let dy = self.cy - other.cy;
        (dx * dx + dy * dy) as f64
    }
}

/// A point in the map frame, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapPoint {
    pub x: f64,
    pub y: f64,
}

impl MapPoint {
    pub fn new(x: f64, y: f64) -> Self {
        MapPoint { x, y }
    }

    pub fn distance(&self, other: MapPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Classification of a cell by its occupancy value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Free,
    Occupied,
    Unknown,
    OutOfBounds,
}

/// Occupancy value of a free cell.
pub const FREE: i8 = 0;
/// Canonical occupancy value of an occupied cell.
pub const OCCUPIED: i8 = 100;
/// Occupancy value of an unknown cell.
pub const UNKNOWN: i8 = -1;

/// The occupancy-grid map. Immutable once built; share it read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    resolution: f64,
    origin: MapPoint,
    pda: Vec<i8>,
}

impl OccupancyGrid {
    /// Builds a grid from raw parts. `pda` is row-major with index
    /// `cy * width + cx`, each value in `{-1} ∪ [0, 100]`.
    // Negated comparisons are deliberate: `!(x > 0)` also rejects NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(
        width: usize,
        height: usize,
        resolution: f64,
        origin: MapPoint,
        pda: Vec<i8>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::config("map", "width and height must be >= 1"));
        }
        if !(resolution > 0.0) {
            return Err(Error::config("resolution", "must be > 0"));
        }
        if pda.len() != width * height {
            return Err(Error::config(
                "map",
                format!(
                    "pda length {} does not match {}x{}",
                    pda.len(),
                    width,
                    height
                ),
            ));
        }
        if let Some(v) = pda.iter().find(|&&v| !(-1..=100).contains(&v)) {
            return Err(Error::config(
                "map",
                format!("occupancy value {v} outside {{-1}} ∪ [0, 100]"),
            ));
        }
        Ok(OccupancyGrid {
            width,
            height,
            resolution,
            origin,
            pda,
        })
    }

    /// Loads a map from a binary portable graymap (P5) plus a metadata file
    /// using the common map-server keys (`image`, `resolution`, `origin`,
    /// `occupied_thresh`, `free_thresh`, `negate`).
    pub fn load(image_path: &Path, metadata_path: &Path) -> Result<Self> {
        let meta = MapMetadata::load(metadata_path)?;
        Self::load_with_metadata(image_path, &meta)
    }

    /// Loads a map from a metadata file alone, resolving the image path from
    /// the metadata's `image` key (relative to the metadata file).
    pub fn load_from_metadata(metadata_path: &Path) -> Result<Self> {
        let meta = MapMetadata::load(metadata_path)?;
        let image = if meta.image.is_absolute() {
            meta.image.clone()
        } else {
            metadata_path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(&meta.image)
        };
        Self::load_with_metadata(&image, &meta)
    }

    fn load_with_metadata(image_path: &Path, meta: &MapMetadata) -> Result<Self> {
        let bytes = fs::read(image_path).map_err(|e| Error::io(image_path, e))?;
        let pgm = parse_pgm(&bytes).map_err(|m| Error::map_format(image_path, m))?;

        // Pixel shade -> occupancy. The map_server convention measures
        // "darkness": dark pixels are obstacles unless `negate` flips it.
        let mut pda = vec![0i8; pgm.width * pgm.height];
        for row in 0..pgm.height {
            for col in 0..pgm.width {
                let v = pgm.data[row * pgm.width + col] as f64 / pgm.maxval as f64;
                let shade = if meta.negate { v } else { 1.0 - v };
                let occ = if shade >= meta.occupied_thresh {
                    OCCUPIED
                } else if shade <= meta.free_thresh {
                    FREE
                } else {
                    UNKNOWN
                };
                // Image row 0 is the top of the map; cy counts from the bottom.
                let cy = pgm.height - 1 - row;
                pda[cy * pgm.width + col] = occ;
            }
        }
        OccupancyGrid::new(
            pgm.width,
            pgm.height,
            meta.resolution,
            MapPoint::new(meta.origin_x, meta.origin_y),
            pda,
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn origin(&self) -> MapPoint {
        self.origin
    }

    /// The flat occupancy array, index `cy * W + cx`.
    pub fn pda(&self) -> &[i8] {
        &self.pda
    }

    pub fn in_bounds(&self, c: CellCoord) -> bool {
        c.cx >= 0 && c.cy >= 0 && (c.cx as usize) < self.width && (c.cy as usize) < self.height
    }

    /// Flat index of an in-bounds cell: `ind = cy * W + cx`.
    pub fn index_of(&self, c: CellCoord) -> Option<usize> {
        if self.in_bounds(c) {
            Some(c.cy as usize * self.width + c.cx as usize)
        } else {
            None
        }
    }

    /// Inverse of [`index_of`](Self::index_of): `cx = ind mod W`, `cy = ind / W`.
    pub fn cell_of(&self, ind: usize) -> Option<CellCoord> {
        if ind < self.pda.len() {
            Some(CellCoord::new(
                (ind % self.width) as i64,
                (ind / self.width) as i64,
            ))
        } else {
            None
        }
    }

    /// Map-frame position of the cell's minimum corner:
    /// `X = cx * res + O_x`, `Y = cy * res + O_y`.
    pub fn cell_to_map(&self, c: CellCoord) -> MapPoint {
        MapPoint::new(
            c.cx as f64 * self.resolution + self.origin.x,
            c.cy as f64 * self.resolution + self.origin.y,
        )
    }

    /// Cell containing a map-frame point (floored division, so this inverts
    /// [`cell_to_map`](Self::cell_to_map) on cell interiors). Points within
    /// 1e-9 cell lengths below a cell boundary snap up to it, so corner
    /// positions name their own cell despite floating-point jitter. The
    /// result may be out of bounds.
    pub fn map_to_cell(&self, p: MapPoint) -> CellCoord {
        const SNAP: f64 = 1e-9;
        CellCoord::new(
            ((p.x - self.origin.x) / self.resolution + SNAP).floor() as i64,
            ((p.y - self.origin.y) / self.resolution + SNAP).floor() as i64,
        )
    }

    /// Occupancy value of an in-bounds cell.
    pub fn value(&self, c: CellCoord) -> Option<i8> {
        self.index_of(c).map(|i| self.pda[i])
    }

    pub fn class(&self, c: CellCoord) -> CellClass {
        match self.value(c) {
            None => CellClass::OutOfBounds,
            Some(0) => CellClass::Free,
            Some(-1) => CellClass::Unknown,
            Some(_) => CellClass::Occupied,
        }
    }

    pub fn is_free(&self, c: CellCoord) -> bool {
        self.value(c) == Some(FREE)
    }

    /// Iterates all free cells in flat-index order.
    pub fn free_cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        self.pda.iter().enumerate().filter_map(move |(i, &v)| {
            if v == FREE {
                Some(CellCoord::new(
                    (i % self.width) as i64,
                    (i / self.width) as i64,
                ))
            } else {
                None
            }
        })
    }

    pub fn free_cell_count(&self) -> usize {
        self.pda.iter().filter(|&&v| v == FREE).count()
    }
}

/// Metadata for a map image, field-compatible with map-server YAML files.
#[derive(Debug, Clone, PartialEq)]
pub struct MapMetadata {
    pub image: PathBuf,
    pub resolution: f64,
    pub origin_x: f64,
    pub origin_y: f64,
    pub origin_yaw: f64,
    pub occupied_thresh: f64,
    pub free_thresh: f64,
    pub negate: bool,
}

impl MapMetadata {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|m| Error::map_format(path, m))
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` also rejects NaN
    fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut image = None;
        let mut resolution = None;
        let mut origin = None;
        let mut occupied_thresh = 0.65;
        let mut free_thresh = 0.196;
        let mut negate = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| format!("line {}: expected `key: value`", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let num = |v: &str, k: &str| -> std::result::Result<f64, String> {
                v.parse::<f64>()
                    .map_err(|_| format!("{k}: invalid number `{v}`"))
            };
            match key {
                "image" => image = Some(PathBuf::from(value)),
                "resolution" => resolution = Some(num(value, "resolution")?),
                "origin" => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| "origin: expected `[x, y, yaw]`".to_string())?;
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if parts.len() != 3 {
                        return Err("origin: expected three components".into());
                    }
                    origin = Some((
                        num(parts[0], "origin.x")?,
                        num(parts[1], "origin.y")?,
                        num(parts[2], "origin.yaw")?,
                    ));
                }
                "occupied_thresh" => occupied_thresh = num(value, "occupied_thresh")?,
                "free_thresh" => free_thresh = num(value, "free_thresh")?,
                "negate" => {
                    negate = match value {
                        "0" | "false" => false,
                        "1" | "true" => true,
                        other => return Err(format!("negate: invalid value `{other}`")),
                    }
                }
                // Tolerate extra map-server keys (mode, etc.) so existing
                // metadata files load unmodified.
                _ => {}
            }
        }
        let image = image.ok_or("missing `image` key")?;
        let resolution = resolution.ok_or("missing `resolution` key")?;
        let (origin_x, origin_y, origin_yaw) = origin.ok_or("missing `origin` key")?;
        if !(resolution > 0.0) {
            return Err("resolution must be > 0".into());
        }
        if origin_yaw.abs() > 1e-12 {
            return Err("origin yaw must be 0".into());
        }
        if free_thresh > occupied_thresh {
            return Err("free_thresh must not exceed occupied_thresh".into());
        }
        Ok(MapMetadata {
            image,
            resolution,
            origin_x,
            origin_y,
            origin_yaw,
            occupied_thresh,
            free_thresh,
            negate,
        })
    }
}

struct Pgm {
    width: usize,
    height: usize,
    maxval: u16,
    data: Vec<u8>,
}

/// Parses a binary (P5) portable graymap with 8-bit samples.
fn parse_pgm(bytes: &[u8]) -> std::result::Result<Pgm, String> {
    let mut pos = 0usize;

    let next_token = |pos: &mut usize| -> std::result::Result<String, String> {
        // Skip whitespace and `#` comments.
        loop {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < bytes.len() && bytes[*pos] == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
            } else {
                break;
            }
        }
        let start = *pos;
        while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if start == *pos {
            return Err("unexpected end of header".into());
        }
        String::from_utf8(bytes[start..*pos].to_vec()).map_err(|_| "non-ascii header".into())
    };

    let magic = next_token(&mut pos)?;
    if magic != "P5" {
        return Err(format!("expected P5 magic, found `{magic}`"));
    }
    let width: usize = next_token(&mut pos)?
        .parse()
        .map_err(|_| "invalid width".to_string())?;
    let height: usize = next_token(&mut pos)?
        .parse()
        .map_err(|_| "invalid height".to_string())?;
    let maxval: u16 = next_token(&mut pos)?
        .parse()
        .map_err(|_| "invalid maxval".to_string())?;
    if maxval == 0 || maxval > 255 {
        return Err(format!("unsupported maxval {maxval} (need 8-bit)"));
    }
    // Exactly one whitespace byte separates the header from the payload.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err("missing header terminator".into());
    }
    pos += 1;
    let need = width
        .checked_mul(height)
        .ok_or("image dimensions overflow")?;
    let data = &bytes[pos..];
    if data.len() < need {
        return Err(format!(
            "payload holds {} bytes, header promises {need}",
            data.len()
        ));
    }
    Ok(Pgm {
        width,
        height,
        maxval,
        data: data[..need].to_vec(),
    })
}
