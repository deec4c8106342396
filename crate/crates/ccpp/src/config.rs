//! Mission configuration: flat `key = value` text files (one key per line,
//! `#` comments), diff-friendly for parameter sweeps.
//!
//! Required keys: `map` (path to the map metadata file) and `seed`.
//! Relative paths resolve against the config file's directory. Unknown keys
//! are errors, so typos surface immediately.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::chaos::{ArnoldParams, DsIndex};
use crate::coverage::SensorConfig;
use crate::error::{Error, Result};
use crate::gridmap::MapPoint;
use crate::planner::PlannerConfig;

/// Everything one mission run depends on. The same config drives the `run`,
/// `runway`, and `zones` commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Map metadata file (map-server-style keys; names the image file).
    pub map_yaml: PathBuf,
    /// Explicit image path, overriding the metadata's `image` key.
    pub map_image: Option<PathBuf>,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Robot speed, m/s.
    pub v: f64,
    /// Arnold integration step, seconds.
    pub dt: f64,
    /// Desired coverage, percent.
    pub dc: f64,
    /// Sensor range SR, meters.
    pub sr: f64,
    /// Sensor field of view, radians.
    pub fov: (f64, f64),
    /// Number of k-means zones.
    pub zones: usize,
    pub n_iter: usize,
    pub ns: usize,
    pub th1: f64,
    pub th2: f64,
    /// Replacement query radius, cell lengths.
    pub r: f64,
    /// Cost neighborhood radius, cell lengths.
    pub l: f64,
    /// RNG seed; mandatory so every run is reproducible.
    pub seed: u64,
    pub goal_threshold: f64,
    /// Coverage tick period, simulated seconds.
    pub scan_cadence: f64,
    /// Obstacle inflation radius, meters.
    pub robot_radius: f64,
    pub ds_primary: DsIndex,
    pub bad_run_limit: usize,
    /// Coverage worker partitions (1 = single-threaded).
    pub worker_partitions: usize,
    /// Quadtree node capacity before a split.
    pub quadtree_capacity: usize,
    /// Robot start; defaults to the passable cell nearest the map center.
    pub start: Option<MapPoint>,
    pub out_dir: Option<PathBuf>,
    /// Watchdog on simulated time, minutes; unlimited when absent.
    pub max_sim_minutes: Option<f64>,
}

impl RunConfig {
    /// A config with every defaultable field defaulted. `map_yaml` and
    /// `seed` still need real values before use.
    pub fn template() -> Self {
        let planner = PlannerConfig::default();
        let arnold = ArnoldParams::default();
        let sensor = SensorConfig::default();
        RunConfig {
            map_yaml: PathBuf::new(),
            map_image: None,
            a: arnold.a,
            b: arnold.b,
            c: arnold.c,
            v: arnold.v,
            dt: arnold.dt,
            dc: planner.dc,
            sr: sensor.max_range,
            fov: sensor.fov,
            zones: 20,
            n_iter: planner.n_iter,
            ns: planner.ns,
            th1: planner.th1,
            th2: planner.th2,
            r: planner.r,
            l: planner.l,
            seed: 0,
            goal_threshold: 0.2,
            scan_cadence: 0.2,
            robot_radius: 0.2,
            ds_primary: planner.ds_primary,
            bad_run_limit: planner.bad_run_limit,
            worker_partitions: 1,
            quadtree_capacity: 8,
            start: None,
            out_dir: None,
            max_sim_minutes: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::load_with_overrides(path, None, None)
    }

    /// Loads a config applying CLI overrides. The seed may come from either
    /// the file or the override, but must come from somewhere.
    pub fn load_with_overrides(
        path: &Path,
        seed_override: Option<u64>,
        out_override: Option<PathBuf>,
    ) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let (mut cfg, mut seed_set) = Self::parse(&text, base)?;
        if let Some(seed) = seed_override {
            cfg.seed = seed;
            seed_set = true;
        }
        if let Some(out) = out_override {
            cfg.out_dir = Some(out);
        }
        if !seed_set {
            return Err(Error::config(
                "seed",
                "missing; set it in the config or pass --seed",
            ));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn parse(text: &str, base: &Path) -> Result<(Self, bool)> {
        let mut pairs = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, found `{line}`"),
                )
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if pairs.insert(key.clone(), value).is_some() {
                return Err(Error::config(key, "duplicate key"));
            }
        }

        let mut cfg = RunConfig::template();
        let mut seed_set = false;
        let mut start_x = None;
        let mut start_y = None;
        let resolve = |v: &str| -> PathBuf {
            let p = PathBuf::from(v);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        };
        for (key, value) in &pairs {
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .map_err(|_| Error::config(key, format!("invalid number `{value}`")))
            };
            let int = || -> Result<usize> {
                value
                    .parse::<usize>()
                    .map_err(|_| Error::config(key, format!("invalid integer `{value}`")))
            };
            match key.as_str() {
                "map" => cfg.map_yaml = resolve(value),
                "map_image" => cfg.map_image = Some(resolve(value)),
                "a" => cfg.a = num()?,
                "b" => cfg.b = num()?,
                "c" => cfg.c = num()?,
                "v" => cfg.v = num()?,
                "dt" => cfg.dt = num()?,
                "dc" => cfg.dc = num()?,
                "sr" => cfg.sr = num()?,
                "fov_min" => cfg.fov.0 = num()?,
                "fov_max" => cfg.fov.1 = num()?,
                "zones" => cfg.zones = int()?,
                "n_iter" => cfg.n_iter = int()?,
                "ns" => cfg.ns = int()?,
                "th1" => cfg.th1 = num()?,
                "th2" => cfg.th2 = num()?,
                "r" => cfg.r = num()?,
                "l" => cfg.l = num()?,
                "seed" => {
                    cfg.seed = value
                        .parse::<u64>()
                        .map_err(|_| Error::config("seed", format!("invalid seed `{value}`")))?;
                    seed_set = true;
                }
                "goal_threshold" => cfg.goal_threshold = num()?,
                "scan_cadence" => cfg.scan_cadence = num()?,
                "robot_radius" => cfg.robot_radius = num()?,
                "ds_primary" => {
                    cfg.ds_primary = DsIndex::parse(value).ok_or_else(|| {
                        Error::config(
                            "ds_primary",
                            format!("expected x, y, or z, found `{value}`"),
                        )
                    })?;
                }
                "bad_run_limit" => cfg.bad_run_limit = int()?,
                "worker_partitions" => cfg.worker_partitions = int()?,
                "quadtree_capacity" => cfg.quadtree_capacity = int()?,
                "start_x" => start_x = Some(num()?),
                "start_y" => start_y = Some(num()?),
                "out_dir" => cfg.out_dir = Some(resolve(value)),
                "max_sim_minutes" => cfg.max_sim_minutes = Some(num()?),
                other => {
                    return Err(Error::config(other, "unknown key"));
                }
            }
        }
        match (start_x, start_y) {
            (Some(x), Some(y)) => cfg.start = Some(MapPoint::new(x, y)),
            (None, None) => {}
            _ => {
                return Err(Error::config(
                    "start_x/start_y",
                    "both must be given together",
                ));
            }
        }
        if !pairs.contains_key("map") {
            return Err(Error::config(
                "map",
                "missing; point it at a map metadata file",
            ));
        }
        Ok((cfg, seed_set))
    }

    // Negated comparisons are deliberate: `!(x > 0)` also rejects NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        self.planner().validate()?;
        let err = |field: &str, msg: &str| Err(Error::config(field, msg));
        if !(self.v > 0.0) {
            return err("v", "must be > 0");
        }
        if !(self.dt > 0.0) {
            return err("dt", "must be > 0");
        }
        if !(self.sr > 0.0) {
            return err("sr", "must be > 0");
        }
        if self.fov.0 >= self.fov.1 {
            return err("fov_min", "need fov_min < fov_max");
        }
        if self.zones == 0 {
            return err("zones", "must be >= 1");
        }
        if !(self.scan_cadence > 0.0) {
            return err("scan_cadence", "must be > 0");
        }
        if self.goal_threshold < 0.0 {
            return err("goal_threshold", "must be >= 0");
        }
        if self.robot_radius < 0.0 {
            return err("robot_radius", "must be >= 0");
        }
        if self.bad_run_limit == 0 {
            return err("bad_run_limit", "must be >= 1");
        }
        if self.worker_partitions == 0 {
            return err("worker_partitions", "must be >= 1");
        }
        if self.quadtree_capacity == 0 {
            return err("quadtree_capacity", "must be >= 1");
        }
        if let Some(m) = self.max_sim_minutes {
            if !(m > 0.0) {
                return err("max_sim_minutes", "must be > 0");
            }
        }
        Ok(())
    }

    pub fn arnold(&self) -> ArnoldParams {
        ArnoldParams {
            a: self.a,
            b: self.b,
            c: self.c,
            v: self.v,
            dt: self.dt,
        }
    }

    pub fn planner(&self) -> PlannerConfig {
        PlannerConfig {
            n_iter: self.n_iter,
            ns: self.ns,
            th1: self.th1,
            th2: self.th2,
            r: self.r,
            l: self.l,
            dc: self.dc,
            ds_primary: self.ds_primary,
            bad_run_limit: self.bad_run_limit,
            audit_shift: false,
        }
    }

    pub fn sensor(&self) -> SensorConfig {
        SensorConfig {
            max_range: self.sr,
            fov: self.fov,
        }
    }

    pub fn max_sim_seconds(&self) -> f64 {
        self.max_sim_minutes.map_or(f64::INFINITY, |m| m * 60.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("ccpp-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::write(&path, body).unwrap();
        path
    }

    #[test]
    fn parses_a_full_config() {
        let path = write_config(
            "full.cfg",
            "# mission\nmap = maps/room.yaml\nseed = 9\nv = 0.45\ndc = 97\nzones = 40\nfov_min = -1.57\nfov_max = 1.57\nstart_x = 1.0\nstart_y = 2.0\n",
        );
        let cfg = RunConfig::load(&path).unwrap();
        assert!(cfg.map_yaml.ends_with("maps/room.yaml"));
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.v, 0.45);
        assert_eq!(cfg.dc, 97.0);
        assert_eq!(cfg.zones, 40);
        assert_eq!(cfg.fov, (-1.57, 1.57));
        assert_eq!(cfg.start, Some(MapPoint::new(1.0, 2.0)));
        // Defaults survive.
        assert_eq!(cfg.th1, 50.0);
        assert_eq!(cfg.r, 19.0);
    }

    #[test]
    fn missing_seed_is_an_error_unless_overridden() {
        let path = write_config("noseed.cfg", "map = m.yaml\n");
        let err = RunConfig::load(&path).unwrap_err();
        assert!(err.to_string().contains("seed"));
        let cfg = RunConfig::load_with_overrides(&path, Some(3), None).unwrap();
        assert_eq!(cfg.seed, 3);
    }

    #[test]
    fn unknown_key_names_the_field() {
        let path = write_config("unknown.cfg", "map = m.yaml\nseed = 1\nturbo = yes\n");
        let err = RunConfig::load(&path).unwrap_err();
        assert!(err.to_string().contains("turbo"), "{err}");
    }

    #[test]
    fn invalid_values_are_diagnosed_precisely() {
        let path = write_config("bad.cfg", "map = m.yaml\nseed = 1\nth2 = 80\n");
        let err = RunConfig::load(&path).unwrap_err();
        assert!(err.to_string().contains("th2"), "{err}");

        let path = write_config("bad2.cfg", "map = m.yaml\nseed = 1\nns = banana\n");
        let err = RunConfig::load(&path).unwrap_err();
        assert!(err.to_string().contains("ns"), "{err}");
    }
}
