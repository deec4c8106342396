//! Chaotic coverage path planning on 2D occupancy-grid maps.
//!
//! The library simulates a mobile robot that covers an environment by
//! following trajectories of the chaotic Arnold system: unpredictable to an
//! observer, fully deterministic to the operator. It provides
//!
//! - occupancy-grid maps with map-server-compatible file ingestion
//!   ([`gridmap`]),
//! - a quadtree over free cells with Euclidean radius queries ([`spatial`]),
//! - the Arnold system coupled to the robot kinematics, integrated by RK4
//!   ([`chaos`]),
//! - k-means map zoning for trajectory dispersal ([`zoning`]),
//! - cost-guided obstacle avoidance and two-stage trajectory planning
//!   ([`planner`]),
//! - sensor-FOV-based real-time coverage bookkeeping ([`coverage`]),
//! - a deterministic mission clock with a grid path planner and
//!   constant-speed follower ([`sim`]), and
//! - mission orchestration, experiment harnesses, and artifact export
//!   ([`mission`], [`commands`]).
//!
//! Every run is a pure function of (map, configuration, seed): rerunning a
//! mission reproduces its outputs byte for byte.
//!
//! See the `examples/` directory for one runnable example per capability and
//! the `ccpp` binary for the `run`, `runway`, and `zones` subcommands.

pub mod chaos;
pub mod commands;
pub mod config;
pub mod coverage;
pub mod error;
pub mod export;
pub mod gridmap;
pub mod maps;
pub mod mission;
pub mod planner;
pub mod sim;
pub mod spatial;
pub mod zoning;

pub use error::{Error, Result};
pub use gridmap::{CellClass, CellCoord, MapPoint, OccupancyGrid};
pub use spatial::Quadtree;
