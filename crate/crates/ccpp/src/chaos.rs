//! Arnold system coupled to the robot kinematics, advanced jointly by RK4.
//!
//! The augmented state is five-dimensional: the Arnold coordinates
//! `(x, y, z)` plus the robot position `(X, Y)`. The Arnold flow is
//!
//! ```text
//! dx/dt = A sin z + C cos y
//! dy/dt = B sin x + C cos z
//! dz/dt = C sin y + B cos x
//! ```
//!
//! and the robot moves at constant speed `v` with heading equal to one of
//! the Arnold coordinates (selected by [`DsIndex`]), evaluated consistently
//! at every RK4 stage:
//!
//! ```text
//! dX/dt = v cos θ,   dY/dt = v sin θ,   θ = x | y | z
//! ```
//!
//! All functions here are pure; identical inputs give bit-identical outputs.

use crate::gridmap::MapPoint;

/// Arnold system coefficients plus the kinematic parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArnoldParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Robot speed, meters per second.
    pub v: f64,
    /// Integration step, seconds.
    pub dt: f64,
}

impl Default for ArnoldParams {
    fn default() -> Self {
        ArnoldParams {
            a: 0.5,
            b: 0.25,
            c: 0.25,
            v: 0.22,
            dt: 2.75,
        }
    }
}

/// The canonical initial Arnold coordinates `(x0, y0, z0)`.
pub const ARNOLD_IC: (f64, f64, f64) = (0.0, 1.0, 0.0);

/// Which Arnold coordinate drives the robot heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsIndex {
    X,
    Y,
    Z,
}

impl DsIndex {
    /// The other two indices, in fixed cyclic order from `self`.
    /// Deterministic switching relies on this order.
    pub fn alternates(self) -> [DsIndex; 2] {
        match self {
            DsIndex::X => [DsIndex::Y, DsIndex::Z],
            DsIndex::Y => [DsIndex::Z, DsIndex::X],
            DsIndex::Z => [DsIndex::X, DsIndex::Y],
        }
    }

    pub fn parse(s: &str) -> Option<DsIndex> {
        match s {
            "x" | "X" | "0" => Some(DsIndex::X),
            "y" | "Y" | "1" => Some(DsIndex::Y),
            "z" | "Z" | "2" => Some(DsIndex::Z),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DsIndex::X => "x",
            DsIndex::Y => "y",
            DsIndex::Z => "z",
        }
    }
}

/// Arnold coordinates plus robot position, advanced jointly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentedState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub pos: MapPoint,
}

impl AugmentedState {
    pub fn new(ds: (f64, f64, f64), pos: MapPoint) -> Self {
        AugmentedState {
            x: ds.0,
            y: ds.1,
            z: ds.2,
            pos,
        }
    }

    pub fn ds(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    fn as_array(&self) -> [f64; 5] {
        [self.x, self.y, self.z, self.pos.x, self.pos.y]
    }

    fn from_array(a: [f64; 5]) -> Self {
        AugmentedState {
            x: a[0],
            y: a[1],
            z: a[2],
            pos: MapPoint::new(a[3], a[4]),
        }
    }
}

/// Time derivative of the joint system. The heading is the `idx`-selected
/// Arnold coordinate of the state being evaluated, so every RK4 stage sees
/// the coupled dynamics.
pub(crate) fn derivative(s: &AugmentedState, p: &ArnoldParams, idx: DsIndex) -> [f64; 5] {
    let theta = match idx {
        DsIndex::X => s.x,
        DsIndex::Y => s.y,
        DsIndex::Z => s.z,
    };
    [
        p.a * s.z.sin() + p.c * s.y.cos(),
        p.b * s.x.sin() + p.c * s.z.cos(),
        p.c * s.y.sin() + p.b * s.x.cos(),
        p.v * theta.cos(),
        p.v * theta.sin(),
    ]
}

/// One classic fourth-order Runge-Kutta step of length `p.dt`.
pub fn rk4_step(s: &AugmentedState, p: &ArnoldParams, idx: DsIndex) -> AugmentedState {
    let dt = p.dt;
    let y0 = s.as_array();

    let at = |k: &[f64; 5], h: f64| {
        let mut v = [0.0; 5];
        for i in 0..5 {
            v[i] = y0[i] + h * k[i];
        }
        AugmentedState::from_array(v)
    };

    let k1 = derivative(s, p, idx);
    let k2 = derivative(&at(&k1, dt / 2.0), p, idx);
    let k3 = derivative(&at(&k2, dt / 2.0), p, idx);
    let k4 = derivative(&at(&k3, dt), p, idx);

    let mut out = [0.0; 5];
    for i in 0..5 {
        out[i] = y0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    AugmentedState::from_array(out)
}

/// Integrates both states side by side and reports the Euclidean separation
/// of the Arnold coordinates after each step (`out[0]` is the initial
/// separation, `out[n]` the separation after `n` steps). Test instrumentation
/// for the sensitivity-to-initial-conditions property.
pub fn sensitivity_probe(
    s1: &AugmentedState,
    s2: &AugmentedState,
    p: &ArnoldParams,
    idx: DsIndex,
    horizon: usize,
) -> Vec<f64> {
    let mut a = *s1;
    let mut b = *s2;
    let sep = |a: &AugmentedState, b: &AugmentedState| {
        ((a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.z - b.z).powi(2)).sqrt()
    };
    let mut out = Vec::with_capacity(horizon + 1);
    out.push(sep(&a, &b));
    for _ in 0..horizon {
        a = rk4_step(&a, p, idx);
        b = rk4_step(&b, p, idx);
        out.push(sep(&a, &b));
    }
    out
}
