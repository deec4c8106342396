//! Integrates the Arnold system coupled to the robot kinematics and shows
//! the two properties the planner relies on: smooth constant-speed motion
//! and sensitivity to initial conditions.
//!
//! ```bash
//! cargo run --example chaos_trajectory
//! ```

use ccpp::chaos::{rk4_step, sensitivity_probe, ArnoldParams, AugmentedState, DsIndex, ARNOLD_IC};
use ccpp::gridmap::MapPoint;

fn main() {
    let params = ArnoldParams::default();
    println!(
        "Arnold system: A={} B={} C={}  v={} m/s  dt={} s",
        params.a, params.b, params.c, params.v, params.dt
    );

    // A short orbit from the canonical initial conditions.
    let mut state = AugmentedState::new(ARNOLD_IC, MapPoint::new(0.0, 0.0));
    println!("\n step      x       y       z        X        Y");
    for step in 0..=20 {
        if step % 4 == 0 {
            println!(
                "{step:5}  {:6.3}  {:6.3}  {:6.3}  {:7.3}  {:7.3}",
                state.x, state.y, state.z, state.pos.x, state.pos.y
            );
        }
        state = rk4_step(&state, &params, DsIndex::X);
    }

    // The same Arnold state drives three different headings.
    let s0 = AugmentedState::new((0.4, 1.3, -0.2), MapPoint::new(0.0, 0.0));
    println!("\nDS-index switching (one step from the same state):");
    for idx in [DsIndex::X, DsIndex::Y, DsIndex::Z] {
        let s1 = rk4_step(&s0, &params, idx);
        println!(
            "  heading from {}: step lands at ({:6.3}, {:6.3})",
            idx.name(),
            s1.pos.x,
            s1.pos.y
        );
    }

    // Sensitivity to initial conditions: a 1e-8 nudge grows past 1e-2.
    let a = AugmentedState::new(ARNOLD_IC, MapPoint::new(0.0, 0.0));
    let mut b = a;
    b.x += 1e-8;
    let sep = sensitivity_probe(&a, &b, &params, DsIndex::X, 2000);
    let crossing = sep.iter().position(|&d| d > 1e-2);
    match crossing {
        Some(step) => println!(
            "\nPerturbation 1e-8 exceeds 1e-2 after {step} steps ({:.0} s of simulated flow)",
            step as f64 * params.dt
        ),
        None => println!("\nNo divergence within the horizon (unexpected for these parameters)"),
    }
    let last = *sep.last().unwrap();
    println!("Separation after {} steps: {last:.3}", sep.len() - 1);
}
