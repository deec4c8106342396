//! Plans a path around a wall on the inflated grid and follows it at
//! constant speed, printing the scan-tick events along the way.
//!
//! ```bash
//! cargo run --example plan_and_follow
//! ```

use ccpp::gridmap::MapPoint;
use ccpp::maps::MapBuilder;
use ccpp::sim::{NavEvent, Navigator, PlanProgress};

fn main() -> ccpp::Result<()> {
    // 10 m x 10 m room, wall across the middle with a gap near the south end.
    let grid = MapBuilder::new(202, 202, 0.05, MapPoint::new(0.0, 0.0))
        .border(1, 100)
        .fill_rect(100, 40, 104, 201, 100)
        .build()?;

    let start = MapPoint::new(2.525, 5.025);
    let goal = MapPoint::new(7.525, 5.025);
    let mut nav = Navigator::new(&grid, start, 0.5, 0.2, 0.2, 1.0)?;
    nav.scan_due(); // consume the t = 0 tick

    let plan = nav
        .plan(&grid, goal)
        .expect("goal is reachable through the gap");
    println!(
        "plan: {} waypoints, {:.2} m (straight line would be {:.2} m)",
        plan.waypoints.len(),
        plan.length,
        start.distance(goal)
    );
    for w in &plan.waypoints {
        println!("  via ({:6.2}, {:6.2})", w.x, w.y);
    }

    let mut progress = PlanProgress::new(plan);
    let mut ticks = 0;
    loop {
        let events = nav.advance(&mut progress, 5.0);
        let mut done = false;
        for event in events {
            match event {
                NavEvent::SensorDue {
                    position, stamp, ..
                } => {
                    ticks += 1;
                    if ticks % 5 == 0 {
                        println!(
                            "  t = {stamp:6.1} s  robot at ({:6.2}, {:6.2})",
                            position.x, position.y
                        );
                    }
                }
                NavEvent::GoalReached { stamp } => {
                    println!("goal reached at t = {stamp:.2} s after {ticks} scan ticks");
                    done = true;
                }
            }
        }
        if done {
            break;
        }
    }
    let s = nav.state();
    println!(
        "final pose ({:.2}, {:.2}), traveled {:.2} m in {:.2} s at {} m/s",
        s.position.x,
        s.position.y,
        s.v * s.time,
        s.time,
        s.v
    );
    Ok(())
}
