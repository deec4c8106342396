//! Runs a complete coverage mission on a synthetic room through the same
//! path the CLI uses: the map is written to a map-server-style PGM/YAML
//! pair, a config file points at it, and `cmd_run` produces the full set of
//! artifacts (report, trajectory log, metrics, coverage and zone images).
//!
//! ```bash
//! cargo run --release --example desk_mission
//! ```

use std::fs;
use std::path::PathBuf;

use ccpp::commands::cmd_run;
use ccpp::config::RunConfig;
use ccpp::export::write_map_files;
use ccpp::maps::walled_room;

fn main() -> ccpp::Result<()> {
    let out = PathBuf::from("target/example-out/desk_mission");
    fs::create_dir_all(&out).expect("create output directory");

    // A 10 m x 10 m empty room at 0.05 m/cell.
    let grid = walled_room(10.0, 10.0, 0.05);
    write_map_files(&grid, &out, "room")?;

    let config_path = out.join("mission.cfg");
    fs::write(
        &config_path,
        "# desk-scale coverage mission\n\
         map = room.yaml\n\
         seed = 1\n\
         v = 0.22\n\
         dc = 90\n\
         sr = 3.5\n\
         zones = 10\n\
         n_iter = 20\n\
         ns = 20\n\
         out_dir = .\n",
    )
    .expect("write config");

    let cfg = RunConfig::load(&config_path)?;
    let artifacts = cmd_run(&cfg)?;
    let r = &artifacts.report;

    println!("mission complete:");
    println!(
        "  coverage      {:.2}% (target {:.0}%)",
        r.tc_percent, r.dc_percent
    );
    println!("  coverage time {:.2} simulated minutes", r.ct_minutes);
    println!(
        "  goals         {} ({} sets)",
        r.goals_dispatched, r.sets_generated
    );
    println!("  zone hops     {}", r.hops);
    println!(
        "  replacements  {} at stage one, {} at stage two",
        r.stage1_replacements, r.stage2_replacements
    );
    println!("artifacts:");
    for p in [
        &artifacts.report_path,
        &artifacts.trajectory_path,
        &artifacts.metrics_path,
        &artifacts.coverage_image_path,
        &artifacts.zones_image_path,
    ] {
        println!("  {}", p.display());
    }
    Ok(())
}
