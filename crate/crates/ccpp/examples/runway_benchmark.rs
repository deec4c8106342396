//! The high-speed runway diagnostic: drive a long corridor straight at
//! constant speed and measure how far the robot travels between coverage
//! worker calls. An average below the sensor range means the coverage
//! calculation keeps up with the robot.
//!
//! ```bash
//! cargo run --release --example runway_benchmark
//! ```

use std::fs;
use std::path::PathBuf;

use ccpp::commands::cmd_runway;
use ccpp::config::RunConfig;
use ccpp::export::write_map_files;
use ccpp::maps::corridor;

fn main() -> ccpp::Result<()> {
    let out = PathBuf::from("target/example-out/runway");
    fs::create_dir_all(&out).expect("create output directory");

    // 60 m x 4 m corridor.
    let grid = corridor(60.0, 4.0, 0.05);
    write_map_files(&grid, &out, "runway")?;

    println!(" v (m/s)  SR (m)  updates  avg (m)  max (m)  min (m)  gap?");
    for (v, sr) in [(5.0, 5.0), (5.0, 7.5), (3.0, 7.5)] {
        let config_path = out.join(format!("runway_v{v}_sr{sr}.cfg"));
        fs::write(
            &config_path,
            format!(
                "map = runway.yaml\nseed = 1\nv = {v}\nsr = {sr}\nzones = 4\nstart_x = 1.0\nstart_y = 2.0\nout_dir = .\n"
            ),
        )
        .expect("write config");
        let cfg = RunConfig::load(&config_path)?;
        let stats = cmd_runway(&cfg)?;
        println!(
            "  {v:5.1}  {sr:6.1}  {:7}  {:7.3}  {:7.3}  {:7.3}  {}",
            stats.updates,
            stats.average_m,
            stats.max_m,
            stats.min_m,
            if stats.coverage_gap { "YES" } else { "no" }
        );
    }
    println!("\n(each update is one worker call; spacing = speed x scan cadence)");
    Ok(())
}
