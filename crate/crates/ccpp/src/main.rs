//! Thin command-line front end over [`ccpp::commands`].

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use ccpp::commands::{cmd_run, cmd_runway, cmd_zones};
use ccpp::config::RunConfig;

#[derive(Parser)]
#[command(
    name = "ccpp",
    version,
    about = "Chaotic coverage path planning simulator for 2D occupancy-grid maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a coverage mission and export its artifacts
    Run(CommonArgs),
    /// Straight-line high-speed drive measuring coverage-update spacing
    Runway(CommonArgs),
    /// Zone the map and export the zone preview image (no mission)
    Zones(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Mission configuration file (flat `key = value` text)
    #[arg(long)]
    config: PathBuf,
    /// Override the config's RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for artifacts
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn load(&self) -> anyhow::Result<RunConfig> {
        RunConfig::load_with_overrides(&self.config, self.seed, self.out.clone())
            .with_context(|| format!("loading config {}", self.config.display()))
    }
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run(args) => {
            let cfg = args.load()?;
            let artifacts = cmd_run(&cfg)?;
            let r = &artifacts.report;
            println!("mission finished: reached_dc = {}", r.reached_dc);
            println!("  ct_minutes          = {:.3}", r.ct_minutes);
            println!("  tc_percent          = {:.3}", r.tc_percent);
            println!("  hops                = {}", r.hops);
            println!("  goals_dispatched    = {}", r.goals_dispatched);
            println!("  stage1_replacements = {}", r.stage1_replacements);
            println!("  stage2_replacements = {}", r.stage2_replacements);
            println!("  nav_failures        = {}", r.nav_failures);
            println!("artifacts in {}", artifacts.out_dir.display());
        }
        Command::Runway(args) => {
            let cfg = args.load()?;
            let stats = cmd_runway(&cfg)?;
            println!("runway finished: {} coverage updates", stats.updates);
            println!("  distance_driven_m = {:.3}", stats.distance_driven_m);
            println!("  average_m         = {:.3}", stats.average_m);
            println!("  max_m             = {:.3}", stats.max_m);
            println!("  min_m             = {:.3}", stats.min_m);
            println!("  sr_m              = {:.3}", stats.sr_m);
            println!("  coverage_gap      = {}", stats.coverage_gap);
        }
        Command::Zones(args) => {
            let cfg = args.load()?;
            let path = cmd_zones(&cfg)?;
            println!("zone preview written to {}", path.display());
        }
    }
    Ok(())
}
