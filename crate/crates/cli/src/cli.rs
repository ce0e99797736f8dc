//! Argument parsing and command dispatch for the `pragpal` binary.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pragpal_core::{
    run_simulation, BoundedArea, Error, HeadYaw, PathConfig, Point2, SimOptions, StopCondition,
};
use rayon::prelude::*;
use thiserror::Error as ThisError;

use crate::render::{render_svg, RenderOptions};
use crate::stats;
use crate::trace::{TraceError, TraceFile};

pub const FEET_TO_METERS: f64 = 0.3048;

/// Exit codes: 0 success, 1 runtime failure, 2 usage or invalid
/// configuration, 3 the walker got trapped.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(Error::InvalidConfig(_) | Error::InvalidOptions(_) | Error::InvalidArea { .. }) => 2,
            CliError::Engine(Error::Trapped { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pragpal", version, about = "Limitless walking paths in a bounded room")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one walker and write its JSON trace.
    Simulate(SimulateArgs),
    /// Draw a trace as a top-down SVG.
    Render(RenderArgs),
    /// Print statistics recomputed from a trace.
    Stats(StatsArgs),
    /// Run a range of seeds in parallel, one trace per seed.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Room size as WIDTHxDEPTH.
    #[arg(long, default_value = "24x17", value_parser = parse_area)]
    pub area: (f64, f64),
    /// Interpret --area in feet and convert it to meters.
    #[arg(long)]
    pub feet: bool,
    #[arg(long, default_value_t = PathConfig::DEFAULT_SEGMENT_LENGTH)]
    pub segment_length: f64,
    #[arg(long, default_value_t = PathConfig::DEFAULT_PATH_WIDTH)]
    pub path_width: f64,
    /// Fan resolution j; j + 1 probe rays are cast.
    #[arg(long, default_value_t = PathConfig::DEFAULT_RAYS)]
    pub rays: u32,
    #[arg(long, default_value_t = PathConfig::DEFAULT_WINDOW_SEGMENTS)]
    pub window_segments: usize,
    /// Start position as X,Z (defaults to the room center).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub start: Option<(f64, f64)>,
    /// Start yaw in radians, 0 = +z, positive toward +x.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start_yaw: f64,
    /// Walker speed in units per second.
    #[arg(long, default_value_t = PathConfig::DEFAULT_WALKER_SPEED)]
    pub speed: f64,
    /// Simulation time step in seconds (default 1/72).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Seconds to simulate (default 300).
    #[arg(long, conflicts_with = "max_advances")]
    pub duration: Option<f64>,
    /// Stop after this many window advances instead of a duration.
    #[arg(long)]
    pub max_advances: Option<u64>,
    /// Distance from the trigger vertex that counts as arrival.
    #[arg(long, default_value_t = pragpal_core::DEFAULT_TRIGGER_TOLERANCE)]
    pub tolerance: f64,
    /// Keep every n-th walker sample in the trace.
    #[arg(long, default_value_t = 10)]
    pub sample_every: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, env = "PRAGPAL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub trace: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Pixels per unit.
    #[arg(long, default_value_t = 40.0)]
    pub scale: f64,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub trace: PathBuf,
    /// Emit CSV instead of text.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Seed range, `a..b` (exclusive) or `a..=b`.
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: RangeInclusive<u64>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

fn parse_pair(s: &str, sep: char, what: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(sep)
        .ok_or_else(|| format!("expected {what}, got {s:?}"))?;
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {v:?} in {s:?}: {e}"))
    };
    Ok((num(a)?, num(b)?))
}

pub fn parse_area(s: &str) -> Result<(f64, f64), String> {
    parse_pair(&s.to_ascii_lowercase(), 'x', "WIDTHxDEPTH")
}

pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    parse_pair(s, ',', "X,Z")
}

pub fn parse_seeds(s: &str) -> Result<RangeInclusive<u64>, String> {
    let s = s.strip_prefix("seeds=").unwrap_or(s);
    let num = |v: &str| v.parse::<u64>().map_err(|e| format!("bad seed {v:?}: {e}"));
    if let Some((a, b)) = s.split_once("..=") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty seed range {s:?}"));
        }
        Ok(a..=b)
    } else if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a >= b {
            return Err(format!("empty seed range {s:?}"));
        }
        Ok(a..=b - 1)
    } else {
        Err(format!("expected a..b or a..=b, got {s:?}"))
    }
}

impl ScenarioArgs {
    pub fn config(&self, seed: u64) -> Result<PathConfig, CliError> {
        let factor = if self.feet { FEET_TO_METERS } else { 1.0 };
        let area = BoundedArea::new(self.area.0 * factor, self.area.1 * factor)?;
        let start_position = match self.start {
            Some((x, z)) => Point2::try_new(x, z)?,
            None => area.center(),
        };
        let config = PathConfig {
            area,
            segment_length: self.segment_length,
            path_width: self.path_width,
            rays: self.rays,
            window_segments: self.window_segments,
            start_position,
            start_yaw: HeadYaw::new(self.start_yaw)?,
            walker_speed: self.speed,
            seed,
        };
        config.validate().map_err(Error::from)?;
        Ok(config)
    }

    pub fn options(&self) -> SimOptions {
        let defaults = SimOptions::default();
        let stop = match (self.max_advances, self.duration) {
            (Some(count), _) => StopCondition::Advances { count },
            (None, Some(seconds)) => StopCondition::Duration { seconds },
            (None, None) => defaults.stop,
        };
        SimOptions {
            stop,
            dt: self.dt.unwrap_or(defaults.dt),
            trigger_tolerance: self.tolerance,
            sample_every: self.sample_every,
        }
    }
}

fn simulate_to(scenario: &ScenarioArgs, seed: u64, out: &Path) -> Result<TraceFile, CliError> {
    let config = scenario.config(seed)?;
    let trace: TraceFile = run_simulation(&config, &scenario.options())?.into();
    trace.write(out)?;
    Ok(trace)
}

fn summary(trace: &TraceFile) -> String {
    let t = &trace.totals;
    format!(
        "pal_units: {:.6}\nprag_units: {}\nadvances: {}\ncorner_escapes: {}\nmin_corridor_clearance: {:.6}\n",
        t.pal_units, t.prag_units, t.advance_count, t.corner_escape_count, t.min_corridor_clearance
    )
}

/// Runs a parsed command, returning what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Simulate(args) => {
            let trace = simulate_to(&args.scenario, args.seed, &args.out)?;
            Ok(format!("{}trace: {}\n", summary(&trace), args.out.display()))
        }
        Command::Render(args) => {
            if !(args.scale.is_finite() && args.scale > 0.0) {
                return Err(CliError::Usage(format!("--scale must be > 0, got {}", args.scale)));
            }
            let trace = TraceFile::read(&args.trace)?;
            let svg = render_svg(
                &trace,
                &RenderOptions {
                    scale: args.scale,
                    ..RenderOptions::default()
                },
            )?;
            fs::write(&args.out, svg).map_err(|source| CliError::Io {
                path: args.out.clone(),
                source,
            })?;
            Ok(format!("svg: {}\n", args.out.display()))
        }
        Command::Stats(args) => {
            let trace = TraceFile::read(&args.trace)?;
            let s = stats::compute(&trace);
            let mut out = if args.csv { stats::to_csv(&s) } else { stats::to_text(&s) };
            let bad = stats::mismatches(&trace, &s);
            if !bad.is_empty() && !args.csv {
                out.push_str(&format!("warning: stored totals disagree on {}\n", bad.join(", ")));
            }
            Ok(out)
        }
        Command::Sweep(args) => {
            // Validate once up front so a bad flag fails before any work.
            args.scenario.config(*args.seeds.start())?;
            fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Io {
                path: args.out_dir.clone(),
                source,
            })?;
            let seeds: Vec<u64> = args.seeds.clone().collect();
            let results: Vec<(u64, Result<TraceFile, CliError>)> = seeds
                .par_iter()
                .map(|&seed| {
                    let out = args.out_dir.join(format!("trace-{seed}.json"));
                    (seed, simulate_to(&args.scenario, seed, &out))
                })
                .collect();
            let mut out = String::from("seed,pal_units,prag_units,advances,corner_escapes,min_corridor_clearance\n");
            for (seed, result) in results {
                let t = result?;
                let t = &t.totals;
                out.push_str(&format!(
                    "{seed},{},{},{},{},{}\n",
                    t.pal_units, t.prag_units, t.advance_count, t.corner_escape_count, t.min_corridor_clearance
                ));
            }
            Ok(out)
        }
    }
}
