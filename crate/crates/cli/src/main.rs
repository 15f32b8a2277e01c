//! Operator entry point: run simulations, explore scheduler interleavings
//! exhaustively, print grid circles, and render traces.
//!
//! Exit codes are contract values: 0 success, 1 monitor violation or
//! incomplete run, 2 configuration or input errors, 3 inconclusive
//! exploration (budget exceeded without a violation).

mod config;
mod render;

use circlefg_core::engine::{
    monitors, read_jsonl, run, write_jsonl, MonitorReport, RunLimits, RunReport,
};
use circlefg_core::explorer::{explore, ExploreOpts};
use circlefg_core::lattice::{grid_circumference, Circle};
use circlefg_core::scheduler::Policy;
use clap::{Parser, Subcommand};
use config::RunConfig;
use render::RenderTarget;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "circlefg", about = "Circle formation by luminous fat robots on the grid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation, write its trace and report, and check every
    /// monitor.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Trace output (JSON lines, one event per line).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Report output (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Overrides the config seed (and CIRCLEFG_SEED).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustively explore scheduler interleavings of a configuration.
    Explore {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[arg(long, default_value_t = u32::MAX)]
        max_depth: u32,
        /// Write the first violation as a replayable run config.
        #[arg(long)]
        script_out: Option<PathBuf>,
    },
    /// Print the adopted circle points for a diameter and center.
    Circ {
        #[arg(long)]
        d: i64,
        /// Center column.
        #[arg(long, default_value_t = 0)]
        cx: i64,
        /// Doubled center row.
        #[arg(long, default_value_t = 0)]
        cy2: i64,
    },
    /// Render a trace as ASCII boards or SVG snapshots.
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, conflicts_with = "ascii")]
        svg: Option<PathBuf>,
        #[arg(long)]
        ascii: bool,
        /// Also snapshot after every K events.
        #[arg(long)]
        every: Option<u64>,
    },
}

#[derive(Serialize)]
struct FullReport<'a> {
    run: &'a RunReport,
    monitors: &'a MonitorReport,
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("{}", message);
    ExitCode::from(code)
}

fn cmd_run(
    config_path: &PathBuf,
    trace: Option<&PathBuf>,
    report: Option<&PathBuf>,
    seed: Option<u64>,
) -> ExitCode {
    let config = match RunConfig::load(config_path) {
        Ok(c) => c,
        Err(e) => return fail(2, &e),
    };
    let seed = match config.effective_seed(seed) {
        Ok(s) => s,
        Err(e) => return fail(2, &e),
    };
    let init = config.init_config(seed);
    let limits = RunLimits {
        max_events: config.max_events,
    };
    let outcome = match run(&init, &config.scheduler, &limits) {
        Ok(o) => o,
        Err(e) => return fail(2, &e.to_string()),
    };
    let monitor_report = monitors(&init, &outcome.events);

    if let Some(path) = trace {
        let mut buf = Vec::new();
        if let Err(e) = write_jsonl(&outcome.events, &mut buf) {
            return fail(2, &format!("cannot serialize trace: {}", e));
        }
        if let Err(e) = std::fs::write(path, buf) {
            return fail(2, &format!("cannot write {}: {}", path.display(), e));
        }
    }
    if let Some(path) = report {
        let full = FullReport {
            run: &outcome.report,
            monitors: &monitor_report,
        };
        let json = serde_json::to_string_pretty(&full).expect("report serialization");
        if let Err(e) = std::fs::write(path, json) {
            return fail(2, &format!("cannot write {}: {}", path.display(), e));
        }
    }

    println!(
        "events: {}  terminated: {}  monitors: {}",
        outcome.report.events,
        outcome.report.terminated,
        if monitor_report.all_hold() {
            "all hold"
        } else {
            "VIOLATED"
        }
    );
    match &outcome.report.final_circle {
        Some(c) => println!(
            "agreed circle: center ({}, {}), diameter {}",
            c.center2.0 as f64 / 2.0,
            c.center2.1 as f64 / 2.0,
            c.d
        ),
        None => println!("agreed circle: none"),
    }
    for (i, (p, c)) in outcome
        .report
        .final_positions
        .iter()
        .zip(&outcome.report.final_colors)
        .enumerate()
    {
        println!("robot {:>2}: ({}, {}) {:?}", i, p.x, p.y, c);
    }
    for m in &monitor_report.monitors {
        if !matches!(m.verdict, circlefg_core::engine::MonitorVerdict::Holds) {
            println!("monitor {}: {:?}", m.id, m.verdict);
        }
    }

    if monitor_report.all_hold() && outcome.report.terminated {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_explore(
    config_path: &PathBuf,
    max_states: usize,
    max_depth: u32,
    script_out: Option<&PathBuf>,
) -> ExitCode {
    let config = match RunConfig::load(config_path) {
        Ok(c) => c,
        Err(e) => return fail(2, &e),
    };
    let init = config.init_config(config.seed);
    let opts = ExploreOpts {
        max_states,
        max_depth,
    };
    let report = match explore(&init, &opts) {
        Ok(r) => r,
        Err(e) => return fail(2, &e.to_string()),
    };
    println!(
        "states: {}  exhaustive: {}  quiescent: {}  violations: {}",
        report.states_visited,
        report.exhaustive,
        report.terminal_states,
        report.violations.len()
    );
    for v in report.violations.iter().take(4) {
        println!(
            "violation {}: {} (path of {} events)",
            v.monitor,
            v.detail,
            v.path.len()
        );
    }
    if let Some(v) = report.violations.first() {
        if let Some(path) = script_out {
            let mut replay = config.clone();
            replay.scheduler = Policy::Script {
                events: v.path.clone(),
            };
            let json = serde_json::to_string_pretty(&replay).expect("script serialization");
            if let Err(e) = std::fs::write(path, json) {
                return fail(2, &format!("cannot write {}: {}", path.display(), e));
            }
            println!("replay config written to {}", path.display());
        }
        return ExitCode::from(1);
    }
    if !report.exhaustive {
        return fail(3, "state budget exceeded before the graph was exhausted");
    }
    ExitCode::SUCCESS
}

fn cmd_circ(d: i64, cx: i64, cy2: i64) -> ExitCode {
    if d < 1 {
        return fail(2, "usage: --d must be at least 1");
    }
    let circle = Circle {
        center2: (2 * cx, cy2),
        d,
    };
    match grid_circumference(&circle) {
        Ok(points) => {
            for p in points {
                println!("{} {}", p.x, p.y);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(2, &e.to_string()),
    }
}

fn cmd_render(trace: &PathBuf, svg: Option<&PathBuf>, ascii: bool, every: Option<u64>) -> ExitCode {
    let file = match std::fs::File::open(trace) {
        Ok(f) => f,
        Err(e) => return fail(2, &format!("cannot open {}: {}", trace.display(), e)),
    };
    let events = match read_jsonl(std::io::BufReader::new(file)) {
        Ok(ev) => ev,
        Err(e) => return fail(2, &format!("malformed trace: {}", e)),
    };
    let target = match (svg, ascii) {
        (Some(dir), _) => RenderTarget::SvgDir(dir.clone()),
        (None, _) => RenderTarget::Ascii,
    };
    match render::render(&events, &target, every, 0.5) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => fail(2, &format!("render failed: {}", e)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run {
            config,
            trace,
            report,
            seed,
        } => cmd_run(config, trace.as_ref(), report.as_ref(), *seed),
        Command::Explore {
            config,
            max_states,
            max_depth,
            script_out,
        } => cmd_explore(config, *max_states, *max_depth, script_out.as_ref()),
        Command::Circ { d, cx, cy2 } => cmd_circ(*d, *cx, *cy2),
        Command::Render {
            trace,
            svg,
            ascii,
            every,
        } => cmd_render(trace, svg.as_ref(), *ascii, *every),
    }
}
