use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use droplet_evap::scenario::{load_config, parse_config, preset, run_scenario, MassFracStatus, RunReport, Validation};
use droplet_evap::Error;

const OUT_ENV: &str = "DROPLET_EVAP_OUT";

#[derive(Parser)]
#[command(name = "droplet-evap", version, about = "Droplet evaporation in a compressible gas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline described by a TOML scenario file.
    Run {
        config: PathBuf,
        /// Output directory (overrides DROPLET_EVAP_OUT and the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in scenario.
    Preset {
        #[arg(value_parser = ["example1", "example2"])]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in scenario file to stdout.
    DumpPreset {
        #[arg(value_parser = ["example1", "example2"])]
        name: String,
    },
    /// Validate a scenario file and report the assumption checks.
    Check { config: PathBuf },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ConfigInvalid(_) => 2,
        Error::Io { .. } => 1,
        _ => 3,
    }
}

fn out_dir(flag: Option<PathBuf>, v: &Validation) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| v.config.output.out_dir.clone())
}

fn print_checks(v: &Validation) {
    for c in &v.checks {
        println!("{} {}: {}", if c.passed { "pass" } else { "warn" }, c.name, c.detail);
    }
    for n in &v.notes {
        println!("note {n}");
    }
}

fn summary(report: &RunReport, dir: &Path) {
    println!("scenario {} written to {}", report.scenario, dir.display());
    match report.blowup_time {
        Some(t) => println!("blow-up time: {t:.6}"),
        None => println!("blow-up time: none"),
    }
    let r = &report.radius;
    println!(
        "radius: {:?} at t = {:.6}, R = {:.6} ({} samples, R'(0) = {:.6})",
        r.termination, r.t_final, r.r_final, r.samples, r.drdt0
    );
    for s in &r.monotonicity {
        println!("  {:?} on [{:.6}, {:.6}]", s.kind, s.start, s.end);
    }
    println!("gas field: {} of {} grid points defined", report.gas_field.valid_points, report.gas_field.points);
    let m = &report.massfrac;
    match &m.status {
        MassFracStatus::Completed => println!(
            "mass fraction: {} steps to t = {:.6}, sup|u| = {:.6} (bound {:.6}, maximum principle {})",
            m.steps,
            m.t_end,
            m.sup_abs,
            m.bound,
            if m.max_principle_holds { "holds" } else { "violated" }
        ),
        MassFracStatus::Skipped(why) => println!("mass fraction: skipped ({why})"),
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        println!("warn {}: {}", c.name, c.detail);
    }
}

struct Failure {
    context: Option<String>,
    err: Error,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Self { context: None, err }
    }
}

fn run(v: Validation, out: Option<PathBuf>) -> Result<(), Failure> {
    let dir = out_dir(out, &v);
    let report =
        run_scenario(&v, &dir).map_err(|err| Failure { context: Some(format!("scenario {}", v.config.name)), err })?;
    summary(&report, &dir);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(), Failure> = match cli.command {
        Command::Run { config, out } => load_config(&config).map_err(Failure::from).and_then(|v| run(v, out)),
        Command::Preset { name, out } => {
            parse_config(preset(&name).expect("name checked by clap")).map_err(Failure::from).and_then(|v| run(v, out))
        }
        Command::DumpPreset { name } => {
            print!("{}", preset(&name).expect("name checked by clap"));
            Ok(())
        }
        Command::Check { config } => load_config(&config).map(|v| print_checks(&v)).map_err(Failure::from),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { context, err }) => {
            match context {
                Some(c) => eprintln!("error: {c}: {err}"),
                None => eprintln!("error: {err}"),
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
