use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cqed_core::experiment::{
    run_phase_match, run_sweep, write_phase_match_csv, write_report, write_sweep_csv,
    write_trajectory_csv, Grid, RunConfig, SweepParameter, SweepSpec,
};
use cqed_core::observables::run_with_trajectory;
use cqed_core::{approx_report, Error};

#[derive(Parser)]
#[command(name = "cqed", version, about = "Dispersive cavity-QED simulator for bright squeezed pulses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration; writes trajectory.csv and report.json.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Sweep one parameter over a grid (figures 3-7).
    Sweep {
        config: PathBuf,
        #[arg(long)]
        figure: u32,
        /// `lin:a:b:n`, `log:a:b:n` or a comma-separated list, in the sweep's units.
        #[arg(long)]
        grid_override: Option<String>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Run grid points one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Match phase shifts between squeezed and coherent pulses by tuning g.
    PhaseMatch {
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        sequential: bool,
    },
    /// Print the far-detuned closed-form estimates.
    Approx { config: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_io() {
        4
    } else if e.is_numerical() {
        3
    } else {
        2
    }
}

fn ensure_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Simulate { config, out_dir } => {
            let cfg = RunConfig::load(&config)?;
            let (params, settings) = (cfg.params()?, cfg.settings()?);
            let (report, traj) = run_with_trajectory(&params, &settings)
                .inspect_err(|_| eprintln!("run from {} failed", config.display()))?;
            ensure_dir(&out_dir)?;
            write_trajectory_csv(&out_dir.join("trajectory.csv"), &traj)?;
            write_report(&out_dir.join("report.json"), &report)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Sweep {
            config,
            figure,
            grid_override,
            out_dir,
            sequential,
        } => {
            let cfg = RunConfig::load(&config)?;
            let parameter = SweepParameter::for_figure(figure)?;
            let grid = match grid_override {
                Some(g) => Grid::parse(&g)?,
                None => parameter.default_grid(),
            };
            let spec = SweepSpec::new(parameter, &grid, cfg.params()?, cfg.settings()?)?;
            let rows = run_sweep(&spec, !sequential)?;
            ensure_dir(&out_dir)?;
            let path = out_dir.join(format!("fig{figure}_sweep.csv"));
            write_sweep_csv(&path, &rows)?;
            let failed = rows.iter().filter(|r| r.result.is_err()).count();
            eprintln!("wrote {} rows ({failed} failed) to {}", rows.len(), path.display());
        }
        Command::PhaseMatch {
            config,
            out_dir,
            sequential,
        } => {
            let cfg = RunConfig::load(&config)?;
            let spec = cfg.phase_match_spec()?;
            let rows = run_phase_match(&spec, !sequential)?;
            ensure_dir(&out_dir)?;
            let path = out_dir.join("fig8_phase_match.csv");
            write_phase_match_csv(&path, &rows)?;
            let failed = rows.iter().filter(|r| r.result.is_err()).count();
            eprintln!("wrote {} rows ({failed} failed) to {}", rows.len(), path.display());
        }
        Command::Approx { config } => {
            let cfg = RunConfig::load(&config)?;
            let report = approx_report(&cfg.params()?)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
