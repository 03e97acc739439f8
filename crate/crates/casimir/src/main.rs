use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use casimir::config::{parse_config, Format, Run};
use casimir::output::{write_report, write_table};
use casimir::run::{self, Kind};
use casimir::CliError;
use clap::{Parser, Subcommand};

/// Casimir pressure between multilayer walls.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
struct Cli {
    /// JSON run description.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sweeps, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pressure at a single gap width.
    Force {
        /// Gap width in metres, overriding the configuration.
        #[arg(long)]
        distance: Option<f64>,
    },
    /// Pressure over the configured sweep grid.
    Sweep,
    /// Long- and short-distance laws compared with the full integral.
    Asymptote {
        /// Evaluation distance as a multiple of the largest validity scale.
        #[arg(long, default_value_t = casimir_core::asymptotics::DEFAULT_MARGIN)]
        margin: f64,
    },
    /// One-dimensional force, at one gap width or over the sweep grid.
    Oned {
        /// Gap width in metres; without it a configured sweep is run.
        #[arg(long)]
        distance: Option<f64>,
    },
    /// Checks the configuration and exits.
    Validate,
}

fn output(cli: &Cli, run: &Run) -> Result<(Box<dyn Write>, Format), CliError> {
    let format = cli.format.or(run.output.format).unwrap_or_default();
    let path = cli.out.clone().or_else(|| run.output.path.clone());
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    Ok((sink, format))
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::config("--config: required"))?;
    let run = parse_config(path)?;
    let table = match &cli.command {
        Command::Validate => {
            println!(
                "ok: {} layers, gap index {}, {} sweep point(s)",
                run.model.layers.len(),
                run.model.gap_index,
                if run.axes.is_empty() {
                    0
                } else {
                    run.point_count()
                }
            );
            return Ok(());
        }
        Command::Asymptote { margin } => {
            let report = run::asymptote(&run, *margin)?;
            let (mut out, format) = output(cli, &run)?;
            write_report(&report, format, &mut out)?;
            out.flush()?;
            return Ok(());
        }
        Command::Force { distance } => run::single(&run, Kind::Pressure, *distance)?,
        Command::Sweep => run::sweep(&run, Kind::Pressure, cli.threads)?,
        Command::Oned { distance } => {
            if distance.is_none() && !run.axes.is_empty() {
                run::sweep(&run, Kind::OneD, cli.threads)?
            } else {
                run::single(&run, Kind::OneD, *distance)?
            }
        }
    };
    let (mut out, format) = output(cli, &run)?;
    write_table(&table, format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
