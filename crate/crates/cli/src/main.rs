mod args;
mod commands;
mod config;
mod output;
mod sweep;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ORBITALIS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| CliError::Usage(format!("ORBITALIS_THREADS: expected a positive integer (got '{v}')")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("ORBITALIS_THREADS: {e}")))
}

fn writable(flag: &str, p: &Path) -> Result<(), CliError> {
    let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if p.is_dir() || !parent.is_dir() {
        return Err(CliError::Usage(format!("--{flag}: cannot write to {}", p.display())));
    }
    Ok(())
}

fn readable(flag: &str, p: Option<&Path>) -> Result<(), CliError> {
    match p {
        Some(p) if !p.is_file() => Err(CliError::Usage(format!("--{flag}: no such file {}", p.display()))),
        _ => Ok(()),
    }
}

fn check_paths(cli: &Cli) -> Result<(), CliError> {
    if let Some(p) = &cli.output {
        writable("output", p)?;
    }
    if let Some(p) = &cli.plot_data {
        writable("plot-data", p)?;
    }
    match &cli.command {
        Command::Trace(a) => readable("spectrum", a.source.spectrum.as_deref()),
        Command::SurfaceTrace(a) => readable("spectrum", a.source.spectrum.as_deref()),
        Command::Torsion(a) => readable("eigenvalues", a.eigenvalues.as_deref()),
        Command::Zeta(a) => {
            readable("eigenvalues", a.eigenvalues.as_deref())?;
            readable("spectrum", a.spectrum.as_deref())
        }
        _ => Ok(()),
    }
}

fn run() -> Result<bool, CliError> {
    let argv = config::merged_argv(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                e.exit();
            }
            // first line only: clap names the offending flag there
            let msg = e.render().to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
            return Err(CliError::Usage(line));
        }
    };
    configure_threads()?;
    check_paths(&cli)?;
    let report = commands::dispatch(&cli.command)?;
    report
        .table
        .write_csv(cli.output.as_deref())
        .map_err(|e| CliError::Io(format!("--output: {e}")))?;
    if let (Some(path), Some(plot)) = (&cli.plot_data, &report.plot) {
        plot.write(path).map_err(|e| CliError::Io(format!("--plot-data: {e}")))?;
    }
    Ok(!report.failed)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}
