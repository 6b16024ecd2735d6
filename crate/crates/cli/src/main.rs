use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand};
use pulsepair::validation::{ValidationOptions, DEFAULT_SEED};
use pulsepair::Mode;
use pulsepair_cli::{
    cmd_negativity, cmd_preset, cmd_sweep, cmd_validate, exit, flush_stdout, save_manifest, CliResult,
};

/// Entanglement dynamics of a pulse-driven qubit pair.
///
/// Exit status: 0 success, 1 usage or config error, 2 unknown preset,
/// 3 I/O error, 4 unphysical state, 5 validation failure.
#[derive(Debug, Parser)]
#[command(name = "pulsepair", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run a sweep described by a `key = value` config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's mode.
        #[arg(long)]
        mode: Option<Mode>,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the resolved run manifest here.
        #[arg(long)]
        save_config: Option<PathBuf>,
    },
    /// Run a named figure preset (fig1a .. fig5d).
    Preset {
        name: String,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        save_config: Option<PathBuf>,
    },
    /// Negativity of the Bell-diagonal state with correlations (cxx, cyy, czz).
    Negativity {
        #[arg(allow_negative_numbers = true)]
        cxx: f64,
        #[arg(allow_negative_numbers = true)]
        cyy: f64,
        #[arg(allow_negative_numbers = true)]
        czz: f64,
        #[arg(long)]
        save_config: Option<PathBuf>,
    },
    /// Run the oracle and invariant checks.
    Validate {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Multiplies every tolerance (test hook).
        #[arg(long, default_value_t = 1.0, hide = true)]
        tolerance_scale: f64,
        #[arg(long)]
        save_config: Option<PathBuf>,
    },
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stderr().is_terminal()
}

fn report(message: &str) {
    let prefix = if color_enabled() { "\x1b[1;31merror:\x1b[0m" } else { "error:" };
    let _ = writeln!(io::stderr(), "{prefix} {message}");
}

fn run(cli: Cli) -> CliResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (manifest, save) = match cli.command {
        Cmd::Sweep { config, mode, out: dest, save_config } => (cmd_sweep(&config, mode, dest, &mut out)?, save_config),
        Cmd::Preset { name, mode, out: dest, save_config } => (cmd_preset(&name, mode, dest, &mut out)?, save_config),
        Cmd::Negativity { cxx, cyy, czz, save_config } => (cmd_negativity([cxx, cyy, czz], &mut out)?, save_config),
        Cmd::Validate { seed, tolerance_scale, save_config } => {
            let opts = ValidationOptions { seed, tolerance_scale, ..ValidationOptions::default() };
            (cmd_validate(&opts, &mut out)?, save_config)
        }
    };
    flush_stdout(&mut out)?;
    match save {
        Some(path) => save_manifest(&manifest, &path),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let color = if color_enabled() { ColorChoice::Auto } else { ColorChoice::Never };
    let matches = match Cli::command().color(color).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report(&e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
