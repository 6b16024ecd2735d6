//! Command implementations behind the `pulsepair` binary.
//!
//! Each command writes data to the given writer and reports failures as a
//! [`CliError`] carrying the process exit status.

mod manifest;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use pulsepair::entanglement::PHYSICALITY_TOL;
use pulsepair::scenarios::{find_preset, write_csv};
use pulsepair::validation::{run_validation, ValidationOptions, INVARIANCE_NOTE};
use pulsepair::{assemble_density, hermitian_eigenvalues, negativity, run_sweep, CorrelationState, Mode, SweepConfig};

pub use manifest::{Command, RunManifest};

/// Exit statuses.
pub mod exit {
    pub const USAGE: i32 = 1;
    pub const UNKNOWN_PRESET: i32 = 2;
    pub const IO: i32 = 3;
    pub const UNPHYSICAL: i32 = 4;
    pub const VALIDATION_FAILED: i32 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn usage(e: impl fmt::Display) -> Self {
        Self::new(exit::USAGE, e.to_string())
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self::new(exit::IO, format!("{}: {e}", path.display()))
    }
}

/// Writes to standard output; a closed pipe (e.g. `| head`) is not an error.
fn stdout_result(r: io::Result<()>) -> CliResult {
    match r {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::io(Path::new("<stdout>"), e)),
        _ => Ok(()),
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn flush_stdout(stdout: &mut dyn Write) -> CliResult {
    stdout_result(stdout.flush())
}

/// Runs a resolved sweep and writes the CSV to `out`, or to `stdout` if none.
fn emit_sweep(cfg: &SweepConfig, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult {
    let result = run_sweep(cfg).map_err(CliError::usage)?;
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            write_csv(&result, &mut buf).expect("writing to memory");
            fs::write(path, buf).map_err(|e| CliError::io(path, e))
        }
        None => stdout_result(write_csv(&result, stdout)),
    }
}

pub fn save_manifest(m: &RunManifest, path: &Path) -> CliResult {
    fs::write(path, m.to_text()).map_err(|e| CliError::io(path, e))
}

/// `sweep`: the config file may be a bare sweep config or a saved manifest.
pub fn cmd_sweep(
    config: &Path,
    mode: Option<Mode>,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> CliResult<RunManifest> {
    let text = fs::read_to_string(config).map_err(|e| CliError::io(config, e))?;
    let parsed = RunManifest::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", config.display())))?;
    let Some(mut cfg) = parsed.sweep else {
        return Err(CliError::usage(format!("{}: `{}` manifests hold no sweep", config.display(), parsed.command)));
    };
    if let Some(mode) = mode {
        cfg.mode = mode;
    }
    let out = out.or(parsed.out);
    emit_sweep(&cfg, out.as_deref(), stdout)?;
    Ok(RunManifest { sweep: Some(cfg), out, ..RunManifest::new(Command::Sweep) })
}

pub fn cmd_preset(
    name: &str,
    mode: Option<Mode>,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> CliResult<RunManifest> {
    let preset = find_preset(name).ok_or_else(|| {
        let known: Vec<&str> = pulsepair::figure_presets().iter().map(|p| p.name).collect();
        CliError::new(exit::UNKNOWN_PRESET, format!("unknown preset `{name}` (known: {})", known.join(", ")))
    })?;
    let mut cfg = preset.config;
    if let Some(mode) = mode {
        cfg.mode = mode;
    }
    emit_sweep(&cfg, out.as_deref(), stdout)?;
    Ok(RunManifest {
        preset: Some(preset.name.to_string()),
        sweep: Some(cfg),
        out,
        ..RunManifest::new(Command::Preset)
    })
}

/// `negativity`: prints the partial-transpose spectrum and `E` to 12 decimals.
pub fn cmd_negativity(c: [f64; 3], stdout: &mut dyn Write) -> CliResult<RunManifest> {
    if c.iter().any(|v| !v.is_finite()) {
        return Err(CliError::usage("correlations must be finite"));
    }
    let rho = assemble_density(&CorrelationState::bell_diagonal(c));
    let spectrum = hermitian_eigenvalues(&rho).map_err(CliError::usage)?;
    if spectrum[0] < -PHYSICALITY_TOL {
        return Err(CliError::new(
            exit::UNPHYSICAL,
            format!("state ({}, {}, {}) is unphysical: density eigenvalue {:.3e}", c[0], c[1], c[2], spectrum[0]),
        ));
    }
    let r = negativity(&rho).map_err(CliError::usage)?;
    let mut text = String::new();
    for (i, mu) in r.eigenvalues.iter().enumerate() {
        text += &format!("mu{} = {}\n", i + 1, fixed12(*mu));
    }
    text += &format!("E = {}\n", fixed12(r.value));
    stdout_result(stdout.write_all(text.as_bytes()))?;
    Ok(RunManifest { negativity: Some(c), ..RunManifest::new(Command::Negativity) })
}

fn fixed12(x: f64) -> String {
    // Avoid printing "-0.000000000000".
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|ch| ch == '0' || ch == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// `validate`: CSV summary on stdout, then the invariance note as a comment.
pub fn cmd_validate(opts: &ValidationOptions, stdout: &mut dyn Write) -> CliResult<RunManifest> {
    let reports = run_validation(opts);
    let mut text = String::from("check,max_error,tolerance,cases,status\n");
    for r in &reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        text += &format!("{},{:.3e},{:.1e},{},{status}\n", r.name, r.max_error, r.tolerance, r.cases);
    }
    text += &format!("# note: {INVARIANCE_NOTE}\n");
    stdout_result(stdout.write_all(text.as_bytes()))?;
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(CliError::new(
            exit::VALIDATION_FAILED,
            format!(
                "check `{}` failed: max error {:.3e} exceeds tolerance {:.1e}",
                bad.name, bad.max_error, bad.tolerance
            ),
        ));
    }
    Ok(RunManifest { seed: Some(opts.seed), ..RunManifest::new(Command::Validate) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed12_drops_negative_zero() {
        assert_eq!(fixed12(-1e-17), "0.000000000000");
        assert_eq!(fixed12(-0.5), "-0.500000000000");
        assert_eq!(fixed12(1.0), "1.000000000000");
    }

    #[test]
    fn singlet_negativity_output() {
        let mut out = Vec::new();
        cmd_negativity([-1.0; 3], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "mu1 = -0.500000000000\nmu2 = 0.500000000000\nmu3 = 0.500000000000\nmu4 = 0.500000000000\nE = 1.000000000000\n"
        );
    }

    #[test]
    fn unphysical_and_unknown_exit_codes() {
        let mut sink = Vec::new();
        assert_eq!(cmd_negativity([1.0; 3], &mut sink).unwrap_err().code, exit::UNPHYSICAL);
        assert_eq!(cmd_preset("fig9", None, None, &mut sink).unwrap_err().code, exit::UNKNOWN_PRESET);
    }
}
