//! Parameter sweeps over pulse area or normalized time.
//!
//! Three families are supported:
//!
//! * `RectVsArea`: rectangular pulses with `Ω = 1`; grid values are the
//!   pulse-area parameter `n = ΩT/2π`, evaluated at the end of the pulse.
//! * `ExpVsTime`: resonant exponential pulses with `γ_p = 1`; grid values
//!   are `T′ = γ_p t` and `rabi_ratio` is `Ω/γ_p`.
//! * `CombinedVsTime`: qubit a rectangular (`Ω⁽¹⁾ = rect_omega`, lasting the
//!   whole grid), qubit b exponential, on the same `T′` axis.

mod config;
mod csv;

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use self::config::{parse_key_values, KeyValues};
pub use self::csv::{format_sig, write_csv, CSV_SIG_DIGITS};

use crate::entanglement::negativity;
use crate::error::{Error, Result};
use crate::evolution::{assemble_density, evolve_state, InitialStateClass};
use crate::pulse::{Mode, PulseSpec};

/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 801;
/// Negativities at or below this count as zero when looking for sudden death.
pub const DEATH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepFamily {
    RectVsArea,
    ExpVsTime,
    CombinedVsTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Drive {
    OneQubit,
    BothQubits,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Self { start, stop, points }
    }

    /// Node `i`; doubling the interval count reproduces every node bit-for-bit.
    pub fn value(&self, i: usize) -> f64 {
        self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.value(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub initial_states: Vec<InitialStateClass>,
    pub drive: Drive,
    pub mode: Mode,
    /// `Δ′ = Δ/Ω` for qubits a and b.
    pub detuning_prime: [f64; 2],
    /// `Ω/γ_p` for qubits a and b.
    pub rabi_ratio: [f64; 2],
    /// `Ω⁽¹⁾` of the rectangular pulse in the combined family.
    pub rect_omega: f64,
    pub grid: Grid,
}

/// The three initial states used by every figure preset.
pub fn figure_initial_states() -> Vec<InitialStateClass> {
    vec![
        InitialStateClass::BellSinglet,
        InitialStateClass::Werner(-0.9),
        InitialStateClass::GeneralizedWerner([-0.9, -0.8, -0.7]),
    ]
}

impl SweepConfig {
    pub fn new(family: SweepFamily, drive: Drive) -> Self {
        let grid = match family {
            SweepFamily::RectVsArea => Grid::new(0.0, 20.0, DEFAULT_POINTS),
            SweepFamily::ExpVsTime | SweepFamily::CombinedVsTime => Grid::new(0.0, 10.0, DEFAULT_POINTS),
        };
        Self {
            family,
            initial_states: figure_initial_states(),
            drive,
            mode: Mode::Unitary,
            detuning_prime: [0.0; 2],
            rabi_ratio: [0.0; 2],
            rect_omega: 1.0,
            grid,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let g = &self.grid;
        if g.points < 2 {
            return bad(format!("grid needs at least 2 points, got {}", g.points));
        }
        if !(g.start >= 0.0 && g.stop > g.start && g.stop.is_finite()) {
            return bad(format!("grid must satisfy 0 <= start < stop, got [{}, {}]", g.start, g.stop));
        }
        if self.initial_states.is_empty() {
            return bad("no initial states".into());
        }
        for s in &self.initial_states {
            if s.correlations().iter().any(|c| c.is_nan() || c.abs() > 1.0) {
                return bad(format!("initial state {s} has a correlation outside [-1, 1]"));
            }
        }
        let values = self.detuning_prime.iter().chain(&self.rabi_ratio).chain([&self.rect_omega]);
        if values.clone().any(|v| !v.is_finite()) {
            return bad("pulse parameters must be finite".into());
        }
        if self.rabi_ratio.iter().any(|r| *r < 0.0) || self.rect_omega < 0.0 {
            return bad("Rabi frequencies must be non-negative".into());
        }
        if self.family == SweepFamily::CombinedVsTime && self.drive == Drive::OneQubit {
            return bad("the combined family drives both qubits".into());
        }
        Ok(())
    }

    /// Pulses and evaluation time for grid value `x`.
    fn pulses_at(&self, x: f64) -> (PulseSpec, PulseSpec, f64) {
        let both = self.drive == Drive::BothQubits;
        let maybe = |on: bool, p: PulseSpec| if on { p } else { PulseSpec::none() };
        match self.family {
            SweepFamily::RectVsArea => {
                // Ω = 1, so T = 2πn. The map only depends on the evaluation
                // time, so n = 0 borrows the longest window of the grid.
                let t = TAU * x;
                let duration = if t > 0.0 { t } else { TAU * self.grid.stop };
                let rect = |j: usize| PulseSpec::rectangular(1.0, self.detuning_prime[j], duration);
                (rect(0), maybe(both, rect(1)), t)
            }
            SweepFamily::ExpVsTime => {
                let exp = |j: usize| PulseSpec {
                    delta: self.detuning_prime[j] * self.rabi_ratio[j],
                    ..PulseSpec::exponential(self.rabi_ratio[j], 1.0)
                };
                (exp(0), maybe(both, exp(1)), x)
            }
            SweepFamily::CombinedVsTime => {
                let rect =
                    PulseSpec::rectangular(self.rect_omega, self.detuning_prime[0] * self.rect_omega, self.grid.stop);
                let exp = PulseSpec {
                    delta: self.detuning_prime[1] * self.rabi_ratio[1],
                    ..PulseSpec::exponential(self.rabi_ratio[1], 1.0)
                };
                (rect, exp, x)
            }
        }
    }

    fn evaluate(&self, x: f64) -> Result<SweepRow> {
        let (pa, pb, t) = self.pulses_at(x);
        let mut negativities = Vec::with_capacity(self.initial_states.len());
        let mut imag_residue = 0.0_f64;
        for s in &self.initial_states {
            let evolved = evolve_state(&s.state(), &pa, &pb, t, self.mode)?;
            negativities.push(negativity(&assemble_density(&evolved.state))?.value);
            imag_residue = imag_residue.max(evolved.imag_residue);
        }
        Ok(SweepRow { param: x, negativities, imag_residue })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    /// One negativity per initial state, in config order.
    pub negativities: Vec<f64>,
    /// Largest literal-mode imaginary residue over the initial states.
    pub imag_residue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn series(&self, state: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.rows.iter().map(move |r| (r.param, r.negativities[state]))
    }

    pub fn max_imag_residue(&self) -> f64 {
        self.rows.iter().map(|r| r.imag_residue).fold(0.0, f64::max)
    }
}

/// Evaluates every grid point (in parallel) and returns rows in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let rows =
        (0..cfg.grid.points).into_par_iter().map(|i| cfg.evaluate(cfg.grid.value(i))).collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { config: cfg.clone(), rows })
}

/// Maximal runs of grid points where state `state` has `E ≤ 1e-9`, as
/// `(first, last)` parameter pairs.
pub fn detect_sudden_death(result: &SweepResult, state: usize) -> Vec<(f64, f64)> {
    let mut intervals = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for (x, e) in result.series(state) {
        if e <= DEATH_TOL {
            open = Some(match open {
                Some((start, _)) => (start, x),
                None => (x, x),
            });
        } else if let Some(run) = open.take() {
            intervals.push(run);
        }
    }
    intervals.extend(open);
    intervals
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub config: SweepConfig,
}

/// The twelve named figure presets, `fig1a` to `fig5d`.
///
/// The detuning of `fig2b` is the normalized `Δ′ = 5`.
pub fn figure_presets() -> Vec<Preset> {
    use Drive::*;
    use SweepFamily::*;

    let rect = |drive, dp: [f64; 2]| SweepConfig { detuning_prime: dp, ..SweepConfig::new(RectVsArea, drive) };
    let exp = |drive, ratio: f64| SweepConfig { rabi_ratio: [ratio; 2], ..SweepConfig::new(ExpVsTime, drive) };
    let combined = |omega: f64, ratio: f64| SweepConfig {
        rect_omega: omega,
        rabi_ratio: [0.0, ratio],
        ..SweepConfig::new(CombinedVsTime, BothQubits)
    };

    vec![
        Preset { name: "fig1a", config: rect(OneQubit, [0.0, 0.0]) },
        Preset { name: "fig1b", config: rect(OneQubit, [1.0, 0.0]) },
        Preset { name: "fig2a", config: rect(BothQubits, [0.0, 0.0]) },
        Preset { name: "fig2b", config: rect(BothQubits, [5.0, 5.0]) },
        Preset { name: "fig3a", config: exp(OneQubit, 5.0) },
        Preset { name: "fig3b", config: exp(OneQubit, 10.0) },
        Preset { name: "fig4a", config: exp(BothQubits, 5.0) },
        Preset { name: "fig4b", config: exp(BothQubits, 10.0) },
        Preset { name: "fig5a", config: combined(1.0, 5.0) },
        Preset { name: "fig5b", config: combined(2.0, 5.0) },
        Preset { name: "fig5c", config: combined(1.0, 10.0) },
        Preset { name: "fig5d", config: combined(2.0, 10.0) },
    ]
}

pub fn find_preset(name: &str) -> Option<Preset> {
    let name = name.to_ascii_lowercase();
    figure_presets().into_iter().find(|p| p.name == name)
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepFamily::RectVsArea => "rect_vs_area",
            SweepFamily::ExpVsTime => "exp_vs_time",
            SweepFamily::CombinedVsTime => "combined_vs_time",
        })
    }
}

impl FromStr for SweepFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rect_vs_area" => Ok(SweepFamily::RectVsArea),
            "exp_vs_time" => Ok(SweepFamily::ExpVsTime),
            "combined_vs_time" => Ok(SweepFamily::CombinedVsTime),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

impl fmt::Display for Drive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Drive::OneQubit => "one",
            Drive::BothQubits => "both",
        })
    }
}

impl FromStr for Drive {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "one" => Ok(Drive::OneQubit),
            "both" => Ok(Drive::BothQubits),
            other => Err(format!("unknown drive `{other}` (one or both)")),
        }
    }
}
