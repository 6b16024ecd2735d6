//! Sweep-level invariants over every figure preset.

use pulsepair::scenarios::{detect_sudden_death, find_preset, write_csv, Grid};
use pulsepair::{figure_presets, run_sweep, Mode, SweepResult};

const INITIAL: [f64; 3] = [1.0, 0.85, 0.70];

fn sweep(name: &str, mode: Mode) -> SweepResult {
    let preset = find_preset(name).unwrap_or_else(|| panic!("missing preset {name}"));
    run_sweep(&preset.config.with_mode(mode)).unwrap()
}

#[test]
fn every_unitary_preset_is_constant_at_the_initial_negativity() {
    for preset in figure_presets() {
        let r = run_sweep(&preset.config.clone().with_mode(Mode::Unitary)).unwrap();
        assert_eq!(r.rows.len(), 801, "{}", preset.name);
        for (s, e0) in INITIAL.iter().enumerate() {
            let worst = r.series(s).map(|(_, e)| (e - e0).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-9, "{} state {s}: deviation {worst}", preset.name);
        }
        assert_eq!(r.max_imag_residue(), 0.0);
        assert!(detect_sudden_death(&r, 0).is_empty());
    }
}

#[test]
fn every_value_lies_in_the_unit_interval_and_rows_are_ordered() {
    for preset in figure_presets() {
        for mode in [Mode::Unitary, Mode::Literal] {
            let r = run_sweep(&preset.config.clone().with_mode(mode)).unwrap();
            assert!(r.rows.windows(2).all(|w| w[0].param < w[1].param));
            for row in &r.rows {
                assert!(
                    row.negativities.iter().all(|e| (0.0..=1.0 + 1e-9).contains(e)),
                    "{} {mode}: {row:?}",
                    preset.name
                );
            }
        }
    }
}

#[test]
fn grid_doubling_keeps_shared_nodes() {
    for name in ["fig1b", "fig3a", "fig5b"] {
        for mode in [Mode::Unitary, Mode::Literal] {
            let mut cfg = find_preset(name).unwrap().config.with_mode(mode);
            cfg.grid = Grid::new(cfg.grid.start, cfg.grid.stop, 41);
            let coarse = run_sweep(&cfg).unwrap();
            cfg.grid = Grid::new(cfg.grid.start, cfg.grid.stop, 81);
            let fine = run_sweep(&cfg).unwrap();
            for (i, row) in coarse.rows.iter().enumerate() {
                assert_eq!(row, &fine.rows[2 * i], "{name} {mode} node {i}");
            }
        }
    }
}

#[test]
fn literal_residue_flags_every_departure() {
    for preset in figure_presets() {
        let r = run_sweep(&preset.config.clone().with_mode(Mode::Literal)).unwrap();
        let first = r.rows[0].negativities.clone();
        for row in &r.rows {
            let departs = row.negativities.iter().zip(&first).any(|(e, e0)| (e - e0).abs() > 1e-6);
            assert!(!departs || row.imag_residue > 0.0, "{} at {}: {row:?}", preset.name, row.param);
        }
    }
}

#[test]
fn literal_residue_depends_on_the_pulse() {
    // Resonant exponential pulses have a vanishing literal B row, so nothing
    // imaginary survives; a detuned rectangular pulse leaves a residue.
    assert_eq!(sweep("fig3b", Mode::Literal).max_imag_residue(), 0.0);
    assert!(sweep("fig1b", Mode::Literal).max_imag_residue() > 1e-3);
}

#[test]
fn literal_curves_depart_from_the_initial_value() {
    let r = sweep("fig1b", Mode::Literal);
    let spread = r.series(0).map(|(_, e)| e).fold(f64::NEG_INFINITY, f64::max)
        - r.series(0).map(|(_, e)| e).fold(f64::INFINITY, f64::min);
    assert!(spread > 0.1, "spread {spread}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for preset in figure_presets() {
        let csv = |mode| {
            let mut out = Vec::new();
            write_csv(&run_sweep(&preset.config.clone().with_mode(mode)).unwrap(), &mut out).unwrap();
            out
        };
        assert_eq!(csv(Mode::Unitary), csv(Mode::Unitary), "{}", preset.name);
        assert_eq!(csv(Mode::Literal), csv(Mode::Literal), "{}", preset.name);
    }
}

#[test]
fn integer_areas_restore_the_state() {
    let r = sweep("fig1a", Mode::Unitary);
    for row in r.rows.iter().filter(|row| (row.param - row.param.round()).abs() < 1e-12) {
        for (e, e0) in row.negativities.iter().zip(INITIAL) {
            assert!((e - e0).abs() < 1e-10);
        }
    }
}
