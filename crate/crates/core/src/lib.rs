//! Entanglement dynamics of an initially entangled qubit pair whose qubits
//! are independently driven by rectangular or exponential laser pulses.
//!
//! The crate is organised bottom-up:
//!
//! * [`pauli`]: complex matrices, the Pauli basis, Kronecker products and a
//!   Jacobi eigensolver for small Hermitian matrices.
//! * [`pulse`]: pulse envelopes and the per-qubit Heisenberg coefficient map,
//!   in `Literal` and `Unitary` modes.
//! * [`evolution`]: correlation-tensor evolution, density-matrix assembly and
//!   the exact-unitary / Runge-Kutta oracles.
//! * [`entanglement`]: partial transpose and negativity.
//! * [`scenarios`]: parameter sweeps, figure presets and CSV output.
//! * [`validation`]: the end-to-end oracle suite behind `pulsepair validate`.
//!
//! All rates are in normalized units: rectangular sweeps measure time in
//! units of `1/Ω`, exponential sweeps in units of `1/γ_p`.

pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod pauli;
pub mod pulse;
pub mod scenarios;
pub mod validation;

pub use entanglement::{classify_werner, negativity, partial_transpose_b, NegativityResult, WernerClass};
pub use error::{Error, Result};
pub use evolution::{
    assemble_density, evolve_correlations, evolve_state, rk4_oracle, unitary_oracle, CorrelationState, Evolved,
    InitialStateClass,
};
pub use pauli::{hermitian_eigenvalues, kron, ComplexMatrix, PauliBasis, C64};
pub use pulse::{CoefficientMatrix, Mode, PulseShape, PulseSpec};
pub use scenarios::{figure_presets, run_sweep, Preset, SweepConfig, SweepResult};
