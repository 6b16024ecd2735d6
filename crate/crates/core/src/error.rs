use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitianInput { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    DimensionMismatch { expected: &'static str, rows: usize, cols: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("time {t} lies outside the pulse window [0, {duration}]")]
    OutOfWindow { t: f64, duration: f64 },

    #[error("exponential pulses are only defined on resonance (detuning = {delta})")]
    ResonanceRequired { delta: f64 },

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("initial correlation state must be diagonal with zero Bloch vectors")]
    NonDiagonalInput,

    #[error("step {step} exceeds a tenth of the integration span {t_end}")]
    StepTooLarge { step: f64, t_end: f64 },

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
