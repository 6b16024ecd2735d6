//! Benchmarks only; see `benches/dynamics.rs`.
