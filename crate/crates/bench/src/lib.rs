//! Benchmark-only crate; see `benches/operator.rs`.
