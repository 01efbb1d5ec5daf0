//! Benchmark-only crate; see `benches/decide.rs`.
