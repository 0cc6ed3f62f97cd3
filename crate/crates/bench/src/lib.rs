//! Benchmark-only crate; see `benches/runtime.rs`.
