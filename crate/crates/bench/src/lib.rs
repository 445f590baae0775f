//! Benchmark-only crate; see `benches/length_sets.rs`.
