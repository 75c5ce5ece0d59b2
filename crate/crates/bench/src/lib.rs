//! Benchmarks for the pricing hot path and scenario runs; see `benches/`.
