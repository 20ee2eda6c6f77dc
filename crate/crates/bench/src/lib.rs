//! Criterion benchmarks for the kernel live under `benches/`.
