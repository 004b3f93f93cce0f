//! Criterion benchmarks for the certification pipeline live in `benches/`.
