//! Criterion benchmarks for coulomb-core; see `benches/`.
