//! Criterion benchmarks for `cherednik`; see `benches/`.
