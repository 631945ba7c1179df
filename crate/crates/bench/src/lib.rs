//! Criterion benchmarks for `chargraph`; see `benches/`.
