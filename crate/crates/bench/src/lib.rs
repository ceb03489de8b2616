//! Benchmarks for hermlat-core; see `benches/`.
