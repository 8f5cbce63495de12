//! Criterion benchmarks for the computable-chaos kernels; see `benches/`.
