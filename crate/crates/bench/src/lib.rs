//! Criterion benchmarks for the degree-trees workspace; see `benches/`.
