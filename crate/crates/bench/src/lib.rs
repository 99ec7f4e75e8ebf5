//! Criterion benchmarks for the enumeration and determinant routines; see `benches/`.
