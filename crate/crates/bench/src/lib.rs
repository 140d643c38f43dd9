//! Criterion benchmarks for `graph-slepian`; see `benches/pipeline.rs`.
//!
//! ```text
//! cargo bench -p gslep-bench
//! ```
