//! Benchmark harness for the bintrie map representations: seeded word
//! corpora, the dense/sparse/repeated/dict workloads, and table or CSV
//! reporting with every figure normalized against the original
//! representation.

pub mod corpus;
pub mod report;
pub mod run;

pub use corpus::{gen_words, load_words, Lcg};
pub use report::{render_csv, render_table, BenchReport};
pub use run::{run_dense, run_dict, run_repeated, run_sparse, ImplTag, WorkloadTag};
