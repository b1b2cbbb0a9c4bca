//! Seeded routing experiments: hop-length statistics over sampled pairs and
//! link-load histograms over sampled flows.

mod bench;
mod export;
mod loadsim;
mod pairs;
pub mod par;

pub use bench::{
    evaluate_pairs, mean_and_sem, run_bench, summarize, Algorithm, BenchConfig, BenchRecord, PairOutcome,
};
pub use export::{
    export_bench, export_histogram, read_bench_csv, read_histogram_csv, write_bench_csv, write_histogram_csv,
    BENCH_HEADER, LOAD_HEADER,
};
pub use loadsim::{link_loads, run_loadsim, LoadConfig, LoadHistogram};
pub use pairs::{rng_for, sample_pairs};
