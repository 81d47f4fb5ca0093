//! Reference finite-volume solver and benchmarking engine.

pub mod bench;
pub mod norms;
pub mod solver;

pub use bench::{bench_case, BenchmarkReport, GridResult, Verdict};
pub use norms::{convergence_order, error_norms, Norms, OrderStep, ProfileErrors};
pub use solver::{
    run_solver, run_to_steady, BoundarySide, FluxScheme, SchemeConfig, SteadyRun,
    TopographyScheme,
};
