//! Command-line front end for the shallow-water benchmark catalog: solution
//! file generation, solver benchmarking, and convergence tables.

pub mod app;
pub mod format;
pub mod report;
