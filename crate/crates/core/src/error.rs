//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by solution generators, diagnostics and the solver harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Depth at or below the dry tolerance where a wet state is required.
    #[error("dry state: depth {depth} is at or below the dry tolerance {tolerance}")]
    Dry { depth: f64, tolerance: f64 },

    /// Negative depth passed to an operation defined for h >= 0.
    #[error("negative depth {0}")]
    NegativeDepth(f64),

    /// Operation undefined for zero discharge.
    #[error("unit discharge must be nonzero")]
    ZeroDischarge,

    /// Normal depth requested where none exists (horizontal/adverse slope or no friction).
    #[error("normal depth does not exist for this slope and friction law")]
    NoNormalDepth,

    /// Invalid physical or numerical configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Gradually-varied-flow right-hand side evaluated too close to critical depth.
    #[error("profile reached the critical-depth singularity near x = {position}")]
    CriticalSingularity { position: f64 },

    /// Backwater integration arrested before covering the reach.
    #[error("backwater integration arrested at x = {position}: {reason}")]
    PartialProfile { position: f64, reason: String },

    /// Depth collapsed below the dry tolerance during integration.
    #[error("depth dried out at x = {position}")]
    DryOut { position: f64 },

    /// Boundary depth indistinguishable from a dividing line of the profile taxonomy.
    #[error("boundary depth {depth} is within tolerance of the {line} line; perturb it or accept uniform flow")]
    AmbiguousZone { depth: f64, line: &'static str },

    /// Zone label not admissible for the slope class.
    #[error("no {slope}{zone} profile exists")]
    InvalidProfileType { slope: &'static str, zone: u8 },

    /// Bump too high for the discharge: no wet solution of the head equation.
    #[error("choked flow: crest energy {required} exceeds available head {available}")]
    ChokedFlow { required: f64, available: f64 },

    /// Root selection between subcritical and supercritical branches failed.
    #[error("root branch ambiguous: {0}")]
    BranchAmbiguity(String),

    /// Bracketed root finding failed to converge.
    #[error("root finder failed: {0}")]
    RootFind(String),

    /// Numerical quadrature failed its accuracy check.
    #[error("quadrature error estimate {estimate} above tolerance {tolerance}")]
    Quadrature { estimate: f64, tolerance: f64 },

    /// Profiles on different grids compared or concatenated.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Grid too coarse for the finite-difference stencil.
    #[error("grid too coarse for the stencil: {cells} cells, {required} required")]
    StencilTooCoarse { cells: usize, required: usize },

    /// Post-step stability check failed in the finite-volume solver.
    #[error("stability failure at step {step}, cell {cell}: {reason}")]
    Stability { step: usize, cell: usize, reason: String },

    /// Non-finite state detected in the finite-volume solver.
    #[error("non-finite state at step {step}, cell {cell}")]
    NumericalFailure { step: usize, cell: usize },

    /// Catalog lookup failed.
    #[error("unknown solution id `{0}`")]
    UnknownCase(String),

    /// Catalog parameter rejected.
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParam { key: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
