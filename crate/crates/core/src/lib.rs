//! Analytic shallow-water benchmark solutions and a reference solver harness.
//!
//! The crate builds discretized exact solutions of the one-dimensional
//! Saint-Venant equations — steady states, backwater curves and transients —
//! and measures numerical solvers against them with error norms, convergence
//! orders and invariant checks.
//!
//! Everything is generic over the scalar type through [`Real`] (`f32` or
//! `f64`); the `*64` aliases at the crate root cover the common
//! double-precision case.

pub mod catalog;
pub mod channel;
pub mod diagnostics;
pub mod error;
pub mod gvf;
pub mod harness;
pub mod num;
pub mod profile;
pub mod solve;
pub mod steady;
pub mod transient;

pub use channel::{ChannelSpec, FrictionLaw};
pub use diagnostics::{
    classify_regime, classify_slope, critical_height, friction_slope, froude, normal_height,
    wave_speeds, FlowRegime, SlopeClass,
};
pub use error::{Error, Result};
pub use gvf::{classify_profile, concatenate_reaches, gvf_rhs, integrate_backwater, GvfProblem, ProfileType};
pub use num::Real;
pub use profile::{Grid1, Grid2, SolutionField2, SolutionProfile};

/// Double-precision aliases for the main domain types.
pub type Channel64 = ChannelSpec<f64>;
pub type Profile64 = SolutionProfile<f64>;
pub type Field64 = SolutionField2<f64>;
pub type GvfProblem64 = GvfProblem<f64>;
