//! Steady-state analytic solution generators: lake at rest, manufactured
//! depth/topography pairs, bump flows and rain-forced discharge.

pub mod ansatz;
pub mod bump;
pub mod lake;
pub mod macdonald;
pub mod residual;

pub use ansatz::{
    ConstantDepth, DepthAnsatz, GaussianBump, GaussianDepth, LinearDepth, TanhDepth,
    TopographyAnsatz,
};
pub use bump::{bump_flow, BumpFlow, BumpRegime};
pub use lake::lake_at_rest;
pub use macdonald::{bed_slope_at, macdonald_topography};
pub use residual::{steady_residual, SteadyDefect};

use crate::channel::ChannelSpec;
use crate::diagnostics::{classify_regime, FlowRegime};
use crate::num::Real;
use crate::profile::SolutionProfile;

/// Unit discharge under uniform rain: `q(x) = R x + q0`.
pub fn rain_discharge<R: Real>(spec: &ChannelSpec<R>, q0: R, x: R) -> R {
    spec.rain_rate * x + q0
}

/// Flow regimes along a profile, collapsed to their run sequence
/// (e.g. `[Subcritical, Supercritical]` for a transcritical profile).
pub fn regime_sequence<R: Real>(
    profile: &SolutionProfile<R>,
    spec: &ChannelSpec<R>,
) -> Vec<FlowRegime> {
    let mut runs: Vec<FlowRegime> = Vec::new();
    for i in 0..profile.grid.n {
        let regime = classify_regime(profile.h[i], profile.q(i), spec);
        if regime == FlowRegime::Critical {
            // A single grid point pinned to criticality separates runs; it is
            // not a regime of its own.
            continue;
        }
        if runs.last() != Some(&regime) {
            runs.push(regime);
        }
    }
    runs
}
