//! The steady state at rest.

use crate::error::Result;
use crate::num::Real;
use crate::profile::{Grid1, SolutionProfile};

/// Lake at rest over the given topography samples: `h = max(eta - z, 0)`,
/// `u = 0`; cells with `z >= eta` are dry.
pub fn lake_at_rest<R: Real>(grid: Grid1<R>, z: Vec<R>, eta: R) -> Result<SolutionProfile<R>> {
    let h: Vec<R> = z.iter().map(|&zi| (eta - zi).max(R::zero())).collect();
    let u = vec![R::zero(); grid.n];
    SolutionProfile::new(grid, h, u, z, R::zero())
}
