//! Manufactured steady solutions: prescribe the depth, derive the topography
//! from the steady momentum balance.

use crate::channel::ChannelSpec;
use crate::diagnostics::friction_slope;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::{Grid1, SolutionProfile};
use crate::steady::ansatz::DepthAnsatz;
use crate::steady::rain_discharge;

/// Relative tolerance on the Richardson error estimate of the topography
/// quadrature.
const QUADRATURE_TOL: f64 = 1e-9;

/// Bed slope `dz/dx` compatible with the prescribed depth at `x`:
///
/// `z' = (q^2 / (g h^3) - 1) h' - S_f(h, q)
///      + (mu / (g h)) (q h'^2 / h^2 - q h'' / h - R h' / h)`
///
/// with `q(x) = R x + q0`.
pub fn bed_slope_at<R: Real>(
    spec: &ChannelSpec<R>,
    q0: R,
    ansatz: &dyn DepthAnsatz<R>,
    x: R,
) -> Result<R> {
    let g = spec.gravity;
    let q = rain_discharge(spec, q0, x);
    let h = ansatz.depth(x);
    let hp = ansatz.depth_prime(x);
    let sf = friction_slope(&spec.friction, h, q, g, spec.dry_tolerance)?;
    let mut slope = (q * q / (g * h * h * h) - R::one()) * hp - sf;
    if spec.viscosity > R::zero() {
        let hpp = ansatz.depth_second(x);
        let diffusion = q * hp * hp / (h * h) - q * hpp / h - spec.rain_rate * hp / h;
        slope += spec.viscosity / (g * h) * diffusion;
    }
    Ok(slope)
}

/// Composite Simpson on `[a, b]` with `panels` even subdivisions.
fn simpson<R: Real>(mut f: impl FnMut(R) -> Result<R>, a: R, b: R, panels: usize) -> Result<R> {
    debug_assert!(panels % 2 == 0);
    let n = R::of_usize(panels);
    let step = (b - a) / n;
    let mut acc = f(a)? + f(b)?;
    for k in 1..panels {
        let weight = if k % 2 == 1 { R::of(4.0) } else { R::of(2.0) };
        acc += weight * f(a + R::of_usize(k) * step)?;
    }
    Ok(acc * step / R::of(3.0))
}

/// Generates the manufactured steady solution on `n_cells` cells: the
/// prescribed depth, `u = q(x)/h(x)`, and the topography obtained by
/// integrating the compatible bed slope from `z = 0` at the domain start.
///
/// Each inter-center segment is integrated by composite Simpson at four and
/// eight panels; the Richardson-extrapolated value is kept and the pairwise
/// difference serves as the error estimate.
pub fn macdonald_topography<R: Real>(
    spec: &ChannelSpec<R>,
    q0: R,
    ansatz: &dyn DepthAnsatz<R>,
    n_cells: usize,
) -> Result<SolutionProfile<R>> {
    spec.validate()?;
    ansatz.check(spec.length, spec.dry_tolerance)?;
    let grid = Grid1::new(R::zero(), spec.length, n_cells)?;

    let mut h = Vec::with_capacity(n_cells);
    let mut u = Vec::with_capacity(n_cells);
    for x in grid.centers() {
        let depth = ansatz.depth(x);
        h.push(depth);
        u.push(rain_discharge(spec, q0, x) / depth);
    }

    let slope = |x: R| bed_slope_at(spec, q0, ansatz, x);
    // Per-segment Simpson with Richardson extrapolation; coarse grids mean
    // wide segments, so panels double until the error estimate passes.
    let mut last_estimate = R::zero();
    for panels in [4usize, 8, 16, 32, 64] {
        let mut z = Vec::with_capacity(n_cells);
        let mut z_acc = R::zero();
        let mut from = R::zero();
        let mut estimate = R::zero();
        for x in grid.centers() {
            let coarse = simpson(slope, from, x, panels)?;
            let fine = simpson(slope, from, x, 2 * panels)?;
            let correction = (fine - coarse) / R::of(15.0);
            z_acc += fine + correction;
            estimate += correction.abs();
            from = x;
            z.push(z_acc);
        }
        let z_scale = z.iter().fold(R::one(), |m, v| m.max(v.abs()));
        last_estimate = estimate;
        if estimate <= R::of(QUADRATURE_TOL) * z_scale {
            return SolutionProfile::new(grid, h, u, z, R::zero());
        }
    }
    Err(Error::Quadrature {
        estimate: last_estimate.to_f64().unwrap_or(f64::NAN),
        tolerance: QUADRATURE_TOL,
    })
}
