//! Frictionless flow over a bump: per-cell roots of the specific-head cubic.

use crate::channel::ChannelSpec;
use crate::diagnostics::critical_height;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::{Grid1, SolutionProfile};
use crate::solve::{bisect, bisect_newton};
use crate::steady::ansatz::TopographyAnsatz;

/// Flow regime requested from the bump generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BumpRegime<R> {
    /// Subcritical everywhere; the head is set by the downstream depth.
    Subcritical { downstream_depth: R },
    /// Critical exactly at the crest, supercritical beyond it.
    TranscriticalNoShock,
    /// Transcritical with a stationary shock between crest and outlet; the
    /// downstream head is set by the outlet depth.
    TranscriticalShock { downstream_depth: R },
}

/// Bump solution with its shock position, when one exists.
#[derive(Debug, Clone)]
pub struct BumpFlow<R> {
    pub profile: SolutionProfile<R>,
    pub shock_position: Option<R>,
}

/// Which root of the head cubic to select.
#[derive(Clone, Copy, PartialEq)]
enum Branch {
    Subcritical,
    Supercritical,
}

/// Depth solving `h^3 + (z - head) h^2 + q^2/(2g) = 0` on the given branch.
///
/// The subcritical root lies in `(h_c, head - z]`, the supercritical root in
/// `(0, h_c)`. Roots are polished to an absolute cubic residual below 1e-12.
fn head_depth<R: Real>(g: R, q: R, head: R, z: R, branch: Branch) -> Result<R> {
    let hc = critical_height(q, g);
    let energy = head - z;
    let e_min = R::of(1.5) * hc;
    let cubic = |h: R| h * h * h + (z - head) * h * h + q * q / (R::of(2.0) * g);
    let dcubic = |h: R| R::of(3.0) * h * h + R::of(2.0) * (z - head) * h;
    // Root coalescence at the crest: both branches meet at h_c. The band is
    // symmetric so roundoff on the choked side still resolves to h_c.
    let deficit = energy - e_min;
    let band = R::of(1e-12) * e_min;
    if deficit < -band {
        return Err(Error::ChokedFlow {
            required: e_min.to_f64().unwrap_or(f64::NAN),
            available: energy.to_f64().unwrap_or(f64::NAN),
        });
    }
    if deficit <= band {
        return Ok(hc);
    }
    let f_tol = R::of(1e-13) * (R::one() + q * q / (R::of(2.0) * g));
    let (lo, hi) = match branch {
        Branch::Subcritical => (hc, energy),
        Branch::Supercritical => (R::of(1e-14) * hc, hc),
    };
    bisect_newton(cubic, dcubic, lo, hi, f_tol, R::of(1e-15) * hc)
}

/// Momentum flux `q^2 / h + g h^2 / 2`, conserved across a stationary shock.
fn momentum_flux<R: Real>(g: R, q: R, h: R) -> R {
    q * q / h + g * h * h / R::of(2.0)
}

/// Solves the classical frictionless bump flow at the requested regime.
///
/// Preconditions: no friction, no rain, no viscosity; `z` smooth with a
/// single crest inside the domain.
pub fn bump_flow<R: Real>(
    spec: &ChannelSpec<R>,
    q0: R,
    topo: &dyn TopographyAnsatz<R>,
    regime: BumpRegime<R>,
    n_cells: usize,
) -> Result<BumpFlow<R>> {
    spec.validate()?;
    if !spec.friction.is_none() || spec.rain_rate != R::zero() || spec.viscosity != R::zero() {
        return Err(Error::InvalidConfig(
            "bump flows are frictionless, rainless and inviscid".into(),
        ));
    }
    if q0 <= R::zero() {
        return Err(Error::InvalidConfig("bump flow needs a positive discharge".into()));
    }
    let g = spec.gravity;
    let grid = Grid1::new(R::zero(), spec.length, n_cells)?;
    let crest_x = topo.crest();
    let crest_z = topo.elevation(crest_x);
    let hc = critical_height(q0, g);
    let head_for = |depth: R| depth + topo.elevation(spec.length) + q0 * q0 / (R::of(2.0) * g * depth * depth);

    let (shock_position, depth_at): (Option<R>, Box<dyn Fn(R) -> Result<R>>) = match regime {
        BumpRegime::Subcritical { downstream_depth } => {
            if downstream_depth <= hc {
                return Err(Error::InvalidConfig(format!(
                    "downstream depth {downstream_depth} is not subcritical (h_c = {hc})"
                )));
            }
            let head = head_for(downstream_depth);
            // Choking check at the crest before committing to the sweep.
            head_depth(g, q0, head, crest_z, Branch::Subcritical)?;
            (None, Box::new(move |x| head_depth(g, q0, head, topo.elevation(x), Branch::Subcritical)))
        }
        BumpRegime::TranscriticalNoShock => {
            let head = crest_z + R::of(1.5) * hc;
            (
                None,
                Box::new(move |x| {
                    let branch =
                        if x < crest_x { Branch::Subcritical } else { Branch::Supercritical };
                    head_depth(g, q0, head, topo.elevation(x), branch)
                }),
            )
        }
        BumpRegime::TranscriticalShock { downstream_depth } => {
            if downstream_depth <= hc {
                return Err(Error::InvalidConfig(format!(
                    "downstream depth {downstream_depth} is not subcritical (h_c = {hc})"
                )));
            }
            let head_up = crest_z + R::of(1.5) * hc;
            let head_dn = head_for(downstream_depth);
            let e_min = R::of(1.5) * hc;
            let jump = |x: R| -> Result<R> {
                let h_sup = head_depth(g, q0, head_up, topo.elevation(x), Branch::Supercritical)?;
                let h_sub = head_depth(g, q0, head_dn, topo.elevation(x), Branch::Subcritical)?;
                Ok(momentum_flux(g, q0, h_sup) - momentum_flux(g, q0, h_sub))
            };
            // The downstream branch only exists where the bump has dropped
            // below its energy line; start the search there.
            let lo = if head_dn - crest_z >= e_min {
                crest_x + R::of(1e-9) * spec.length
            } else {
                let edge = bisect(
                    |x| (head_dn - topo.elevation(x)) - e_min,
                    crest_x,
                    spec.length,
                    R::of(1e-12) * spec.length,
                )?;
                // Nudge onto the valid side of the branch boundary.
                edge + R::of(1e-7) * (spec.length - edge)
            };
            let hi = spec.length;
            let (flo, fhi) = (jump(lo)?, jump(hi)?);
            if (flo > R::zero()) == (fhi > R::zero()) {
                return Err(Error::BranchAmbiguity(format!(
                    "no stationary shock between crest and outlet (jump residual {flo} to {fhi}); \
                     the bump is either drowned or swept out by this outlet depth"
                )));
            }
            let shock = bisect(
                |x| jump(x).unwrap_or(R::nan()),
                lo,
                hi,
                R::of(1e-10) * spec.length,
            )?;
            (
                Some(shock),
                Box::new(move |x| {
                    if x < crest_x {
                        head_depth(g, q0, head_up, topo.elevation(x), Branch::Subcritical)
                    } else if x < shock {
                        head_depth(g, q0, head_up, topo.elevation(x), Branch::Supercritical)
                    } else {
                        head_depth(g, q0, head_dn, topo.elevation(x), Branch::Subcritical)
                    }
                }),
            )
        }
    };

    let mut h = Vec::with_capacity(n_cells);
    let mut u = Vec::with_capacity(n_cells);
    let mut z = Vec::with_capacity(n_cells);
    for x in grid.centers() {
        let depth = depth_at(x)?;
        h.push(depth);
        u.push(q0 / depth);
        z.push(topo.elevation(x));
    }
    let profile = SolutionProfile::new(grid, h, u, z, R::zero())?;
    Ok(BumpFlow { profile, shock_position })
}
